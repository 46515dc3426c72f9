//! Unfolded spectral embedding baseline.
//!
//! The top-`d` singular triplets of the `n x nT` unfolding `[A_1 | ... | A_T]`
//! are found from the Gram operator `G = sum_t A_t A_t^T`, applied matrix-free
//! over the edgelists. A block Krylov iteration with full reorthogonalization
//! and Rayleigh-Ritz extraction runs until every wanted Ritz pair has relative
//! residual below the tolerance. The left factor `U` is the anchor and the
//! embedding at time `t` is `A_t^T U`, which equals the `t`-th block of the right
//! factor scaled by the singular values.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Edge, TemporalGraph};
use crate::matrix::{dot, norm2};

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralOptions {
    /// Embedding dimension `d`.
    pub dim: usize,
    /// Relative residual `||G y - lambda y|| / lambda_max` required of each
    /// wanted Ritz pair.
    pub tol: f64,
    /// Cap on block Krylov steps before giving up.
    pub max_block_steps: usize,
    /// Largest vertex count accepted.
    pub max_vertices: usize,
    pub seed: u64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions { dim: 10, tol: 1e-8, max_block_steps: 500, max_vertices: 50_000, seed: 0 }
    }
}

impl SpectralOptions {
    pub fn with_dim(dim: usize) -> Self {
        SpectralOptions { dim, ..Default::default() }
    }
}

#[derive(Debug, Clone)]
pub struct UnfoldedEmbedding {
    /// Descending singular values of the unfolding.
    pub singular_values: Vec<f64>,
    /// `n x d` left singular vectors, orthonormal columns.
    pub anchor: DMatrix<f64>,
    /// `n x d` embedding per time step.
    pub per_time: Vec<DMatrix<f64>>,
    pub block_steps: usize,
    /// Worst relative residual at convergence.
    pub residual: f64,
}

impl UnfoldedEmbedding {
    pub fn dim(&self) -> usize {
        self.anchor.ncols()
    }
}

/// `y += A x` for row-major `n x b` blocks.
fn apply_adjacency(edges: &[Edge], undirected: bool, transpose: bool, x: &[f64], y: &mut [f64], b: usize) {
    for e in edges {
        let (u, v) = if transpose { (e.target as usize, e.source as usize) } else { (e.source as usize, e.target as usize) };
        for c in 0..b {
            y[u * b + c] += e.weight * x[v * b + c];
        }
        if undirected {
            for c in 0..b {
                y[v * b + c] += e.weight * x[u * b + c];
            }
        }
    }
}

struct GramOperator<'a> {
    graph: &'a TemporalGraph,
}

impl GramOperator<'_> {
    /// `sum_t A_t A_t^T X` for a row-major `n x b` block.
    fn apply(&self, x: &[f64], b: usize) -> Vec<f64> {
        let n = self.graph.n();
        let undirected = self.graph.is_undirected();
        let partials: Vec<Vec<f64>> = self
            .graph
            .steps()
            .par_iter()
            .map(|edges| {
                let mut tmp = vec![0.0; n * b];
                apply_adjacency(edges, undirected, true, x, &mut tmp, b);
                let mut y = vec![0.0; n * b];
                apply_adjacency(edges, undirected, false, &tmp, &mut y, b);
                y
            })
            .collect();
        let mut iter = partials.into_iter();
        let mut y = iter.next().unwrap_or_else(|| vec![0.0; n * b]);
        for part in iter {
            for (a, p) in y.iter_mut().zip(part) {
                *a += p;
            }
        }
        y
    }
}

fn to_row_major(cols: &[Vec<f64>], n: usize) -> Vec<f64> {
    let b = cols.len();
    let mut out = vec![0.0; n * b];
    for (c, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            out[i * b + c] = x;
        }
    }
    out
}

fn column(rm: &[f64], n: usize, b: usize, c: usize) -> Vec<f64> {
    (0..n).map(|i| rm[i * b + c]).collect()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Removes the components of `v` along `basis`, twice.
fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for q in basis {
            let h = dot(q, v);
            axpy(-h, q, v);
        }
    }
}

struct BlockQr {
    block: Vec<Vec<f64>>,
    /// `r[j][c]`: coefficient of new column `j` in input column `c`.
    r: Vec<Vec<f64>>,
}

/// Orthonormalizes `w` against `basis` and itself, recording the triangular
/// factor. Numerically dependent columns are replaced by fresh random
/// directions with a zero row in `r`.
fn block_qr(w: Vec<Vec<f64>>, basis: &[Vec<f64>], scale: f64, rng: &mut ChaCha8Rng) -> BlockQr {
    let bx = w.len();
    let n = w.first().map_or(0, Vec::len);
    let mut block: Vec<Vec<f64>> = Vec::with_capacity(bx);
    let mut r = vec![vec![0.0; bx]; bx];
    for (c, mut v) in w.into_iter().enumerate() {
        orthogonalize(&mut v, basis);
        for _ in 0..2 {
            for (j, q) in block.iter().enumerate() {
                let h = dot(q, &v);
                r[j][c] += h;
                axpy(-h, q, &mut v);
            }
        }
        let norm = norm2(&v);
        if norm > 1e-12 * scale && norm > 0.0 {
            r[c][c] = norm;
            v.iter_mut().for_each(|x| *x /= norm);
        } else {
            v = (0..n).map(|_| StandardNormal.sample(rng)).collect();
            orthogonalize(&mut v, basis);
            orthogonalize(&mut v, &block);
            let norm = norm2(&v);
            v.iter_mut().for_each(|x| *x /= norm);
        }
        block.push(v);
    }
    BlockQr { block, r }
}

/// Top-`d` unfolded spectral embedding of `graph`.
pub fn unfolded_spectral_embed(graph: &TemporalGraph, opts: &SpectralOptions) -> Result<UnfoldedEmbedding> {
    let n = graph.n();
    let d = opts.dim;
    if d == 0 || d > n {
        return Err(Error::InvalidParameter(format!("embedding dimension {d} must lie in 1..={n}")));
    }
    if n > opts.max_vertices {
        return Err(Error::TooLarge { n, cap: opts.max_vertices });
    }
    let op = GramOperator { graph };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let cap = n.min(d * (opts.max_block_steps + 1));
    let mut h = DMatrix::<f64>::zeros(cap, cap);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(cap);

    let start: Vec<Vec<f64>> = (0..d).map(|_| (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()).collect();
    let mut block = block_qr(start, &basis, 1.0, &mut rng).block;
    let mut op_scale = 0.0f64;
    let mut worst = f64::INFINITY;

    for step in 1..=opts.max_block_steps {
        let p = basis.len();
        let bx = block.len();
        let gx_rm = op.apply(&to_row_major(&block, n), bx);
        basis.append(&mut block);
        let m = basis.len();

        let mut w = Vec::with_capacity(bx);
        for c in 0..bx {
            let mut gc = column(&gx_rm, n, bx, c);
            op_scale = op_scale.max(norm2(&gc));
            for (i, q) in basis.iter().enumerate() {
                let hv = dot(q, &gc);
                h[(i, p + c)] = hv;
                if i < p {
                    h[(p + c, i)] = hv;
                }
            }
            for (i, q) in basis.iter().enumerate() {
                axpy(-h[(i, p + c)], q, &mut gc);
            }
            w.push(gc);
        }
        for a in 0..bx {
            for c in a + 1..bx {
                let avg = 0.5 * (h[(p + a, p + c)] + h[(p + c, p + a)]);
                h[(p + a, p + c)] = avg;
                h[(p + c, p + a)] = avg;
            }
        }

        let qr = block_qr(w, &basis, op_scale.max(f64::MIN_POSITIVE), &mut rng);
        let check = m < 200 || step % 5 == 0 || m == n || step == opts.max_block_steps;
        if m >= d && check {
            let eig = SymmetricEigen::new(h.view((0, 0), (m, m)).into_owned());
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
            let top = eig.eigenvalues[order[0]].max(0.0);
            worst = 0.0;
            for &idx in &order[..d] {
                let s = eig.eigenvectors.column(idx);
                let mut res2 = 0.0;
                for j in 0..bx {
                    let rs: f64 = (0..bx).map(|c| qr.r[j][c] * s[p + c]).sum();
                    res2 += rs * rs;
                }
                let res = if m == n { 0.0 } else { res2.sqrt() };
                let rel = if top > 0.0 {
                    res / top
                } else if res == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                };
                worst = worst.max(rel);
            }
            if worst <= opts.tol {
                return Ok(finish(graph, &basis, &eig, &order[..d], step, worst));
            }
        }
        if m >= cap {
            break;
        }
        block = qr.block;
        block.truncate(cap - m);
    }
    Err(Error::NoConvergence { iterations: opts.max_block_steps, residual: worst })
}

fn finish(
    graph: &TemporalGraph,
    basis: &[Vec<f64>],
    eig: &SymmetricEigen<f64, nalgebra::Dyn>,
    wanted: &[usize],
    steps: usize,
    residual: f64,
) -> UnfoldedEmbedding {
    let n = graph.n();
    let d = wanted.len();
    let mut anchor = DMatrix::<f64>::zeros(n, d);
    for (c, &idx) in wanted.iter().enumerate() {
        let s = eig.eigenvectors.column(idx);
        for (j, q) in basis.iter().enumerate() {
            let coef = s[j];
            if coef != 0.0 {
                for i in 0..n {
                    anchor[(i, c)] += coef * q[i];
                }
            }
        }
    }
    let singular_values = wanted.iter().map(|&idx| eig.eigenvalues[idx].max(0.0).sqrt()).collect();
    let anchor_rm: Vec<f64> = (0..n).flat_map(|i| (0..d).map(move |c| (i, c))).map(|ic| anchor[ic]).collect();
    let per_time = graph
        .steps()
        .par_iter()
        .map(|edges| {
            let mut y = vec![0.0; n * d];
            apply_adjacency(edges, graph.is_undirected(), true, &anchor_rm, &mut y, d);
            DMatrix::from_row_slice(n, d, &y)
        })
        .collect();
    UnfoldedEmbedding { singular_values, anchor, per_time, block_steps: steps, residual }
}

/// Per-vertex Euclidean distance between the embeddings at `t` and `ref_t`
/// (0-based).
pub fn spectral_outlier_measure(emb: &UnfoldedEmbedding, ref_t: usize, t: usize) -> Result<Vec<f64>> {
    let steps = emb.per_time.len();
    if ref_t >= steps || t >= steps {
        return Err(Error::InvalidParameter(format!("time indices {ref_t}, {t} outside 0..{steps}")));
    }
    let (a, b) = (&emb.per_time[t], &emb.per_time[ref_t]);
    Ok((0..a.nrows())
        .map(|i| (0..a.ncols()).map(|c| (a[(i, c)] - b[(i, c)]).powi(2)).sum::<f64>().sqrt())
        .collect())
}
