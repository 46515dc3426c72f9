//! Temporal encoder embedding.
//!
//! Each vertex is represented at every time step by its average connectivity
//! to each labelled community: `Z_t = A_t W`, where `W` is the one-hot label
//! matrix with column `k` scaled by `1 / n_k`. The product is never formed
//! densely; a single pass over the edgelist accumulates it, and non-zero rows
//! are then scaled to unit Euclidean norm.
//!
//! Cost is `O(nK + s_t)` per time step and the output is deterministic for a
//! fixed edge order.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Edge, LabelVector, TemporalGraph};
use crate::matrix::{norm2, RowMatrix};

/// Edge count above which one time step is split into fixed-size chunks that
/// accumulate into private buffers and are summed in chunk order.
pub const EDGE_CHUNK: usize = 1 << 22;

/// Column-normalized one-hot label matrix, stored as one `(column, value)` per
/// vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct EncoderMatrix {
    labels: Vec<u32>,
    /// `scale[c]` is `1 / n_c` for community `c`; `scale[0]` is zero.
    scale: Vec<f64>,
    k: usize,
}

impl EncoderMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Entry `W(i, col)` with a 0-based column.
    pub fn get(&self, i: usize, col: usize) -> f64 {
        let label = self.labels[i] as usize;
        if label == col + 1 {
            self.scale[label]
        } else {
            0.0
        }
    }

    pub fn dense_row(&self, i: usize) -> Vec<f64> {
        (0..self.k).map(|c| self.get(i, c)).collect()
    }

    #[inline]
    fn entry(&self, v: u32) -> Option<(usize, f64)> {
        let label = self.labels[v as usize] as usize;
        (label != 0).then(|| (label - 1, self.scale[label]))
    }
}

pub fn build_encoder_matrix(labels: &LabelVector) -> EncoderMatrix {
    let mut scale = vec![0.0; labels.k() + 1];
    for (c, &count) in labels.class_counts().iter().enumerate() {
        if count > 0 {
            scale[c + 1] = 1.0 / count as f64;
        }
    }
    EncoderMatrix { labels: labels.labels().to_vec(), scale, k: labels.k() }
}

/// Un-normalized `A_t W` for one time step.
///
/// Each edge `(u, v, w)` adds `W(v, Y_v) w` to `Z(u, Y_v)`; when `undirected`
/// it also adds `W(u, Y_u) w` to `Z(v, Y_u)`. A self-loop therefore counts twice
/// in undirected mode.
pub fn embed_time_step(edges: &[Edge], encoder: &EncoderMatrix, undirected: bool) -> RowMatrix {
    let n = encoder.n();
    if edges.len() <= EDGE_CHUNK {
        let mut z = RowMatrix::zeros(n, encoder.k);
        accumulate(&mut z, edges, encoder, undirected);
        return z;
    }
    let partials: Vec<RowMatrix> = edges
        .par_chunks(EDGE_CHUNK)
        .map(|chunk| {
            let mut z = RowMatrix::zeros(n, encoder.k);
            accumulate(&mut z, chunk, encoder, undirected);
            z
        })
        .collect();
    let mut iter = partials.into_iter();
    let mut z = iter.next().expect("at least one chunk");
    for part in iter {
        z.add_assign(&part);
    }
    z
}

fn accumulate(z: &mut RowMatrix, edges: &[Edge], encoder: &EncoderMatrix, undirected: bool) {
    for e in edges {
        if let Some((col, scale)) = encoder.entry(e.target) {
            z.add(e.source as usize, col, scale * e.weight);
        }
        if undirected {
            if let Some((col, scale)) = encoder.entry(e.source) {
                z.add(e.target as usize, col, scale * e.weight);
            }
        }
    }
}

/// Scales every row with positive norm to unit length in place. Returns one
/// flag per row, `true` where the row was normalized.
pub fn normalize_rows(z: &mut RowMatrix) -> Vec<bool> {
    let mut flags = Vec::with_capacity(z.rows());
    for i in 0..z.rows() {
        let row = z.row_mut(i);
        let norm = norm2(row);
        if norm > 0.0 {
            row.iter_mut().for_each(|x| *x /= norm);
            flags.push(true);
        } else {
            flags.push(false);
        }
    }
    flags
}

/// Normalized embeddings for all time steps.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSeries {
    steps: Vec<RowMatrix>,
    normalized: Vec<Vec<bool>>,
}

impl EmbeddingSeries {
    pub fn from_parts(steps: Vec<RowMatrix>, normalized: Vec<Vec<bool>>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::ShapeMismatch("embedding series has no time steps".into()));
        }
        let (n, k) = (steps[0].rows(), steps[0].cols());
        if normalized.len() != steps.len() {
            return Err(Error::ShapeMismatch("one flag vector per time step is required".into()));
        }
        for (z, flags) in steps.iter().zip(&normalized) {
            if z.rows() != n || z.cols() != k || flags.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "every time step must be {n}x{k} with {n} flags"
                )));
            }
        }
        Ok(EmbeddingSeries { steps, normalized })
    }

    /// Number of time steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn n(&self) -> usize {
        self.steps[0].rows()
    }

    pub fn k(&self) -> usize {
        self.steps[0].cols()
    }

    pub fn step(&self, t: usize) -> &RowMatrix {
        &self.steps[t]
    }

    pub fn steps(&self) -> &[RowMatrix] {
        &self.steps
    }

    pub fn is_normalized(&self, t: usize, i: usize) -> bool {
        self.normalized[t][i]
    }

    pub fn normalized_flags(&self, t: usize) -> &[bool] {
        &self.normalized[t]
    }
}

/// One-step-at-a-time encoder for streams that do not fit in memory at once.
#[derive(Debug, Clone)]
pub struct StreamingEncoder {
    encoder: EncoderMatrix,
    undirected: bool,
}

impl StreamingEncoder {
    pub fn new(labels: &LabelVector, undirected: bool) -> Self {
        StreamingEncoder { encoder: build_encoder_matrix(labels), undirected }
    }

    pub fn encoder(&self) -> &EncoderMatrix {
        &self.encoder
    }

    pub fn embed(&self, edges: &[Edge]) -> (RowMatrix, Vec<bool>) {
        let mut z = embed_time_step(edges, &self.encoder, self.undirected);
        let flags = normalize_rows(&mut z);
        (z, flags)
    }
}

/// Embeds every time step of `graph` with one shared label vector.
pub fn temporal_encoder_embedding(graph: &TemporalGraph, labels: &LabelVector) -> Result<EmbeddingSeries> {
    if labels.n() != graph.n() {
        return Err(Error::ShapeMismatch(format!(
            "label vector covers {} vertices but the graph has {}",
            labels.n(),
            graph.n()
        )));
    }
    let stream = StreamingEncoder::new(labels, graph.is_undirected());
    let (steps, normalized) = graph.steps().par_iter().map(|edges| stream.embed(edges)).unzip();
    EmbeddingSeries::from_parts(steps, normalized)
}

/// Which label vector to use when labels are supplied per time step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelChoice {
    /// Labels at the given 0-based time step (normally the reference time).
    AtTime(usize),
    MostRecent,
}

/// Collapses per-time label vectors into the single vector used for all steps.
pub fn select_labels(per_time: &[LabelVector], choice: LabelChoice) -> Result<&LabelVector> {
    let idx = match choice {
        LabelChoice::AtTime(t) => t,
        LabelChoice::MostRecent => per_time.len().saturating_sub(1),
    };
    per_time
        .get(idx)
        .ok_or_else(|| Error::InvalidParameter(format!("no label vector for time index {idx}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lv(labels: &[u32], k: usize) -> LabelVector {
        LabelVector::new(labels.to_vec(), k).unwrap()
    }

    /// Dense adjacency times dense W with a naive triple loop.
    fn dense_oracle(n: usize, edges: &[Edge], labels: &LabelVector, undirected: bool) -> Vec<Vec<f64>> {
        let k = labels.k();
        let mut a = vec![vec![0.0; n]; n];
        for e in edges {
            a[e.source as usize][e.target as usize] += e.weight;
            if undirected {
                a[e.target as usize][e.source as usize] += e.weight;
            }
        }
        let mut w = vec![vec![0.0; k]; n];
        for i in 0..n {
            let l = labels.label(i) as usize;
            if l > 0 {
                w[i][l - 1] = 1.0 / labels.labels().iter().filter(|&&x| x as usize == l).count() as f64;
            }
        }
        let mut z = vec![vec![0.0; k]; n];
        for i in 0..n {
            for c in 0..k {
                for j in 0..n {
                    z[i][c] += a[i][j] * w[j][c];
                }
            }
        }
        z
    }

    fn random_instance(rng: &mut ChaCha8Rng, n: usize, k: usize, m: usize) -> (Vec<Edge>, LabelVector) {
        let labels: Vec<u32> = (0..n).map(|_| rng.random_range(0..=k as u32)).collect();
        let edges = (0..m)
            .map(|_| Edge::new(rng.random_range(0..n as u32), rng.random_range(0..n as u32), rng.random_range(0.0..10.0)))
            .collect();
        (edges, lv(&labels, k))
    }

    #[test]
    fn encoder_matrix_rows() {
        let w = build_encoder_matrix(&lv(&[1, 1, 2], 2));
        assert_eq!(w.dense_row(0), vec![0.5, 0.0]);
        assert_eq!(w.dense_row(1), vec![0.5, 0.0]);
        assert_eq!(w.dense_row(2), vec![0.0, 1.0]);

        let w = build_encoder_matrix(&lv(&[1], 1));
        assert_eq!(w.dense_row(0), vec![1.0]);

        let w = build_encoder_matrix(&lv(&[1, 2, 0, 2], 2));
        assert_eq!(w.dense_row(0), vec![1.0, 0.0]);
        assert_eq!(w.dense_row(1), vec![0.0, 0.5]);
        assert_eq!(w.dense_row(2), vec![0.0, 0.0]);
        assert_eq!(w.dense_row(3), vec![0.0, 0.5]);
    }

    #[test]
    fn encoder_columns_sum_to_one() {
        let labels = lv(&[1, 3, 3, 0, 1, 1], 4);
        let w = build_encoder_matrix(&labels);
        for c in 0..4 {
            let sum: f64 = (0..labels.n()).map(|i| w.get(i, c)).sum();
            let expected = if labels.class_counts()[c] > 0 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(sum, expected, epsilon = 1e-15);
        }
    }

    #[test]
    fn single_edge_by_hand() {
        let w = build_encoder_matrix(&lv(&[1, 2], 2));
        let z = embed_time_step(&[Edge::new(0, 1, 3.0)], &w, true);
        assert_eq!(z.row(0), &[0.0, 3.0]);
        assert_eq!(z.row(1), &[3.0, 0.0]);
    }

    #[test]
    fn directed_mode_applies_one_update() {
        let w = build_encoder_matrix(&lv(&[1, 2], 2));
        let z = embed_time_step(&[Edge::new(0, 1, 3.0)], &w, false);
        assert_eq!(z.row(0), &[0.0, 3.0]);
        assert_eq!(z.row(1), &[0.0, 0.0]);
    }

    #[test]
    fn empty_edges_give_zero_matrix() {
        let w = build_encoder_matrix(&lv(&[1, 2, 2], 2));
        let z = embed_time_step(&[], &w, true);
        assert!(z.as_slice().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn undirected_self_loop_counts_twice() {
        let w = build_encoder_matrix(&lv(&[1], 1));
        let z = embed_time_step(&[Edge::new(0, 0, 2.5)], &w, true);
        assert_eq!(z.get(0, 0), 2.0 * 2.5 * 1.0);
        let z = embed_time_step(&[Edge::new(0, 0, 2.5)], &w, false);
        assert_eq!(z.get(0, 0), 2.5);
    }

    #[test]
    fn matches_dense_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for undirected in [true, false] {
            let (edges, labels) = random_instance(&mut rng, 50, 4, 300);
            let w = build_encoder_matrix(&labels);
            let z = embed_time_step(&edges, &w, undirected);
            let oracle = dense_oracle(50, &edges, &labels, undirected);
            for i in 0..50 {
                for c in 0..4 {
                    assert_abs_diff_eq!(z.get(i, c), oracle[i][c], epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn chunked_accumulation_matches_single_pass() {
        // large enough to cross EDGE_CHUNK once
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 64u32;
        let labels = lv(&(0..n).map(|i| i % 3 + 1).collect::<Vec<_>>(), 3);
        let edges: Vec<Edge> = (0..EDGE_CHUNK + 1000)
            .map(|_| Edge::new(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0u32..4) as f64))
            .collect();
        let w = build_encoder_matrix(&labels);
        let chunked = embed_time_step(&edges, &w, true);
        let mut single = RowMatrix::zeros(n as usize, 3);
        accumulate(&mut single, &edges, &w, true);
        // integer weights times 1/n_k sum exactly in either order only up to rounding
        for (a, b) in chunked.as_slice().iter().zip(single.as_slice()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-9 * b.abs().max(1.0));
        }
    }

    #[test]
    fn large_graph_sums_in_edge_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (n, k) = (70_000usize, 4usize);
        let (edges, labels) = random_instance(&mut rng, n, k, 300_000);
        let w = build_encoder_matrix(&labels);
        for undirected in [true, false] {
            let z = embed_time_step(&edges, &w, undirected);
            let mut naive = RowMatrix::zeros(n, k);
            for e in &edges {
                let (u, v) = (e.source as usize, e.target as usize);
                if labels.label(v) != 0 {
                    naive.add(u, labels.label(v) as usize - 1, w.get(v, labels.label(v) as usize - 1) * e.weight);
                }
                if undirected && labels.label(u) != 0 {
                    naive.add(v, labels.label(u) as usize - 1, w.get(u, labels.label(u) as usize - 1) * e.weight);
                }
            }
            assert!(z.as_slice().iter().zip(naive.as_slice()).all(|(a, b)| a.to_bits() == b.to_bits()));
        }
    }

    #[test]
    fn normalize_rows_examples() {
        let mut z = RowMatrix::from_vec(2, 2, vec![3.0, 4.0, 0.0, 0.0]);
        let flags = normalize_rows(&mut z);
        assert_abs_diff_eq!(z.get(0, 0), 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(z.get(0, 1), 0.8, epsilon = 1e-15);
        assert_eq!(z.row(1), &[0.0, 0.0]);
        assert_eq!(flags, vec![true, false]);
    }

    #[test]
    fn identical_steps_give_identical_embeddings() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (edges, labels) = random_instance(&mut rng, 40, 3, 120);
        let g = TemporalGraph::new(40, vec![edges.clone(), edges.clone(), edges], true).unwrap();
        let series = temporal_encoder_embedding(&g, &labels).unwrap();
        assert_eq!(series.len(), 3);
        assert_eq!(series.step(0), series.step(1));
        assert_eq!(series.step(1), series.step(2));
    }

    #[test]
    fn label_count_mismatch_is_an_error() {
        let g = TemporalGraph::new(3, vec![vec![]], true).unwrap();
        assert!(matches!(temporal_encoder_embedding(&g, &lv(&[1, 1], 1)), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn select_labels_picks_requested_vector() {
        let per_time = vec![lv(&[1, 2], 2), lv(&[2, 1], 2)];
        assert_eq!(select_labels(&per_time, LabelChoice::AtTime(0)).unwrap().labels(), &[1, 2]);
        assert_eq!(select_labels(&per_time, LabelChoice::MostRecent).unwrap().labels(), &[2, 1]);
        assert!(select_labels(&per_time, LabelChoice::AtTime(5)).is_err());
    }

    proptest! {
        #[test]
        fn normalized_rows_have_unit_norm(values in proptest::collection::vec(0.0f64..1e6, 1..64), cols in 1usize..8) {
            let rows = values.len() / cols;
            prop_assume!(rows > 0);
            let mut z = RowMatrix::from_vec(rows, cols, values[..rows * cols].to_vec());
            let flags = normalize_rows(&mut z);
            for (i, flag) in flags.iter().enumerate() {
                let norm = norm2(z.row(i));
                if *flag {
                    prop_assert!((norm - 1.0).abs() <= 1e-12);
                } else {
                    prop_assert!(z.row(i).iter().all(|&x| x == 0.0));
                }
            }
        }

        #[test]
        fn scaling_weights_leaves_normalized_embedding(seed in 0u64..1000, c in 0.01f64..100.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (edges, labels) = random_instance(&mut rng, 30, 3, 80);
            let scaled: Vec<Edge> = edges.iter().map(|e| Edge::new(e.source, e.target, e.weight * c)).collect();
            let stream = StreamingEncoder::new(&labels, true);
            let (z1, f1) = stream.embed(&edges);
            let (z2, f2) = stream.embed(&scaled);
            prop_assert_eq!(f1, f2);
            for (a, b) in z1.as_slice().iter().zip(z2.as_slice()) {
                prop_assert!((a - b).abs() <= 1e-10);
            }
        }

        #[test]
        fn permuting_labels_permutes_columns(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (edges, labels) = random_instance(&mut rng, 30, 4, 80);
            // sigma: community c -> perm[c-1]
            let perm = [3u32, 1, 4, 2];
            let permuted: Vec<u32> = labels.labels().iter().map(|&l| if l == 0 { 0 } else { perm[l as usize - 1] }).collect();
            let s1 = StreamingEncoder::new(&labels, true);
            let s2 = StreamingEncoder::new(&lv(&permuted, 4), true);
            let (z1, _) = s1.embed(&edges);
            let (z2, _) = s2.embed(&edges);
            for i in 0..30 {
                for c in 0..4 {
                    let pc = perm[c] as usize - 1;
                    prop_assert!((z1.get(i, c) - z2.get(i, pc)).abs() <= 1e-12);
                }
            }
        }

        #[test]
        fn embeddings_are_non_negative(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (edges, labels) = random_instance(&mut rng, 25, 3, 60);
            let (z, _) = StreamingEncoder::new(&labels, true).embed(&edges);
            prop_assert!(z.as_slice().iter().all(|&x| x >= 0.0));
        }
    }
}
