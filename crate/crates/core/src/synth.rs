//! Synthetic dynamic networks: (degree-corrected) stochastic block model base
//! graphs, weight perturbation over time, and planted outlier vertices.
//!
//! Every generator draws from ChaCha8 streams derived from a user seed, so the
//! same parameters always reproduce the same edges regardless of thread count.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{weighted::WeightedIndex, Beta, Distribution};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Edge, LabelVector, TemporalGraph};

/// Vertices per independently seeded pair-sampling block.
const PAIR_BLOCK: usize = 1024;

const LABEL_STREAM: u64 = 1;
const THETA_STREAM: u64 = 2;
const PAIR_STREAM: u64 = 1 << 32;
const EVOLVE_STREAM: u64 = 2 << 32;

/// SplitMix64 finalizer; derives independent sub-seeds from one user seed.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stream))
}

#[derive(Debug, Clone, PartialEq)]
pub enum LabelAssignment {
    /// Vertex `i` gets community `i mod K + 1`.
    RoundRobin,
    /// I.i.d. draws from the given prior over communities `1..=K`.
    Categorical(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum DegreeModel {
    /// `theta_i = 1` for every vertex: a plain stochastic block model.
    Constant,
    /// `theta_i ~ Beta(alpha, beta)` independently.
    Beta { alpha: f64, beta: f64 },
    Fixed(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SbmParams {
    pub n: usize,
    pub k: usize,
    pub assignment: LabelAssignment,
    /// Symmetric `K x K` block probabilities.
    pub block: Vec<Vec<f64>>,
    pub degree: DegreeModel,
    /// Inclusive integer range for edge weights.
    pub weight_range: (u32, u32),
    pub seed: u64,
}

impl SbmParams {
    /// Block matrix with `p_in` on the diagonal and `p_out` elsewhere.
    pub fn planted_block(k: usize, p_in: f64, p_out: f64) -> Vec<Vec<f64>> {
        (0..k).map(|a| (0..k).map(|b| if a == b { p_in } else { p_out }).collect()).collect()
    }

    /// Degree-corrected model with 20 balanced communities, block
    /// probabilities 0.5 within and 0.1 across, `theta ~ Beta(1, 4)` and integer
    /// weights in `[1, 100]`.
    pub fn dcsbm_reference(n: usize, seed: u64) -> Self {
        SbmParams {
            n,
            k: 20,
            assignment: LabelAssignment::RoundRobin,
            block: Self::planted_block(20, 0.5, 0.1),
            degree: DegreeModel::Beta { alpha: 1.0, beta: 4.0 },
            weight_range: (1, 100),
            seed,
        }
    }

    /// [`SbmParams::dcsbm_reference`] with block probabilities scaled by
    /// `base_n / n`, which holds the expected average degree at its value for
    /// `base_n` vertices so the edge count grows linearly in `n`.
    pub fn dcsbm_constant_degree(n: usize, base_n: usize, seed: u64) -> Self {
        let f = (base_n as f64 / n.max(1) as f64).min(1.0);
        SbmParams { block: Self::planted_block(20, 0.5 * f, 0.1 * f), ..Self::dcsbm_reference(n, seed) }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n == 0 || self.k == 0 {
            return bad("n and K must be positive".into());
        }
        if self.block.len() != self.k || self.block.iter().any(|row| row.len() != self.k) {
            return bad(format!("block matrix must be {0}x{0}", self.k));
        }
        for a in 0..self.k {
            for b in 0..self.k {
                let p = self.block[a][b];
                if !(0.0..=1.0).contains(&p) {
                    return bad(format!("block probability B({},{}) = {p} outside [0, 1]", a + 1, b + 1));
                }
                if p != self.block[b][a] {
                    return bad(format!("block matrix is not symmetric at ({}, {})", a + 1, b + 1));
                }
            }
        }
        if let LabelAssignment::Categorical(prior) = &self.assignment {
            if prior.len() != self.k || prior.iter().any(|&p| !(p >= 0.0)) {
                return bad("prior needs K non-negative entries".into());
            }
            if (prior.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
                return bad("prior must sum to 1".into());
            }
        }
        if let DegreeModel::Fixed(theta) = &self.degree {
            if theta.len() != self.n || theta.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
                return bad("fixed degree parameters need n finite non-negative values".into());
            }
        }
        if self.weight_range.0 > self.weight_range.1 {
            return bad("weight range is empty".into());
        }
        Ok(())
    }
}

/// Output of [`generate_dcsbm`].
#[derive(Debug, Clone, PartialEq)]
pub struct SbmSample {
    /// Each unordered pair at most once, `source < target`.
    pub edges: Vec<Edge>,
    pub labels: LabelVector,
    pub theta: Vec<f64>,
}

pub fn assign_labels(n: usize, k: usize, assignment: &LabelAssignment, seed: u64) -> Result<LabelVector> {
    let labels = match assignment {
        LabelAssignment::RoundRobin => (0..n).map(|i| (i % k) as u32 + 1).collect(),
        LabelAssignment::Categorical(prior) => {
            let dist = WeightedIndex::new(prior).map_err(|e| Error::InvalidParameter(format!("prior: {e}")))?;
            let mut rng = rng_for(seed, LABEL_STREAM);
            (0..n).map(|_| dist.sample(&mut rng) as u32 + 1).collect()
        }
    };
    LabelVector::new(labels, k)
}

/// I.i.d. `Beta(alpha, beta)` degree parameters.
pub fn sample_degree_params(n: usize, alpha: f64, beta: f64, seed: u64) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::InvalidParameter(format!("Beta({alpha}, {beta}) needs positive shape parameters")));
    }
    let dist = Beta::new(alpha, beta).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = rng_for(seed, THETA_STREAM);
    Ok((0..n).map(|_| dist.sample(&mut rng)).collect())
}

/// Samples an undirected simple graph with
/// `P(i ~ j) = theta_i theta_j B(Y_i, Y_j)` and no self-loops.
///
/// For each vertex and community the candidates `j > i` are visited with
/// geometric skips at the community's largest edge probability, then thinned
/// by `theta_j / max theta`, so cost scales with the edge count rather than
/// `n^2`.
pub fn generate_dcsbm(params: &SbmParams) -> Result<SbmSample> {
    params.validate()?;
    let (n, k) = (params.n, params.k);
    let labels = assign_labels(n, k, &params.assignment, params.seed)?;
    let theta = match &params.degree {
        DegreeModel::Constant => vec![1.0; n],
        DegreeModel::Beta { alpha, beta } => sample_degree_params(n, *alpha, *beta, params.seed)?,
        DegreeModel::Fixed(theta) => theta.clone(),
    };

    let mut members: Vec<Vec<u32>> = vec![Vec::new(); k];
    for (i, &l) in labels.labels().iter().enumerate() {
        members[l as usize - 1].push(i as u32);
    }
    let theta_max: Vec<f64> =
        members.iter().map(|m| m.iter().map(|&j| theta[j as usize]).fold(0.0, f64::max)).collect();
    for a in 0..k {
        for b in 0..k {
            let p = theta_max[a] * theta_max[b] * params.block[a][b];
            if p > 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "edge probability theta_i theta_j B({},{}) reaches {p} > 1",
                    a + 1,
                    b + 1
                )));
            }
        }
    }

    let (w_lo, w_hi) = params.weight_range;
    let blocks: Vec<Vec<Edge>> = (0..n.div_ceil(PAIR_BLOCK))
        .into_par_iter()
        .map(|block| {
            let mut rng = rng_for(params.seed, PAIR_STREAM + block as u64);
            let mut edges = Vec::new();
            for i in block * PAIR_BLOCK..((block + 1) * PAIR_BLOCK).min(n) {
                let yi = labels.label(i) as usize - 1;
                if theta[i] == 0.0 {
                    continue;
                }
                for (l, cands) in members.iter().enumerate() {
                    if theta_max[l] == 0.0 {
                        continue;
                    }
                    let q = theta[i] * theta_max[l] * params.block[yi][l];
                    if q <= 0.0 {
                        continue;
                    }
                    let mut pos = cands.partition_point(|&j| j as usize <= i);
                    let log_miss = (-q).ln_1p();
                    loop {
                        if q < 1.0 {
                            let u: f64 = rng.random();
                            let skip = ((-u).ln_1p() / log_miss).floor();
                            if skip >= (cands.len() - pos) as f64 {
                                break;
                            }
                            pos += skip as usize;
                        }
                        if pos >= cands.len() {
                            break;
                        }
                        let j = cands[pos];
                        let keep = theta[j as usize] / theta_max[l];
                        if keep >= 1.0 || rng.random::<f64>() < keep {
                            let w = rng.random_range(w_lo..=w_hi) as f64;
                            edges.push(Edge::new(i as u32, j, w));
                        }
                        pos += 1;
                    }
                }
            }
            edges
        })
        .collect();
    let edges = blocks.concat();
    Ok(SbmSample { edges, labels, theta })
}

/// How the graph changes from one time step to the next.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionParams {
    /// Total number of time steps, including the base graph.
    pub steps: usize,
    /// Fraction of edges whose weight is perturbed at each step.
    pub change_fraction: f64,
    /// Inclusive range of the additive perturbation.
    pub perturbation: (f64, f64),
    pub clamp_at_zero: bool,
}

impl Default for EvolutionParams {
    fn default() -> Self {
        EvolutionParams { steps: 10, change_fraction: 0.5, perturbation: (-20.0, 20.0), clamp_at_zero: true }
    }
}

impl EvolutionParams {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidParameter("at least one time step is required".into()));
        }
        if !(0.0..=1.0).contains(&self.change_fraction) {
            return Err(Error::InvalidParameter("change fraction must lie in [0, 1]".into()));
        }
        if !(self.perturbation.0 <= self.perturbation.1) {
            return Err(Error::InvalidParameter("perturbation range is empty".into()));
        }
        Ok(())
    }
}

/// Next time step: exactly `round(change_fraction * s)` edges, chosen without
/// replacement, get a uniform additive perturbation. The edge set is unchanged.
pub fn evolve_weights(prev: &[Edge], ev: &EvolutionParams, step_seed: u64) -> Vec<Edge> {
    let mut next = prev.to_vec();
    let count = (ev.change_fraction * prev.len() as f64).round() as usize;
    if count == 0 {
        return next;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(step_seed);
    let (lo, hi) = ev.perturbation;
    for idx in index::sample(&mut rng, prev.len(), count.min(prev.len())) {
        let e = &mut next[idx];
        e.weight += rng.random_range(lo..=hi);
        if ev.clamp_at_zero && e.weight < 0.0 {
            e.weight = 0.0;
        }
    }
    next
}

/// Lazily yields the time steps of an evolving graph: the base edges first,
/// then one perturbed copy per further step.
pub struct WeightEvolution {
    current: Option<Vec<Edge>>,
    params: EvolutionParams,
    seed: u64,
    t: usize,
}

impl WeightEvolution {
    pub fn new(base: Vec<Edge>, params: EvolutionParams, seed: u64) -> Self {
        WeightEvolution { current: Some(base), params, seed, t: 0 }
    }

    pub fn step_seed(seed: u64, t: usize) -> u64 {
        derive_seed(seed, EVOLVE_STREAM + t as u64)
    }
}

impl Iterator for WeightEvolution {
    type Item = Vec<Edge>;

    fn next(&mut self) -> Option<Vec<Edge>> {
        if self.t >= self.params.steps {
            return None;
        }
        let current = self.current.take()?;
        self.t += 1;
        if self.t < self.params.steps {
            self.current = Some(evolve_weights(&current, &self.params, Self::step_seed(self.seed, self.t)));
        }
        Some(current)
    }
}

/// An evolving synthetic graph with its generating labels.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticGraph {
    pub graph: TemporalGraph,
    pub labels: LabelVector,
    pub theta: Vec<f64>,
}

/// Base graph from `sbm`, evolved for `ev.steps` steps.
pub fn generate_temporal(sbm: &SbmParams, ev: &EvolutionParams) -> Result<SyntheticGraph> {
    ev.validate()?;
    let SbmSample { edges, labels, theta } = generate_dcsbm(sbm)?;
    let steps: Vec<Vec<Edge>> = WeightEvolution::new(edges, ev.clone(), sbm.seed).collect();
    let graph = TemporalGraph::new(sbm.n, steps, true)?;
    Ok(SyntheticGraph { graph, labels, theta })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutlierMode {
    /// Overwrite weights of edges already incident to the chosen vertex.
    Overwrite,
    /// Attach new edges from the chosen vertex to uniformly drawn partners.
    AddEdges,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutlierSpec {
    pub count: usize,
    /// 0-based time step that receives the outliers.
    pub injection_time: usize,
    /// Inclusive range for the number of edges touched per outlier.
    pub edges_per_outlier: (usize, usize),
    /// Inclusive range of the outlier weights.
    pub weight_range: (f64, f64),
    pub mode: OutlierMode,
    pub seed: u64,
}

impl OutlierSpec {
    /// `count` outliers at `injection_time`, each with 1 or 2 incident weights
    /// redrawn from `[500, 1000]`.
    pub fn extreme(count: usize, injection_time: usize, seed: u64) -> Self {
        OutlierSpec {
            count,
            injection_time,
            edges_per_outlier: (1, 2),
            weight_range: (500.0, 1000.0),
            mode: OutlierMode::Overwrite,
            seed,
        }
    }
}

/// Plants `spec.count` outlier vertices at one time step. Returns the modified
/// graph and the planted vertices in draw order.
///
/// In overwrite mode a drawn vertex with no incident edge at the injection
/// time is rejected and drawn again.
pub fn inject_outliers(graph: &TemporalGraph, spec: &OutlierSpec) -> Result<(TemporalGraph, Vec<u32>)> {
    let n = graph.n();
    if spec.count > n {
        return Err(Error::InvalidParameter(format!("cannot plant {} outliers among {n} vertices", spec.count)));
    }
    if spec.injection_time >= graph.len() {
        return Err(Error::InvalidParameter(format!(
            "injection time {} outside 0..{}",
            spec.injection_time,
            graph.len()
        )));
    }
    let (e_lo, e_hi) = spec.edges_per_outlier;
    if e_lo == 0 || e_lo > e_hi {
        return Err(Error::InvalidParameter("edges per outlier must be a non-empty range starting at 1 or more".into()));
    }
    let (w_lo, w_hi) = spec.weight_range;
    if !(0.0 <= w_lo && w_lo <= w_hi) {
        return Err(Error::InvalidParameter("outlier weight range must be non-negative and non-empty".into()));
    }
    let mut out = graph.clone();
    if spec.count == 0 {
        return Ok((out, Vec::new()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges = out.step_mut(spec.injection_time);

    // CSR incidence lists; a self-loop is listed once
    let mut offsets = vec![0usize; n + 1];
    for e in edges.iter() {
        offsets[e.source as usize + 1] += 1;
        if e.target != e.source {
            offsets[e.target as usize + 1] += 1;
        }
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let degree = |v: usize| offsets[v + 1] - offsets[v];

    let eligible = match spec.mode {
        OutlierMode::Overwrite => (0..n).filter(|&v| degree(v) > 0).count(),
        OutlierMode::AddEdges => n,
    };
    if eligible < spec.count {
        return Err(Error::InvalidParameter(format!(
            "only {eligible} vertices have incident edges at the injection time, {} requested",
            spec.count
        )));
    }
    if spec.mode == OutlierMode::AddEdges && n < 2 {
        return Err(Error::InvalidParameter("adding outlier edges needs at least two vertices".into()));
    }

    let mut chosen = Vec::with_capacity(spec.count);
    let mut taken = vec![false; n];
    while chosen.len() < spec.count {
        let v = rng.random_range(0..n);
        if taken[v] || (spec.mode == OutlierMode::Overwrite && degree(v) == 0) {
            continue;
        }
        taken[v] = true;
        chosen.push(v as u32);
    }

    match spec.mode {
        OutlierMode::Overwrite => {
            let mut incident = vec![0usize; offsets[n]];
            let mut fill = offsets.clone();
            for (idx, e) in edges.iter().enumerate() {
                incident[fill[e.source as usize]] = idx;
                fill[e.source as usize] += 1;
                if e.target != e.source {
                    incident[fill[e.target as usize]] = idx;
                    fill[e.target as usize] += 1;
                }
            }
            for &v in &chosen {
                let list = &incident[offsets[v as usize]..offsets[v as usize + 1]];
                let m = rng.random_range(e_lo..=e_hi).min(list.len());
                for pick in index::sample(&mut rng, list.len(), m) {
                    edges[list[pick]].weight = rng.random_range(w_lo..=w_hi);
                }
            }
        }
        OutlierMode::AddEdges => {
            for &v in &chosen {
                let m = rng.random_range(e_lo..=e_hi);
                for _ in 0..m {
                    let partner = loop {
                        let u = rng.random_range(0..n as u32);
                        if u != v {
                            break u;
                        }
                    };
                    edges.push(Edge::new(v, partner, rng.random_range(w_lo..=w_hi)));
                }
            }
        }
    }
    Ok((out, chosen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sbm(n: usize, k: usize, p_in: f64, p_out: f64, seed: u64) -> SbmParams {
        SbmParams {
            n,
            k,
            assignment: LabelAssignment::RoundRobin,
            block: SbmParams::planted_block(k, p_in, p_out),
            degree: DegreeModel::Constant,
            weight_range: (1, 100),
            seed,
        }
    }

    #[test]
    fn beta_parameters_in_unit_interval_with_expected_mean() {
        let theta = sample_degree_params(100_000, 1.0, 4.0, 17).unwrap();
        assert!(theta.iter().all(|&x| (0.0..=1.0).contains(&x)));
        let mean = theta.iter().sum::<f64>() / theta.len() as f64;
        // Beta(1, 4) mean is 1 / 5
        assert!((mean - 0.2).abs() < 0.01, "mean {mean}");
        assert_eq!(theta, sample_degree_params(100_000, 1.0, 4.0, 17).unwrap());
        assert!(sample_degree_params(10, 0.0, 4.0, 1).is_err());
    }

    #[test]
    fn within_block_density_matches_probability() {
        let p = sbm(2000, 2, 0.5, 0.1, 5);
        let s = generate_dcsbm(&p).unwrap();
        let n1 = s.labels.class_count(1) as f64;
        let within = s
            .edges
            .iter()
            .filter(|e| s.labels.label(e.source as usize) == 1 && s.labels.label(e.target as usize) == 1)
            .count() as f64;
        let density = within / (n1 * (n1 - 1.0) / 2.0);
        assert!((density - 0.5).abs() < 0.05, "density {density}");
        let across = s.edges.iter().filter(|e| s.labels.label(e.source as usize) != s.labels.label(e.target as usize)).count()
            as f64;
        let density = across / (n1 * s.labels.class_count(2) as f64);
        assert!((density - 0.1).abs() < 0.01, "density {density}");
    }

    #[test]
    fn generated_graph_is_simple_and_weighted_in_range() {
        let s = generate_dcsbm(&SbmParams::dcsbm_reference(3000, 1)).unwrap();
        let mut seen = HashSet::new();
        for e in &s.edges {
            assert!(e.source < e.target);
            assert!(seen.insert((e.source, e.target)));
            assert!((1.0..=100.0).contains(&e.weight) && e.weight.fract() == 0.0);
        }
    }

    #[test]
    fn zero_degree_parameter_isolates_vertex() {
        let mut theta = vec![1.0; 200];
        theta[7] = 0.0;
        let mut p = sbm(200, 2, 0.5, 0.5, 3);
        p.degree = DegreeModel::Fixed(theta);
        let s = generate_dcsbm(&p).unwrap();
        assert!(s.edges.iter().all(|e| e.source != 7 && e.target != 7));
        assert!(!s.edges.is_empty());
    }

    #[test]
    fn invalid_parameters_rejected() {
        let mut p = sbm(10, 2, 0.5, 0.1, 1);
        p.block[0][1] = 0.2;
        assert!(generate_dcsbm(&p).is_err());
        let mut p = sbm(10, 2, 0.5, 0.1, 1);
        p.degree = DegreeModel::Fixed(vec![2.0; 10]);
        assert!(matches!(generate_dcsbm(&p), Err(Error::InvalidParameter(_))));
        let mut p = sbm(10, 2, 1.5, 0.1, 1);
        p.block[0][0] = 1.5;
        assert!(generate_dcsbm(&p).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let p = SbmParams::dcsbm_reference(2500, 99);
        assert_eq!(generate_dcsbm(&p).unwrap(), generate_dcsbm(&p).unwrap());
        let other = generate_dcsbm(&SbmParams { seed: 100, ..p.clone() }).unwrap();
        assert_ne!(generate_dcsbm(&p).unwrap().edges, other.edges);
    }

    #[test]
    fn balanced_labels() {
        let lv = assign_labels(1003, 20, &LabelAssignment::RoundRobin, 0).unwrap();
        for &c in lv.class_counts() {
            assert!((c as f64 - 1003.0 / 20.0).abs() <= 1.0);
        }
        let lv = assign_labels(5000, 4, &LabelAssignment::Categorical(vec![0.25; 4]), 4).unwrap();
        assert_eq!(lv.class_counts().iter().sum::<usize>(), 5000);
    }

    #[test]
    fn evolution_changes_exact_fraction() {
        let base: Vec<Edge> = (0..1000).map(|i| Edge::new(i, i + 1, 10.0)).collect();
        let ev = EvolutionParams::default();
        let next = evolve_weights(&base, &ev, 3);
        assert_eq!(next.len(), base.len());
        for (a, b) in base.iter().zip(&next) {
            assert_eq!((a.source, a.target), (b.source, b.target));
            assert!((0.0..=30.0).contains(&b.weight));
        }
        let changed = base.iter().zip(&next).filter(|(a, b)| a.weight != b.weight).count();
        // a continuous perturbation of exactly 0 has probability zero
        assert_eq!(changed, 500);

        let frozen = EvolutionParams { change_fraction: 0.0, ..ev };
        assert_eq!(evolve_weights(&base, &frozen, 3), base);
    }

    #[test]
    fn evolution_clamps_at_zero() {
        let base: Vec<Edge> = (0..200).map(|i| Edge::new(i, i + 1, 1.0)).collect();
        let ev = EvolutionParams { change_fraction: 1.0, ..Default::default() };
        let next = evolve_weights(&base, &ev, 8);
        assert!(next.iter().all(|e| e.weight >= 0.0));
        assert!(next.iter().any(|e| e.weight == 0.0));
    }

    #[test]
    fn temporal_generation_keeps_edge_set() {
        let ev = EvolutionParams { steps: 4, ..Default::default() };
        let g = generate_temporal(&SbmParams::dcsbm_reference(800, 2), &ev).unwrap();
        assert_eq!(g.graph.len(), 4);
        for t in 1..4 {
            let pairs = |t: usize| g.graph.step(t).iter().map(|e| (e.source, e.target)).collect::<Vec<_>>();
            assert_eq!(pairs(0), pairs(t));
        }
        assert_eq!(g, generate_temporal(&SbmParams::dcsbm_reference(800, 2), &ev).unwrap());
    }

    #[test]
    fn outlier_injection_postconditions() {
        let ev = EvolutionParams { steps: 3, ..Default::default() };
        let g = generate_temporal(&SbmParams::dcsbm_reference(1000, 4), &ev).unwrap();
        let spec = OutlierSpec::extreme(10, 2, 77);
        let (out, planted) = inject_outliers(&g.graph, &spec).unwrap();
        assert_eq!(planted.len(), 10);
        assert_eq!(planted.iter().collect::<HashSet<_>>().len(), 10);
        for &v in &planted {
            assert!(out.step(2).iter().any(|e| (e.source == v || e.target == v) && (500.0..=1000.0).contains(&e.weight)));
        }
        assert_eq!(out.step(0), g.graph.step(0));
        assert_eq!(out.step(1), g.graph.step(1));
        assert_eq!(out.step(2).len(), g.graph.step(2).len());

        let (same, none) = inject_outliers(&g.graph, &OutlierSpec::extreme(0, 2, 1)).unwrap();
        assert!(none.is_empty());
        assert_eq!(same, g.graph);

        assert!(inject_outliers(&g.graph, &OutlierSpec::extreme(10, 3, 1)).is_err());
        assert!(inject_outliers(&g.graph, &OutlierSpec::extreme(1001, 2, 1)).is_err());
    }

    #[test]
    fn outlier_add_edges_mode() {
        let g = TemporalGraph::new(5, vec![vec![]], true).unwrap();
        let spec = OutlierSpec { mode: OutlierMode::AddEdges, ..OutlierSpec::extreme(2, 0, 5) };
        let (out, planted) = inject_outliers(&g, &spec).unwrap();
        assert_eq!(planted.len(), 2);
        assert!((2..=4).contains(&out.step(0).len()));
        // overwrite mode cannot find incident edges here
        assert!(inject_outliers(&g, &OutlierSpec::extreme(1, 0, 5)).is_err());
    }
}
