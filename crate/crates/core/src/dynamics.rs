//! Vertex, community and graph dynamics over an embedding series.
//!
//! The vertex dynamic at time `t` is `1 - <Z_t(i), Z_ref(i)>`. For unit rows
//! this is `1 - cos(angle)`, so it is 0 when the connectivity pattern is
//! unchanged up to scale and 1 when it is orthogonal or the vertex went silent.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::encoder::EmbeddingSeries;
use crate::error::{Error, Result};
use crate::graph::LabelVector;
use crate::matrix::{dot, squared_distance};

/// Float error absorbed when clamping into `[0, 1]`.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// `T x n` vertex dynamics plus per-entry inactivity flags.
///
/// An entry is inactive when the vertex has a zero embedding row at the
/// reference time or at `t`; its dynamic is then exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexDynamics {
    n: usize,
    reference_time: usize,
    values: Vec<f64>,
    inactive: Vec<bool>,
}

impl VertexDynamics {
    /// Builds dynamics directly from a `T x n` row-major buffer, with no vertex
    /// marked inactive.
    pub fn from_values(n: usize, reference_time: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 || !values.len().is_multiple_of(n) || values.is_empty() {
            return Err(Error::ShapeMismatch(format!("{} values do not form T x {n}", values.len())));
        }
        let inactive = vec![false; values.len()];
        Ok(VertexDynamics { n, reference_time, values, inactive })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of time steps.
    pub fn len(&self) -> usize {
        self.values.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 0-based reference time.
    pub fn reference_time(&self) -> usize {
        self.reference_time
    }

    #[inline]
    pub fn get(&self, t: usize, i: usize) -> f64 {
        self.values[t * self.n + i]
    }

    pub fn step(&self, t: usize) -> &[f64] {
        &self.values[t * self.n..(t + 1) * self.n]
    }

    pub fn inactive(&self, t: usize) -> &[bool] {
        &self.inactive[t * self.n..(t + 1) * self.n]
    }

    fn check_time(&self, t: usize) -> Result<()> {
        if t >= self.len() {
            return Err(Error::InvalidParameter(format!("time index {t} outside 0..{}", self.len())));
        }
        Ok(())
    }
}

fn clamp_unit(x: f64) -> f64 {
    if (-CLAMP_TOLERANCE..0.0).contains(&x) {
        0.0
    } else if x > 1.0 && x <= 1.0 + CLAMP_TOLERANCE {
        1.0
    } else {
        x
    }
}

/// Vertex dynamics against the 0-based reference time `ref_t`.
pub fn vertex_dynamic(series: &EmbeddingSeries, ref_t: usize) -> Result<VertexDynamics> {
    if ref_t >= series.len() {
        return Err(Error::InvalidParameter(format!(
            "reference time {ref_t} outside 0..{}",
            series.len()
        )));
    }
    let n = series.n();
    let reference = series.step(ref_t);
    let ref_flags = series.normalized_flags(ref_t);
    let per_step: Vec<(Vec<f64>, Vec<bool>)> = (0..series.len())
        .into_par_iter()
        .map(|t| {
            let z = series.step(t);
            let flags = series.normalized_flags(t);
            let mut values = Vec::with_capacity(n);
            let mut inactive = Vec::with_capacity(n);
            for i in 0..n {
                let active = flags[i] && ref_flags[i];
                // For unit rows 1 - <a, b> = |a - b|^2 / 2, which avoids the
                // cancellation near 0 and is exactly 0 for identical rows.
                let value = if active {
                    clamp_unit(0.5 * squared_distance(z.row(i), reference.row(i)))
                } else {
                    clamp_unit(1.0 - dot(z.row(i), reference.row(i)))
                };
                values.push(value);
                inactive.push(!active);
            }
            (values, inactive)
        })
        .collect();
    let mut values = Vec::with_capacity(n * series.len());
    let mut inactive = Vec::with_capacity(n * series.len());
    for (v, f) in per_step {
        values.extend(v);
        inactive.extend(f);
    }
    Ok(VertexDynamics { n, reference_time: ref_t, values, inactive })
}

/// Mean vertex dynamic per community, `T x K`. `None` marks an empty
/// community.
pub fn community_dynamic(vd: &VertexDynamics, labels: &LabelVector) -> Result<Vec<Vec<Option<f64>>>> {
    if labels.n() != vd.n() {
        return Err(Error::ShapeMismatch(format!(
            "labels cover {} vertices, dynamics cover {}",
            labels.n(),
            vd.n()
        )));
    }
    let k = labels.k();
    Ok((0..vd.len())
        .map(|t| {
            let mut sums = vec![0.0; k];
            for (value, &label) in vd.step(t).iter().zip(labels.labels()) {
                if label != 0 {
                    sums[label as usize - 1] += value;
                }
            }
            sums.iter()
                .zip(labels.class_counts())
                .map(|(&sum, &count)| (count > 0).then(|| sum / count as f64))
                .collect()
        })
        .collect())
}

/// Mean vertex dynamic over all vertices, one value per time step.
pub fn graph_dynamic(vd: &VertexDynamics) -> Vec<f64> {
    (0..vd.len()).map(|t| vd.step(t).iter().sum::<f64>() / vd.n() as f64).collect()
}

/// Per-vertex maximum dynamic over the inclusive 0-based window.
pub fn max_window_dynamic(vd: &VertexDynamics, window: RangeInclusive<usize>) -> Result<Vec<f64>> {
    let (a, b) = (*window.start(), *window.end());
    if a > b || b >= vd.len() {
        return Err(Error::InvalidParameter(format!("window {a}..={b} invalid for {} time steps", vd.len())));
    }
    let mut best = vd.step(a).to_vec();
    for t in a + 1..=b {
        for (m, &x) in best.iter_mut().zip(vd.step(t)) {
            if x > *m {
                *m = x;
            }
        }
    }
    Ok(best)
}

/// Outlier and inlier vertices at one time step.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSummary {
    pub time: usize,
    pub outlier_threshold: f64,
    pub inlier_threshold: f64,
    /// Vertices with dynamic strictly above the outlier threshold.
    pub outliers: Vec<u32>,
    /// Vertices with dynamic strictly below the inlier threshold.
    pub inliers: Vec<u32>,
    pub outlier_fraction: f64,
    pub inlier_fraction: f64,
}

pub fn threshold_summary(
    vd: &VertexDynamics,
    t: usize,
    outlier_threshold: f64,
    inlier_threshold: f64,
) -> Result<ThresholdSummary> {
    vd.check_time(t)?;
    for th in [outlier_threshold, inlier_threshold] {
        if !(0.0..=1.0).contains(&th) {
            return Err(Error::InvalidParameter(format!("threshold {th} outside [0, 1]")));
        }
    }
    let values = vd.step(t);
    let select = |pred: &dyn Fn(f64) -> bool| -> Vec<u32> {
        values.iter().enumerate().filter(|(_, &x)| pred(x)).map(|(i, _)| i as u32).collect()
    };
    let outliers = select(&|x| x > outlier_threshold);
    let inliers = select(&|x| x < inlier_threshold);
    let n = vd.n() as f64;
    Ok(ThresholdSummary {
        time: t,
        outlier_threshold,
        inlier_threshold,
        outlier_fraction: outliers.len() as f64 / n,
        inlier_fraction: inliers.len() as f64 / n,
        outliers,
        inliers,
    })
}

/// Counts of `values` per bin. Bins are half-open `[lo, hi)` except the last,
/// which is closed; values outside the edges land in the end bins so the
/// counts always sum to `values.len()`.
pub fn histogram(values: &[f64], bin_edges: &[f64]) -> Result<Vec<usize>> {
    if bin_edges.len() < 2 {
        return Err(Error::InvalidParameter("a histogram needs at least two bin edges".into()));
    }
    if bin_edges.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter("bin edges must be strictly increasing".into()));
    }
    if bin_edges[0] > 0.0 || bin_edges[bin_edges.len() - 1] < 1.0 {
        return Err(Error::InvalidParameter("bin edges must span [0, 1]".into()));
    }
    let bins = bin_edges.len() - 1;
    let mut counts = vec![0usize; bins];
    for &x in values {
        // number of interior edges <= x
        let idx = bin_edges[1..bins].partition_point(|&e| e <= x);
        counts[idx] += 1;
    }
    Ok(counts)
}

/// `bins + 1` evenly spaced edges over `[0, 1]`.
pub fn uniform_bin_edges(bins: usize) -> Vec<f64> {
    (0..=bins).map(|i| i as f64 / bins as f64).collect()
}

/// Vertex indices sorted by descending value; ties keep ascending index order.
pub fn rank_by_value(values: &[f64]) -> Vec<u32> {
    let mut order: Vec<u32> = (0..values.len() as u32).collect();
    order.sort_by(|&a, &b| values[b as usize].total_cmp(&values[a as usize]));
    order
}

/// Descending ranking of vertices by their dynamic at time `t`.
pub fn rank_by_dynamic(vd: &VertexDynamics, t: usize) -> Result<Vec<u32>> {
    vd.check_time(t)?;
    Ok(rank_by_value(vd.step(t)))
}

/// Fraction of `planted` vertices found among the first `cutoff` entries of
/// `ranking`.
pub fn recall_at(ranking: &[u32], planted: &[u32], cutoff: usize) -> f64 {
    if planted.is_empty() {
        return 1.0;
    }
    let top = &ranking[..cutoff.min(ranking.len())];
    planted.iter().filter(|p| top.contains(p)).count() as f64 / planted.len() as f64
}

/// Everything derived from one embedding series and label vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsReport {
    pub vertex: VertexDynamics,
    pub community: Vec<Vec<Option<f64>>>,
    pub graph: Vec<f64>,
}

impl DynamicsReport {
    pub fn compute(series: &EmbeddingSeries, labels: &LabelVector, ref_t: usize) -> Result<Self> {
        let vertex = vertex_dynamic(series, ref_t)?;
        let community = community_dynamic(&vertex, labels)?;
        let graph = graph_dynamic(&vertex);
        Ok(DynamicsReport { vertex, community, graph })
    }

    pub fn reference_time(&self) -> usize {
        self.vertex.reference_time()
    }
}
