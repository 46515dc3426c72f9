//! Wall-clock timing over replicates, a benchmark grid runner and log-log
//! slope fitting.

use std::time::Instant;

use crate::dynamics::vertex_dynamic;
use crate::encoder::temporal_encoder_embedding;
use crate::error::{Error, Result};
use crate::spectral::{spectral_outlier_measure, unfolded_spectral_embed, SpectralOptions};
use crate::synth::{derive_seed, generate_temporal, EvolutionParams, SbmParams};

/// Mean and sample standard deviation of repeated timings, in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingStats {
    pub samples: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

impl TimingStats {
    pub fn from_samples(samples: Vec<f64>) -> Self {
        let n = samples.len() as f64;
        let mean = if samples.is_empty() { 0.0 } else { samples.iter().sum::<f64>() / n };
        let std = if samples.len() < 2 {
            0.0
        } else {
            (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        TimingStats { samples, mean, std }
    }
}

/// Runs `setup` then times `run` on its output, `replicates` times. Setup is
/// excluded from the measurement.
pub fn time_replicates<S, R>(
    replicates: usize,
    mut setup: impl FnMut(usize) -> S,
    mut run: impl FnMut(S) -> R,
) -> TimingStats {
    let mut samples = Vec::with_capacity(replicates);
    for r in 0..replicates {
        let input = setup(r);
        let start = Instant::now();
        let out = run(input);
        samples.push(start.elapsed().as_secs_f64());
        drop(out);
    }
    TimingStats::from_samples(samples)
}

/// Grid of `(n, T)` cells timed on the constant-degree block model family.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub vertices: Vec<usize>,
    pub steps: Vec<usize>,
    pub replicates: usize,
    /// Spectral dimension; the spectral baseline is skipped when `None`.
    pub spectral_dim: Option<usize>,
    /// Size at which the reference block probabilities are used unscaled.
    pub base_n: usize,
    pub seed: u64,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        BenchmarkConfig {
            vertices: vec![5000, 10000, 20000, 40000],
            steps: vec![3],
            replicates: 10,
            spectral_dim: Some(3),
            base_n: 5000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkCell {
    pub n: usize,
    pub steps: usize,
    /// Mean total edge count over replicates.
    pub mean_edges: f64,
    /// Embedding plus vertex dynamics.
    pub encoder: TimingStats,
    /// Spectral embedding plus the distance measure.
    pub spectral: Option<TimingStats>,
}

/// Times every cell of the grid. Each replicate draws a fresh graph; graph
/// generation is not timed. One untimed encoder run per cell warms caches and
/// the thread pool.
pub fn run_benchmark(config: &BenchmarkConfig) -> Result<Vec<BenchmarkCell>> {
    if config.replicates == 0 {
        return Err(Error::InvalidParameter("at least one replicate is required".into()));
    }
    let mut cells = Vec::new();
    for &steps in &config.steps {
        for &n in &config.vertices {
            let graphs = (0..config.replicates)
                .map(|r| {
                    let seed = derive_seed(config.seed, ((n as u64) << 20) ^ ((steps as u64) << 8) ^ r as u64);
                    let sbm = SbmParams::dcsbm_constant_degree(n, config.base_n, seed);
                    generate_temporal(&sbm, &EvolutionParams { steps, ..Default::default() })
                })
                .collect::<Result<Vec<_>>>()?;
            let mean_edges =
                graphs.iter().map(|g| g.graph.total_edges() as f64).sum::<f64>() / config.replicates as f64;

            let encode = |g: &crate::synth::SyntheticGraph| -> Result<()> {
                let series = temporal_encoder_embedding(&g.graph, &g.labels)?;
                vertex_dynamic(&series, 0).map(drop)
            };
            encode(&graphs[0])?;
            let mut samples = Vec::with_capacity(config.replicates);
            for g in &graphs {
                let start = Instant::now();
                encode(g)?;
                samples.push(start.elapsed().as_secs_f64());
            }
            let encoder = TimingStats::from_samples(samples);

            let spectral = match config.spectral_dim {
                None => None,
                Some(dim) => {
                    let opts = SpectralOptions { seed: config.seed, ..SpectralOptions::with_dim(dim) };
                    let mut samples = Vec::with_capacity(config.replicates);
                    for g in &graphs {
                        let start = Instant::now();
                        let emb = unfolded_spectral_embed(&g.graph, &opts)?;
                        spectral_outlier_measure(&emb, 0, steps - 1)?;
                        samples.push(start.elapsed().as_secs_f64());
                    }
                    Some(TimingStats::from_samples(samples))
                }
            };
            cells.push(BenchmarkCell { n, steps, mean_edges, encoder, spectral });
        }
    }
    Ok(cells)
}

/// Least-squares slope and intercept of `ln y` against `ln x`.
///
/// Returns `None` with fewer than two points or non-positive values.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 || xs.iter().chain(ys).any(|&v| !(v > 0.0)) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats() {
        let s = TimingStats::from_samples(vec![1.0, 2.0, 3.0]);
        assert_eq!(s.mean, 2.0);
        assert!((s.std - 1.0).abs() < 1e-15);
        assert_eq!(TimingStats::from_samples(vec![4.0]).std, 0.0);
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [1e3, 2e3, 4e3, 8e3];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x * x).collect();
        let (slope, icpt) = loglog_fit(&xs, &ys).unwrap();
        assert!((slope - 2.0).abs() < 1e-12);
        assert!((icpt - 3f64.ln()).abs() < 1e-9);
        assert!(loglog_fit(&[1.0], &[1.0]).is_none());
        assert!(loglog_fit(&[1.0, 2.0], &[0.0, 1.0]).is_none());
    }

    #[test]
    fn one_cell_grid_reports_mean_of_replicates() {
        let config = BenchmarkConfig {
            vertices: vec![300],
            steps: vec![2],
            replicates: 2,
            spectral_dim: Some(2),
            base_n: 300,
            seed: 3,
        };
        let cells = run_benchmark(&config).unwrap();
        assert_eq!(cells.len(), 1);
        let c = &cells[0];
        assert_eq!(c.encoder.samples.len(), 2);
        assert_eq!(c.encoder.mean, (c.encoder.samples[0] + c.encoder.samples[1]) / 2.0);
        assert_eq!(c.spectral.as_ref().unwrap().samples.len(), 2);
        assert!(c.mean_edges > 0.0);
    }

    #[test]
    fn replicates_exclude_setup() {
        let s = time_replicates(3, |r| r, |r| r * 2);
        assert_eq!(s.samples.len(), 3);
    }
}
