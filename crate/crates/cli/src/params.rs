//! Simulation parameter files.

use serde::{Deserialize, Serialize};
use temporal_encoder::synth::derive_seed;
use temporal_encoder::{
    DegreeModel, Error, EvolutionParams, LabelAssignment, OutlierMode, OutlierSpec, Result, SbmParams,
};

/// Seed stream for outlier placement, disjoint from the generator streams.
const OUTLIER_STREAM: u64 = 3 << 32;

pub const PRESETS: &[(&str, &str)] = &[
    ("stability", include_str!("../presets/stability.toml")),
    ("stability-small", include_str!("../presets/stability-small.toml")),
    ("outlier", include_str!("../presets/outlier.toml")),
];

pub fn preset(name: &str) -> Result<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, body)| *body).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
        Error::InvalidParameter(format!("unknown preset `{name}`; available: {}", names.join(", ")))
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationFile {
    pub seed: u64,
    pub graph: GraphSection,
    pub evolution: EvolutionSection,
    pub outliers: Option<OutlierSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub enum Assignment {
    RoundRobin,
    Categorical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub enum Degree {
    Constant,
    Beta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSection {
    pub n: usize,
    pub k: usize,
    #[serde(default = "default_assignment")]
    pub assignment: Assignment,
    /// Community prior for categorical assignment.
    pub prior: Option<Vec<f64>>,
    /// Full block matrix; overrides `p_in` and `p_out`.
    pub block: Option<Vec<Vec<f64>>>,
    pub p_in: Option<f64>,
    pub p_out: Option<f64>,
    #[serde(default = "default_degree")]
    pub degree: Degree,
    #[serde(default = "default_alpha")]
    pub degree_alpha: f64,
    #[serde(default = "default_beta")]
    pub degree_beta: f64,
    pub weight_range: [u32; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolutionSection {
    pub steps: usize,
    pub change_fraction: f64,
    pub perturbation: [f64; 2],
    #[serde(default = "default_true")]
    pub clamp_at_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub enum Mode {
    Overwrite,
    Add,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutlierSection {
    pub count: usize,
    /// 1-based time step.
    pub time: usize,
    pub edges_per_outlier: [usize; 2],
    pub weight_range: [f64; 2],
    #[serde(default = "default_mode")]
    pub mode: Mode,
}

fn default_assignment() -> Assignment {
    Assignment::RoundRobin
}
fn default_degree() -> Degree {
    Degree::Constant
}
fn default_alpha() -> f64 {
    1.0
}
fn default_beta() -> f64 {
    4.0
}
fn default_true() -> bool {
    true
}
fn default_mode() -> Mode {
    Mode::Overwrite
}

impl SimulationFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidParameter(format!("parameter file: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("parameter structs serialize")
    }

    pub fn sbm(&self) -> Result<SbmParams> {
        let g = &self.graph;
        let block = match (&g.block, g.p_in, g.p_out) {
            (Some(b), None, None) => b.clone(),
            (None, Some(p_in), Some(p_out)) => SbmParams::planted_block(g.k, p_in, p_out),
            _ => return Err(Error::InvalidParameter("give either `block` or both `p_in` and `p_out`".into())),
        };
        let assignment = match (&g.assignment, &g.prior) {
            (Assignment::RoundRobin, None) => LabelAssignment::RoundRobin,
            (Assignment::Categorical, Some(prior)) => LabelAssignment::Categorical(prior.clone()),
            (Assignment::Categorical, None) => LabelAssignment::Categorical(vec![1.0 / g.k.max(1) as f64; g.k]),
            (Assignment::RoundRobin, Some(_)) => {
                return Err(Error::InvalidParameter("`prior` requires categorical assignment".into()))
            }
        };
        let degree = match g.degree {
            Degree::Constant => DegreeModel::Constant,
            Degree::Beta => DegreeModel::Beta { alpha: g.degree_alpha, beta: g.degree_beta },
        };
        let params = SbmParams {
            n: g.n,
            k: g.k,
            assignment,
            block,
            degree,
            weight_range: (g.weight_range[0], g.weight_range[1]),
            seed: self.seed,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn evolution(&self) -> Result<EvolutionParams> {
        let e = &self.evolution;
        let params = EvolutionParams {
            steps: e.steps,
            change_fraction: e.change_fraction,
            perturbation: (e.perturbation[0], e.perturbation[1]),
            clamp_at_zero: e.clamp_at_zero,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn outliers(&self) -> Result<Option<OutlierSpec>> {
        let Some(o) = &self.outliers else { return Ok(None) };
        if o.time == 0 || o.time > self.evolution.steps {
            return Err(Error::InvalidParameter(format!(
                "outlier time {} outside 1..={}",
                o.time, self.evolution.steps
            )));
        }
        Ok(Some(OutlierSpec {
            count: o.count,
            injection_time: o.time - 1,
            edges_per_outlier: (o.edges_per_outlier[0], o.edges_per_outlier[1]),
            weight_range: (o.weight_range[0], o.weight_range[1]),
            mode: match o.mode {
                Mode::Overwrite => OutlierMode::Overwrite,
                Mode::Add => OutlierMode::AddEdges,
            },
            seed: derive_seed(self.seed, OUTLIER_STREAM),
        }))
    }
}
