//! Output directory, config echo and manifest for one run.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use temporal_encoder::{Error, Result};

pub const CONFIG_FILE: &str = "config.json";
pub const MANIFEST_FILE: &str = "manifest.json";

/// Fully resolved configuration of one command invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub inputs: BTreeMap<String, Vec<PathBuf>>,
    pub out: PathBuf,
    pub k: Option<usize>,
    pub reference_time: Option<usize>,
    pub threshold_outlier: Option<f64>,
    pub threshold_inlier: Option<f64>,
    pub undirected: Option<bool>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub method: Option<String>,
    /// Command-specific settings.
    pub options: BTreeMap<String, Value>,
}

impl RunConfig {
    pub fn new(command: &str, out: &Path) -> Result<Self> {
        Ok(RunConfig {
            command: command.to_owned(),
            inputs: BTreeMap::new(),
            out: resolve(out)?,
            k: None,
            reference_time: None,
            threshold_outlier: None,
            threshold_inlier: None,
            undirected: None,
            seed: None,
            threads: None,
            method: None,
            options: BTreeMap::new(),
        })
    }

    pub fn input(&mut self, name: &str, paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
        let resolved = paths.iter().map(|p| resolve(p)).collect::<Result<Vec<_>>>()?;
        if !resolved.is_empty() {
            self.inputs.insert(name.to_owned(), resolved.clone());
        }
        Ok(resolved)
    }

    pub fn option(&mut self, name: &str, value: impl Serialize) {
        self.options.insert(name.to_owned(), serde_json::to_value(value).expect("option serializes"));
    }
}

pub fn resolve(path: &Path) -> Result<PathBuf> {
    std::path::absolute(path).map_err(|e| Error::Io { path: path.to_owned(), source: e })
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    seed: Option<u64>,
    config: &'a RunConfig,
    outputs: &'a [String],
    timings_seconds: &'a BTreeMap<String, f64>,
    summary: &'a BTreeMap<String, Value>,
}

/// Collects output files, timings and summary values, then writes the
/// manifest. The config echo is written as soon as the run starts.
pub struct Run {
    pub config: RunConfig,
    started: Instant,
    outputs: Vec<String>,
    timings: BTreeMap<String, f64>,
    summary: BTreeMap<String, Value>,
}

impl Run {
    pub fn start(config: RunConfig) -> Result<Self> {
        fs::create_dir_all(&config.out).map_err(|e| Error::Io { path: config.out.clone(), source: e })?;
        let run = Run {
            config,
            started: Instant::now(),
            outputs: Vec::new(),
            timings: BTreeMap::new(),
            summary: BTreeMap::new(),
        };
        let echo = serde_json::to_string_pretty(&run.config).expect("config serializes");
        run.write_text(CONFIG_FILE, &(echo + "\n"))?;
        Ok(run)
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.config.out.join(name)
    }

    /// Path for an output file, recorded in the manifest.
    pub fn output(&mut self, name: &str) -> PathBuf {
        if !self.outputs.iter().any(|o| o == name) {
            self.outputs.push(name.to_owned());
        }
        self.path(name)
    }

    pub fn write_text(&self, name: &str, body: &str) -> Result<()> {
        let path = self.path(name);
        fs::write(&path, body).map_err(|e| Error::Io { path, source: e })
    }

    /// Runs `f` and records its wall-clock time under `label`.
    pub fn timed<T>(&mut self, label: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f()?;
        self.timings.insert(label.to_owned(), start.elapsed().as_secs_f64());
        Ok(out)
    }

    pub fn record_time(&mut self, label: &str, seconds: f64) {
        self.timings.insert(label.to_owned(), seconds);
    }

    pub fn summarize(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(key.to_owned(), serde_json::to_value(value).expect("summary serializes"));
    }

    pub fn finish(mut self) -> Result<()> {
        self.timings.insert("total".into(), self.started.elapsed().as_secs_f64());
        let manifest = Manifest {
            tool: "tenc",
            version: env!("CARGO_PKG_VERSION"),
            command: &self.config.command,
            seed: self.config.seed,
            config: &self.config,
            outputs: &self.outputs,
            timings_seconds: &self.timings,
            summary: &self.summary,
        };
        let body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        self.write_text(MANIFEST_FILE, &(body + "\n"))
    }
}
