//! Temporal community-encoder embedding for weighted dynamic graphs.
//!
//! Given a sequence of edgelists over a fixed vertex set and a community
//! label per vertex, each time step is embedded as `A_t W`, where `W` is the
//! one-hot label matrix scaled by inverse community size. Rows are normalized
//! to unit length and compared against a reference time step to give
//! per-vertex, per-community and whole-graph dynamics.
//!
//! The crate also contains a degree-corrected block-model generator with
//! weight evolution and outlier injection, and a truncated spectral baseline
//! computed on the column-unfolded adjacency.

pub mod dynamics;
pub mod encoder;
pub mod error;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod spectral;
pub mod synth;
pub mod timing;

pub use dynamics::{
    community_dynamic, graph_dynamic, histogram, max_window_dynamic, rank_by_dynamic, rank_by_value, recall_at,
    threshold_summary, uniform_bin_edges, vertex_dynamic, DynamicsReport, ThresholdSummary, VertexDynamics,
};
pub use encoder::{
    build_encoder_matrix, embed_time_step, normalize_rows, select_labels, temporal_encoder_embedding, EmbeddingSeries,
    EncoderMatrix, LabelChoice, StreamingEncoder,
};
pub use error::{Error, ErrorKind, Result};
pub use graph::{ingest_edgelist, load_labels, Edge, IngestOptions, LabelVector, TemporalGraph, VertexRegistry};
pub use io::{load_temporal_graph, LoadOptions, LoadedGraph};
pub use matrix::RowMatrix;
pub use timing::{loglog_fit, run_benchmark, BenchmarkCell, BenchmarkConfig, TimingStats};
pub use spectral::{spectral_outlier_measure, unfolded_spectral_embed, SpectralOptions, UnfoldedEmbedding};
pub use synth::{
    generate_dcsbm, generate_temporal, inject_outliers, DegreeModel, EvolutionParams, LabelAssignment, OutlierMode,
    OutlierSpec, SbmParams, SbmSample, SyntheticGraph,
};
