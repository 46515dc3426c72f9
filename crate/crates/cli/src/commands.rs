use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use temporal_encoder::io::{self as tio, csv_field, fmt_f64};
use temporal_encoder::{
    community_dynamic, graph_dynamic, histogram, loglog_fit, max_window_dynamic, rank_by_dynamic,
    rank_by_value, recall_at, run_benchmark, spectral_outlier_measure, temporal_encoder_embedding, threshold_summary,
    uniform_bin_edges, unfolded_spectral_embed, vertex_dynamic, BenchmarkConfig, EmbeddingSeries, Error, LabelVector,
    LoadedGraph, OutlierMode, OutlierSpec, Result, SpectralOptions, TemporalGraph, UnfoldedEmbedding, VertexRegistry,
};

use crate::params::{self, SimulationFile};
use crate::run::{Run, RunConfig};
use crate::{
    BenchmarkArgs, CompareArgs, DynamicsArgs, EmbedArgs, EmbeddingFormat, GraphArgs, InjectArgs, InjectMode,
    SimulateArgs, SpectralArgs,
};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn io_error(path: &Path, e: io::Error) -> Error {
    Error::Io { path: path.to_owned(), source: e }
}

/// Converts a 1-based time flag to a 0-based index.
fn time_index(name: &str, t: usize, steps: usize) -> Result<usize> {
    if t == 0 || t > steps {
        return Err(invalid(format!("--{name} {t} outside 1..={steps}")));
    }
    Ok(t - 1)
}

fn record_graph(config: &mut RunConfig, graph: &GraphArgs, labels_required: bool) -> Result<(Vec<PathBuf>, Vec<PathBuf>)> {
    if graph.edges.is_empty() {
        return Err(invalid("--edges is required"));
    }
    if labels_required && graph.labels.is_empty() {
        return Err(invalid("--labels is required"));
    }
    let edges = config.input("edges", &graph.edges)?;
    let labels = config.input("labels", &graph.labels)?;
    config.k = graph.k;
    config.undirected = Some(!graph.directed);
    config.option("allow_negative", graph.allow_negative);
    Ok((edges, labels))
}

fn load(run: &mut Run, edges: &[PathBuf], labels: &[PathBuf], graph: &GraphArgs) -> Result<LoadedGraph> {
    let opts = graph.load_options();
    let loaded = run.timed("ingest", || tio::load_temporal_graph(edges, labels, opts))?;
    run.summarize("vertices", loaded.graph.n());
    run.summarize("time_steps", loaded.graph.len());
    run.summarize("edges", loaded.graph.total_edges());
    Ok(loaded)
}

/// The label file for `ref_t` (0-based): the only one, or the one at `ref_t`.
fn labels_at(labels: &[LabelVector], steps: usize, ref_t: usize) -> Result<&LabelVector> {
    match labels.len() {
        1 => Ok(&labels[0]),
        len if len == steps => Ok(&labels[ref_t]),
        len => Err(invalid(format!("expected 1 or {steps} label files, got {len}"))),
    }
}

pub fn embed(args: EmbedArgs) -> Result<()> {
    let mut config = RunConfig::new("embed", &args.common.out)?;
    let (edges, labels) = record_graph(&mut config, &args.graph, true)?;
    config.reference_time = Some(args.ref_time);
    config.threads = args.common.threads;
    config.method = Some("encoder".into());
    config.option("format", format!("{:?}", args.format).to_lowercase());
    config.option("replicates", args.replicates);
    if args.replicates == 0 {
        return Err(invalid("--replicates must be at least 1"));
    }
    let mut run = Run::start(config)?;
    let g = load(&mut run, &edges, &labels, &args.graph)?;
    let ref_t = time_index("ref-time", args.ref_time, g.graph.len())?;
    let lv = labels_at(&g.labels, g.graph.len(), ref_t)?;

    let mut samples = Vec::with_capacity(args.replicates);
    let mut series = None;
    for _ in 0..args.replicates {
        let start = Instant::now();
        series = Some(temporal_encoder_embedding(&g.graph, lv)?);
        samples.push(start.elapsed().as_secs_f64());
    }
    let series = series.expect("at least one replicate");
    let stats = temporal_encoder::TimingStats::from_samples(samples);
    run.record_time("embed", stats.mean);
    if args.replicates > 1 {
        run.record_time("embed_std", stats.std);
    }

    let start = Instant::now();
    write_embedding(&mut run, &series, &g.registry, args.format)?;
    tio::write_labels(&run.output("labels.csv"), lv, &g.registry)?;
    let all: Vec<u32> = (0..g.registry.len() as u32).collect();
    tio::write_vertex_list(&run.output("vertices.csv"), &all, &g.registry)?;
    run.record_time("write", start.elapsed().as_secs_f64());
    run.summarize("k", series.k());
    run.finish()
}

fn write_embedding(run: &mut Run, series: &EmbeddingSeries, registry: &VertexRegistry, format: EmbeddingFormat) -> Result<()> {
    if matches!(format, EmbeddingFormat::Csv | EmbeddingFormat::Both) {
        tio::write_embedding_csv(&run.output("embedding.csv"), series, registry)?;
    }
    if matches!(format, EmbeddingFormat::Binary | EmbeddingFormat::Both) {
        tio::write_embedding_binary(&run.output("embedding.bin"), series)?;
    }
    Ok(())
}

fn missing_embedding(path: &Path) -> Error {
    io_error(
        path,
        io::Error::new(io::ErrorKind::NotFound, "no embedding found here; run `tenc embed` first to create one"),
    )
}

/// Reads an embedding from a `tenc embed` directory or file, with the label
/// file found next to it when present.
fn read_embedding(path: &Path) -> Result<(EmbeddingSeries, VertexRegistry, Option<PathBuf>)> {
    let (file, dir) = if path.is_dir() {
        let csv = path.join("embedding.csv");
        let bin = path.join("embedding.bin");
        let file = if csv.is_file() {
            csv
        } else if bin.is_file() {
            bin
        } else {
            return Err(missing_embedding(path));
        };
        (file, path.to_owned())
    } else if path.is_file() {
        (path.to_owned(), path.parent().map(Path::to_owned).unwrap_or_default())
    } else {
        return Err(missing_embedding(path));
    };
    let (series, registry) = if file.extension().is_some_and(|e| e == "bin") {
        let series = tio::read_embedding_binary(&file)?;
        let vertices = dir.join("vertices.csv");
        let registry = if vertices.is_file() {
            let tokens: Vec<String> = tio::read_vertex_tokens(&vertices)?.into_iter().map(|(t, _)| t).collect();
            if tokens.len() != series.n() {
                return Err(invalid(format!("{} lists {} vertices, embedding has {}", vertices.display(), tokens.len(), series.n())));
            }
            VertexRegistry::from_tokens(tokens)
        } else {
            VertexRegistry::with_numeric_ids(series.n())
        };
        (series, registry)
    } else {
        tio::read_embedding_csv(&file)?
    };
    let labels = dir.join("labels.csv");
    Ok((series, registry, labels.is_file().then_some(labels)))
}

fn parse_window(spec: &str, steps: usize) -> Result<(usize, usize)> {
    let (a, b) = spec.split_once(':').ok_or_else(|| invalid("--window expects `a:b`"))?;
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| invalid(format!("--window bound `{s}` is not an integer")));
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(invalid("--window start exceeds its end"));
    }
    Ok((time_index("window", a, steps)?, time_index("window", b, steps)?))
}

pub fn dynamics(args: DynamicsArgs) -> Result<()> {
    let mut config = RunConfig::new("dynamics", &args.common.out)?;
    config.reference_time = Some(args.ref_time);
    config.threshold_outlier = Some(args.thresholds.threshold_outlier);
    config.threshold_inlier = Some(args.thresholds.threshold_inlier);
    config.threads = args.common.threads;
    config.method = Some("encoder".into());
    config.option("bins", args.bins);
    config.option("hist_time", args.hist_time);
    config.option("rank_time", args.rank_time);
    config.option("window", &args.window);
    if args.bins == 0 {
        return Err(invalid("--bins must be at least 1"));
    }

    let (series, registry, labels, mut run) = if let Some(path) = &args.embedding {
        config.input("embedding", std::slice::from_ref(path))?;
        let label_paths = config.input("labels", &args.graph.labels)?;
        let mut run = Run::start(config)?;
        let (series, registry, sidecar) = run.timed("read", || read_embedding(path))?;
        let label_path = label_paths.first().cloned().or(sidecar);
        let labels = match label_path {
            None => None,
            Some(p) => {
                let rows = tio::read_label_rows(&p)?;
                let k = args.graph.k.unwrap_or(series.k());
                Some(
                    temporal_encoder::load_labels(rows.iter().map(|(t, c, _)| (t.as_str(), *c)), &registry, k)
                        .map_err(|e| Error::InFile { path: p.clone(), source: Box::new(e) })?,
                )
            }
        };
        (series, registry, labels, run)
    } else {
        if args.graph.edges.is_empty() {
            return Err(invalid("give --embedding (created by `tenc embed`) or --edges with --labels"));
        }
        let (edges, labels) = record_graph(&mut config, &args.graph, true)?;
        let mut run = Run::start(config)?;
        let g = load(&mut run, &edges, &labels, &args.graph)?;
        let ref_t = time_index("ref-time", args.ref_time, g.graph.len())?;
        let lv = labels_at(&g.labels, g.graph.len(), ref_t)?.clone();
        let series = run.timed("embed", || temporal_encoder_embedding(&g.graph, &lv))?;
        (series, g.registry, Some(lv), run)
    };

    let steps = series.len();
    let ref_t = time_index("ref-time", args.ref_time, steps)?;
    let hist_t = time_index("hist-time", args.hist_time.unwrap_or(steps), steps)?;
    let rank_t = time_index("rank-time", args.rank_time.unwrap_or(steps), steps)?;
    let window = args.window.as_deref().map(|w| parse_window(w, steps)).transpose()?;
    if labels.as_ref().is_some_and(|l| l.k() != series.k()) {
        return Err(invalid(format!("labels have K = {}, embedding has K = {}", labels.as_ref().unwrap().k(), series.k())));
    }

    let start = Instant::now();
    let vd = vertex_dynamic(&series, ref_t)?;
    let community = labels.as_ref().map(|l| community_dynamic(&vd, l)).transpose()?;
    let graph = graph_dynamic(&vd);
    let summaries = (0..steps)
        .map(|t| threshold_summary(&vd, t, args.thresholds.threshold_outlier, args.thresholds.threshold_inlier))
        .collect::<Result<Vec<_>>>()?;
    let edges = uniform_bin_edges(args.bins);
    let counts = histogram(vd.step(hist_t), &edges)?;
    let ranking = rank_by_dynamic(&vd, rank_t)?;
    let window_max = window.map(|(a, b)| max_window_dynamic(&vd, a..=b)).transpose()?;
    run.record_time("dynamics", start.elapsed().as_secs_f64());

    let start = Instant::now();
    tio::write_vertex_dynamics(&run.output("vertex_dynamics.csv"), &vd, &registry)?;
    if let Some(c) = &community {
        tio::write_community_dynamics(&run.output("community_dynamics.csv"), c)?;
    }
    tio::write_graph_dynamics(&run.output("graph_dynamics.csv"), &graph)?;
    tio::write_thresholds(&run.output("thresholds.csv"), &summaries)?;
    tio::write_histogram(&run.output("histogram.csv"), &edges, &counts)?;
    tio::write_ranking(&run.output("ranking.csv"), &ranking, vd.step(rank_t), &registry)?;
    tio::write_vertex_list(&run.output("outliers.csv"), &summaries[rank_t].outliers, &registry)?;
    if let Some(values) = &window_max {
        let order = rank_by_value(values);
        tio::write_ranking(&run.output("window_max.csv"), &order, values, &registry)?;
    }
    run.record_time("write", start.elapsed().as_secs_f64());
    run.summarize("graph_dynamic", &graph);
    run.summarize("outlier_fraction", summaries.iter().map(|s| s.outlier_fraction).collect::<Vec<_>>());
    run.summarize("inlier_fraction", summaries.iter().map(|s| s.inlier_fraction).collect::<Vec<_>>());
    run.finish()
}

pub fn simulate(args: SimulateArgs) -> Result<()> {
    let mut config = RunConfig::new("simulate", &args.common.out)?;
    config.threads = args.common.threads;
    let text = match (&args.source.params, &args.source.preset) {
        (Some(path), _) => {
            config.input("params", std::slice::from_ref(path))?;
            fs::read_to_string(path).map_err(|e| io_error(path, e))?
        }
        (None, Some(name)) => {
            config.option("preset", name);
            params::preset(name)?.to_owned()
        }
        (None, None) => unreachable!("clap requires a parameter source"),
    };
    let mut file = SimulationFile::parse(&text)?;
    if let Some(seed) = args.seed {
        file.seed = seed;
    }
    config.seed = Some(file.seed);
    config.undirected = Some(true);
    let sbm = file.sbm()?;
    let ev = file.evolution()?;
    let outliers = file.outliers()?;
    config.k = Some(sbm.k);

    let mut run = Run::start(config)?;
    run.write_text("params.toml", &file.to_toml())?;
    let synthetic = run.timed("generate", || temporal_encoder::generate_temporal(&sbm, &ev))?;
    let (graph, planted) = match &outliers {
        Some(spec) => run.timed("inject", || temporal_encoder::inject_outliers(&synthetic.graph, spec))?,
        None => (synthetic.graph, Vec::new()),
    };
    let registry = VertexRegistry::with_numeric_ids(graph.n());
    let start = Instant::now();
    tio::write_edgelist(&run.output("edges.csv"), &graph, &registry)?;
    tio::write_labels(&run.output("labels.csv"), &synthetic.labels, &registry)?;
    tio::write_vertex_list(&run.output("outliers.csv"), &planted, &registry)?;
    run.record_time("write", start.elapsed().as_secs_f64());
    run.summarize("vertices", graph.n());
    run.summarize("time_steps", graph.len());
    run.summarize("edges", graph.total_edges());
    run.summarize("planted_outliers", planted.len());
    run.finish()
}

pub fn inject_outliers(args: InjectArgs) -> Result<()> {
    let mut config = RunConfig::new("inject-outliers", &args.common.out)?;
    let (edges, labels) = record_graph(&mut config, &args.graph, false)?;
    config.seed = Some(args.seed);
    config.threads = args.common.threads;
    config.option("count", args.count);
    config.option("time", args.time);
    config.option("edges_per_outlier", [args.min_edges, args.max_edges]);
    config.option("weight_range", [args.weight_min, args.weight_max]);
    config.option("mode", format!("{:?}", args.mode).to_lowercase());
    let mut run = Run::start(config)?;
    let g = load(&mut run, &edges, &labels, &args.graph)?;
    let t = time_index("time", args.time.unwrap_or(g.graph.len()), g.graph.len())?;
    let spec = OutlierSpec {
        count: args.count,
        injection_time: t,
        edges_per_outlier: (args.min_edges, args.max_edges),
        weight_range: (args.weight_min, args.weight_max),
        mode: match args.mode {
            InjectMode::Overwrite => OutlierMode::Overwrite,
            InjectMode::Add => OutlierMode::AddEdges,
        },
        seed: args.seed,
    };
    let (graph, planted) = run.timed("inject", || temporal_encoder::inject_outliers(&g.graph, &spec))?;
    let start = Instant::now();
    tio::write_edgelist(&run.output("edges.csv"), &graph, &g.registry)?;
    if let Some(lv) = g.labels.first() {
        tio::write_labels(&run.output("labels.csv"), lv, &g.registry)?;
    }
    tio::write_vertex_list(&run.output("outliers.csv"), &planted, &g.registry)?;
    run.record_time("write", start.elapsed().as_secs_f64());
    run.summarize("planted_outliers", planted.len());
    run.finish()
}

fn write_spectral_embedding(path: &Path, emb: &UnfoldedEmbedding, registry: &VertexRegistry) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| io_error(path, e))?;
    let mut out = io::BufWriter::new(file);
    let mut header = String::from("t,vertex");
    for c in 1..=emb.dim() {
        header.push_str(&format!(",z_{c}"));
    }
    header.push_str(",method");
    let io = |e| io_error(path, e);
    writeln!(out, "{header}").map_err(io)?;
    for (t, block) in emb.per_time.iter().enumerate() {
        for i in 0..block.nrows() {
            let mut line = format!("{},{}", t + 1, csv_field(registry.external_id(i as u32)));
            for c in 0..block.ncols() {
                line.push(',');
                line.push_str(&fmt_f64(block[(i, c)]));
            }
            line.push_str(",spectral");
            writeln!(out, "{line}").map_err(io)?;
        }
    }
    out.flush().map_err(io)
}

fn spectral_options(dim: usize, seed: u64) -> SpectralOptions {
    SpectralOptions { seed, ..SpectralOptions::with_dim(dim) }
}

pub fn spectral(args: SpectralArgs) -> Result<()> {
    let mut config = RunConfig::new("spectral", &args.common.out)?;
    let (edges, labels) = record_graph(&mut config, &args.graph, false)?;
    config.reference_time = Some(args.ref_time);
    config.seed = Some(args.seed);
    config.threads = args.common.threads;
    config.method = Some("spectral".into());
    config.option("dim", args.dim);
    config.option("rank_time", args.rank_time);
    config.option("max_vertices", args.max_vertices);
    config.option("max_block_steps", args.max_block_steps);
    let mut run = Run::start(config)?;
    let g = load(&mut run, &edges, &labels, &args.graph)?;
    let steps = g.graph.len();
    let ref_t = time_index("ref-time", args.ref_time, steps)?;
    let rank_t = time_index("rank-time", args.rank_time.unwrap_or(steps), steps)?;
    let opts = SpectralOptions {
        max_vertices: args.max_vertices,
        max_block_steps: args.max_block_steps,
        ..spectral_options(args.dim, args.seed)
    };
    let emb = run.timed("embed", || unfolded_spectral_embed(&g.graph, &opts))?;
    let distances = run.timed("distance", || {
        (0..steps).map(|t| spectral_outlier_measure(&emb, ref_t, t)).collect::<Result<Vec<_>>>()
    })?;

    let start = Instant::now();
    write_spectral_embedding(&run.output("spectral_embedding.csv"), &emb, &g.registry)?;
    let mut sv = String::from("index,singular_value\n");
    for (i, s) in emb.singular_values.iter().enumerate() {
        sv.push_str(&format!("{},{}\n", i + 1, fmt_f64(*s)));
    }
    run.output("singular_values.csv");
    run.write_text("singular_values.csv", &sv)?;
    let mut dist = String::from("t,vertex,distance\n");
    for (t, d) in distances.iter().enumerate() {
        for (i, x) in d.iter().enumerate() {
            dist.push_str(&format!("{},{},{}\n", t + 1, csv_field(g.registry.external_id(i as u32)), fmt_f64(*x)));
        }
    }
    run.output("spectral_distance.csv");
    run.write_text("spectral_distance.csv", &dist)?;
    let ranking = rank_by_value(&distances[rank_t]);
    tio::write_ranking(&run.output("ranking.csv"), &ranking, &distances[rank_t], &g.registry)?;
    run.record_time("write", start.elapsed().as_secs_f64());
    run.summarize("block_steps", emb.block_steps);
    run.summarize("residual", emb.residual);
    run.finish()
}

pub fn benchmark(args: BenchmarkArgs) -> Result<()> {
    let mut config = RunConfig::new("benchmark", &args.common.out)?;
    config.seed = Some(args.seed);
    config.threads = args.common.threads;
    config.k = Some(20);
    config.method = Some(if args.no_spectral { "encoder" } else { "encoder+spectral" }.into());
    config.option("vertices", &args.vertices);
    config.option("steps", &args.steps);
    config.option("replicates", args.replicates);
    config.option("dim", args.dim);
    config.option("base_n", args.base_n);
    if args.vertices.is_empty() || args.steps.is_empty() || args.steps.contains(&0) {
        return Err(invalid("the grid needs at least one vertex count and positive time-step counts"));
    }
    let bench = BenchmarkConfig {
        vertices: args.vertices.clone(),
        steps: args.steps.clone(),
        replicates: args.replicates,
        spectral_dim: (!args.no_spectral).then_some(args.dim),
        base_n: args.base_n,
        seed: args.seed,
    };
    let mut run = Run::start(config)?;
    let cells = run.timed("benchmark", || run_benchmark(&bench))?;
    let mut table = String::from(
        "n,t,mean_edges,replicates,encoder_mean_s,encoder_std_s,spectral_mean_s,spectral_std_s\n",
    );
    for c in &cells {
        let (sm, ss) = c.spectral.as_ref().map_or((String::new(), String::new()), |s| (fmt_f64(s.mean), fmt_f64(s.std)));
        table.push_str(&format!(
            "{},{},{},{},{},{},{sm},{ss}\n",
            c.n,
            c.steps,
            fmt_f64(c.mean_edges),
            c.encoder.samples.len(),
            fmt_f64(c.encoder.mean),
            fmt_f64(c.encoder.std),
        ));
    }
    run.output("benchmark.csv");
    run.write_text("benchmark.csv", &table)?;
    for &t in &args.steps {
        let (xs, ys): (Vec<f64>, Vec<f64>) =
            cells.iter().filter(|c| c.steps == t).map(|c| (c.n as f64, c.encoder.mean)).unzip();
        if let Some((slope, _)) = loglog_fit(&xs, &ys) {
            run.summarize(&format!("encoder_loglog_slope_t{t}"), slope);
        }
    }
    run.finish()
}

pub fn compare(args: CompareArgs) -> Result<()> {
    let mut config = RunConfig::new("compare", &args.common.out)?;
    let (edges, labels) = record_graph(&mut config, &args.graph, true)?;
    let planted_path = args.planted.as_ref().map(|p| config.input("planted", std::slice::from_ref(p))).transpose()?;
    config.reference_time = Some(args.ref_time);
    config.seed = Some(args.seed);
    config.threads = args.common.threads;
    config.method = Some("encoder+spectral".into());
    config.option("dim", args.dim);
    config.option("rank_time", args.rank_time);
    config.option("cutoffs", &args.cutoffs);
    let mut run = Run::start(config)?;
    let g = load(&mut run, &edges, &labels, &args.graph)?;
    let steps = g.graph.len();
    let ref_t = time_index("ref-time", args.ref_time, steps)?;
    let rank_t = time_index("rank-time", args.rank_time.unwrap_or(steps), steps)?;
    let lv = labels_at(&g.labels, steps, ref_t)?;

    let encoder = run.timed("encoder", || {
        let series = temporal_encoder_embedding(&g.graph, lv)?;
        vertex_dynamic(&series, ref_t)
    })?;
    let opts = spectral_options(args.dim, args.seed);
    let spectral = run.timed("spectral", || {
        let emb = unfolded_spectral_embed(&g.graph, &opts)?;
        spectral_outlier_measure(&emb, ref_t, rank_t)
    })?;
    let enc_values = encoder.step(rank_t);
    let enc_rank = rank_by_dynamic(&encoder, rank_t)?;
    let spec_rank = rank_by_value(&spectral);
    write_comparison(&run.output("comparison.csv"), &g.graph, &g.registry, enc_values, &enc_rank, &spectral, &spec_rank)?;

    if let Some(path) = planted_path.and_then(|p| p.into_iter().next()) {
        let planted = tio::read_vertex_list(&path, &g.registry)?;
        let mut body = String::from("cutoff,encoder_recall,spectral_recall\n");
        let mut recall = Vec::new();
        for &c in &args.cutoffs {
            let (e, s) = (recall_at(&enc_rank, &planted, c), recall_at(&spec_rank, &planted, c));
            body.push_str(&format!("{c},{},{}\n", fmt_f64(e), fmt_f64(s)));
            recall.push((c, e, s));
        }
        run.output("recall.csv");
        run.write_text("recall.csv", &body)?;
        run.summarize("recall", recall);
    }
    run.finish()
}

fn write_comparison(
    path: &Path,
    graph: &TemporalGraph,
    registry: &VertexRegistry,
    enc_values: &[f64],
    enc_rank: &[u32],
    spectral: &[f64],
    spec_rank: &[u32],
) -> Result<()> {
    let mut spec_pos = vec![0usize; graph.n()];
    for (r, &v) in spec_rank.iter().enumerate() {
        spec_pos[v as usize] = r + 1;
    }
    let mut body = String::from("vertex,encoder_dynamic,encoder_rank,spectral_distance,spectral_rank\n");
    for (r, &v) in enc_rank.iter().enumerate() {
        let i = v as usize;
        body.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_field(registry.external_id(v)),
            fmt_f64(enc_values[i]),
            r + 1,
            fmt_f64(spectral[i]),
            spec_pos[i]
        ));
    }
    fs::write(path, body).map_err(|e| io_error(path, e))
}
