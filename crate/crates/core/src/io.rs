//! Delimited text formats for edgelists, labels, embeddings and dynamics, plus
//! a flat little-endian binary embedding layout.
//!
//! Readers accept tab- or comma-separated input (detected from the first data
//! line) and skip `#` comment lines. Writers emit comma-separated text with a
//! header row; floats use the shortest representation that parses back to
//! the same bits.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::dynamics::{ThresholdSummary, VertexDynamics};
use crate::encoder::EmbeddingSeries;
use crate::error::{Error, Result};
use crate::graph::{ingest_edgelist, load_labels, Edge, IngestOptions, LabelVector, TemporalGraph, VertexRegistry};
use crate::matrix::RowMatrix;

const BINARY_MAGIC: &[u8; 8] = b"TENCEMB1";

/// Formats a float so that parsing it back yields the identical value.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::parse(path, line, format!("{other:?}")),
    }
}

/// Tab if the first data line contains a tab, otherwise comma.
pub fn detect_delimiter(path: &Path) -> Result<u8> {
    let reader = BufReader::new(open(path)?);
    for line in reader.lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        return Ok(if line.contains('\t') { b'\t' } else { b',' });
    }
    Ok(b',')
}

fn records(path: &Path, has_headers: bool) -> Result<csv::Reader<File>> {
    let delimiter = detect_delimiter(path)?;
    Ok(csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(has_headers)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(open(path)?))
}

/// One parsed edgelist row before vertex resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRow {
    pub src: String,
    pub dst: String,
    pub weight: f64,
    /// 1-based time step from an optional fourth column.
    pub time: Option<usize>,
    pub line: u64,
}

/// Reads `src, dst, weight[, t]` rows. A first row whose weight column reads
/// `weight` is taken as a header and skipped.
pub fn read_edge_rows(path: &Path) -> Result<Vec<EdgeRow>> {
    let mut rows = Vec::new();
    for (idx, record) in records(path, false)?.into_records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 3 && record.len() != 4 {
            return Err(Error::parse(path, line, format!("expected 3 or 4 columns, found {}", record.len())));
        }
        if idx == 0 && record[2].eq_ignore_ascii_case("weight") {
            continue;
        }
        let weight: f64 = record[2]
            .parse()
            .map_err(|_| Error::parse(path, line, format!("weight `{}` is not a number", &record[2])))?;
        let time = match record.get(3) {
            None => None,
            Some(field) => match field.parse::<usize>() {
                Ok(t) if t >= 1 => Some(t),
                _ => return Err(Error::parse(path, line, format!("time `{field}` is not an integer >= 1"))),
            },
        };
        rows.push(EdgeRow { src: record[0].to_owned(), dst: record[1].to_owned(), weight, time, line });
    }
    Ok(rows)
}

/// Reads `vertex, community` rows with their line numbers.
pub fn read_label_rows(path: &Path) -> Result<Vec<(String, u32, u64)>> {
    let mut rows = Vec::new();
    for (idx, record) in records(path, false)?.into_records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::parse(path, line, format!("expected 2 columns, found {}", record.len())));
        }
        let community = match record[1].parse::<u32>() {
            Ok(c) => c,
            Err(_) if idx == 0 => continue,
            Err(_) => {
                return Err(Error::parse(path, line, format!("community `{}` is not a non-negative integer", &record[1])))
            }
        };
        rows.push((record[0].to_owned(), community, line));
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    /// Number of communities; inferred from the largest label when `None`.
    pub k: Option<usize>,
    pub undirected: bool,
    pub allow_negative: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { k: None, undirected: true, allow_negative: false }
    }
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub registry: VertexRegistry,
    pub graph: TemporalGraph,
    /// One label vector per label file, in the order given.
    pub labels: Vec<LabelVector>,
}

/// Loads a temporal graph from one edgelist file per time step, or from a
/// single file with a time column, together with its label files.
///
/// Vertices are registered from the label files first, then from the edges in
/// time order, so the vertex universe is the union of both.
pub fn load_temporal_graph(edge_paths: &[PathBuf], label_paths: &[PathBuf], opts: LoadOptions) -> Result<LoadedGraph> {
    if edge_paths.is_empty() {
        return Err(Error::InvalidParameter("at least one edgelist file is required".into()));
    }
    let label_rows: Vec<Vec<(String, u32, u64)>> =
        label_paths.iter().map(|p| read_label_rows(p)).collect::<Result<_>>()?;

    // (file, rows) per time step
    let mut steps: Vec<(PathBuf, Vec<EdgeRow>)> = Vec::new();
    if edge_paths.len() == 1 {
        let path = &edge_paths[0];
        let rows = read_edge_rows(path)?;
        let timed = rows.iter().filter(|r| r.time.is_some()).count();
        if timed == 0 {
            steps.push((path.clone(), rows));
        } else if timed == rows.len() {
            let t_max = rows.iter().filter_map(|r| r.time).max().unwrap_or(1);
            steps = (0..t_max).map(|_| (path.clone(), Vec::new())).collect();
            for row in rows {
                let t = row.time.expect("all rows timed") - 1;
                steps[t].1.push(row);
            }
        } else {
            return Err(Error::parse(path, 0, "either every row or no row may carry a time column"));
        }
    } else {
        for path in edge_paths {
            let rows = read_edge_rows(path)?;
            if let Some(row) = rows.iter().find(|r| r.time.is_some()) {
                return Err(Error::parse(path, row.line, "time column not allowed with one file per time step"));
            }
            steps.push((path.clone(), rows));
        }
    }

    let mut registry = VertexRegistry::new();
    for rows in &label_rows {
        for (token, _, _) in rows {
            registry.register(token);
        }
    }
    for (_, rows) in &steps {
        for row in rows {
            registry.register(&row.src);
            registry.register(&row.dst);
        }
    }

    let ingest = IngestOptions { allow_negative: opts.allow_negative };
    let mut edges = Vec::with_capacity(steps.len());
    for (path, rows) in &steps {
        let step = ingest_edgelist(rows.iter().map(|r| (r.src.as_str(), r.dst.as_str(), r.weight)), &registry, ingest)
            .map_err(|e| match &e {
                Error::UnknownVertex { row, .. } | Error::NegativeWeight { row, .. } | Error::NonFiniteWeight { row } => {
                    let message = e.to_string();
                    let message = message.strip_prefix(&format!("row {row}: ")).unwrap_or(&message).to_owned();
                    Error::parse(path, rows[row - 1].line, message)
                }
                _ => Error::in_file(path, e),
            })?;
        edges.push(step);
    }

    let k = opts.k.unwrap_or_else(|| {
        label_rows.iter().flatten().map(|(_, c, _)| *c as usize).max().unwrap_or(1).max(1)
    });
    let labels = label_paths
        .iter()
        .zip(&label_rows)
        .map(|(path, rows)| {
            load_labels(rows.iter().map(|(t, c, _)| (t.as_str(), *c)), &registry, k).map_err(|e| Error::in_file(path, e))
        })
        .collect::<Result<Vec<_>>>()?;

    let graph = TemporalGraph::new(registry.len(), edges, opts.undirected)?;
    Ok(LoadedGraph { registry, graph, labels })
}

/// Writes all time steps to one `src,dst,weight,t` file.
pub fn write_edgelist(path: &Path, graph: &TemporalGraph, registry: &VertexRegistry) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(out, "# src,dst,weight,t").map_err(io)?;
    for (t, edges) in graph.steps().iter().enumerate() {
        for e in edges {
            writeln!(
                out,
                "{},{},{},{}",
                csv_field(registry.external_id(e.source)),
                csv_field(registry.external_id(e.target)),
                fmt_f64(e.weight),
                t + 1
            )
            .map_err(io)?;
        }
    }
    out.flush().map_err(io)
}

/// Writes one step as a three-column file.
pub fn write_edge_step(path: &Path, edges: &[Edge], registry: &VertexRegistry) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    for e in edges {
        writeln!(
            out,
            "{},{},{}",
            csv_field(registry.external_id(e.source)),
            csv_field(registry.external_id(e.target)),
            fmt_f64(e.weight)
        )
        .map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Writes `vertex,community` rows for every labelled vertex.
pub fn write_labels(path: &Path, labels: &LabelVector, registry: &VertexRegistry) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(out, "vertex,community").map_err(io)?;
    for (i, &label) in labels.labels().iter().enumerate() {
        if label != 0 {
            writeln!(out, "{},{label}", csv_field(registry.external_id(i as u32))).map_err(io)?;
        }
    }
    out.flush().map_err(io)
}

/// Quotes a token when it contains a delimiter, quote, comment marker or newline.
pub fn csv_field(s: &str) -> std::borrow::Cow<'_, str> {
    if s.contains([',', '"', '\n', '\t', '#']) {
        format!("\"{}\"", s.replace('"', "\"\"")).into()
    } else {
        s.into()
    }
}

/// Writes `t,vertex,z_1..z_K,normalized`, one row per time step and vertex.
pub fn write_embedding_csv(path: &Path, series: &EmbeddingSeries, registry: &VertexRegistry) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    let mut header = String::from("t,vertex");
    for c in 1..=series.k() {
        header.push_str(&format!(",z_{c}"));
    }
    header.push_str(",normalized");
    writeln!(out, "{header}").map_err(io)?;
    let mut line = String::new();
    for t in 0..series.len() {
        let z = series.step(t);
        for i in 0..series.n() {
            line.clear();
            line.push_str(&format!("{},{}", t + 1, csv_field(registry.external_id(i as u32))));
            for &x in z.row(i) {
                line.push(',');
                line.push_str(&fmt_f64(x));
            }
            line.push_str(if series.is_normalized(t, i) { ",1" } else { ",0" });
            writeln!(out, "{line}").map_err(io)?;
        }
    }
    out.flush().map_err(io)
}

/// Reads a file written by [`write_embedding_csv`]. The vertex order of the
/// first time step defines the registry.
pub fn read_embedding_csv(path: &Path) -> Result<(EmbeddingSeries, VertexRegistry)> {
    let mut reader = records(path, true)?;
    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    if headers.len() < 4 || &headers[0] != "t" || &headers[1] != "vertex" || &headers[headers.len() - 1] != "normalized" {
        return Err(Error::parse(path, 1, "expected header `t,vertex,z_1..z_K,normalized`"));
    }
    let k = headers.len() - 3;
    let mut registry = VertexRegistry::new();
    let mut data: Vec<Vec<f64>> = Vec::new();
    let mut flags: Vec<Vec<bool>> = Vec::new();
    let mut tokens_per_step: Vec<usize> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != k + 3 {
            return Err(Error::parse(path, line, format!("expected {} columns", k + 3)));
        }
        let t: usize = record[0].parse().ok().filter(|&t| t >= 1).ok_or_else(|| Error::parse(path, line, "bad time"))?;
        if t > data.len() + 1 || t < data.len() {
            return Err(Error::parse(path, line, "rows must be grouped by ascending time step"));
        }
        if t == data.len() + 1 {
            data.push(Vec::new());
            flags.push(Vec::new());
            tokens_per_step.push(0);
        }
        let pos = tokens_per_step[t - 1];
        if t == 1 {
            if registry.register(&record[1]) as usize != pos {
                return Err(Error::parse(path, line, format!("vertex `{}` repeated", &record[1])));
            }
        } else if registry.tokens().get(pos).map(String::as_str) != Some(&record[1]) {
            return Err(Error::parse(path, line, "vertex order differs from the first time step"));
        }
        tokens_per_step[t - 1] += 1;
        for field in record.iter().skip(2).take(k) {
            data[t - 1].push(field.parse().map_err(|_| Error::parse(path, line, format!("`{field}` is not a number")))?);
        }
        flags[t - 1].push(&record[k + 2] == "1");
    }
    let n = registry.len();
    if data.is_empty() || tokens_per_step.iter().any(|&c| c != n) {
        return Err(Error::parse(path, 0, "every time step must list every vertex"));
    }
    let steps = data.into_iter().map(|d| RowMatrix::from_vec(n, k, d)).collect();
    Ok((EmbeddingSeries::from_parts(steps, flags)?, registry))
}

/// Flat binary layout: 8-byte magic `TENCEMB1`, then `n`, `K`, `T` as
/// little-endian `u64`, then `T * n * K` little-endian `f64` in time, vertex,
/// dimension order.
pub fn write_embedding_binary(path: &Path, series: &EmbeddingSeries) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    out.write_all(BINARY_MAGIC).map_err(io)?;
    for v in [series.n(), series.k(), series.len()] {
        out.write_all(&(v as u64).to_le_bytes()).map_err(io)?;
    }
    for z in series.steps() {
        for &x in z.as_slice() {
            out.write_all(&x.to_le_bytes()).map_err(io)?;
        }
    }
    out.flush().map_err(io)
}

/// Reads [`write_embedding_binary`] output. Rows are flagged as normalized
/// when non-zero.
pub fn read_embedding_binary(path: &Path) -> Result<EmbeddingSeries> {
    let mut bytes = Vec::new();
    open(path)?.read_to_end(&mut bytes).map_err(|e| Error::io(path, e))?;
    if bytes.len() < 32 || &bytes[..8] != BINARY_MAGIC {
        return Err(Error::parse(path, 0, "not a binary embedding file"));
    }
    let word = |i: usize| u64::from_le_bytes(bytes[8 + 8 * i..16 + 8 * i].try_into().unwrap()) as usize;
    let (n, k, t) = (word(0), word(1), word(2));
    let expected = n.checked_mul(k).and_then(|x| x.checked_mul(t)).and_then(|x| x.checked_mul(8));
    if expected != Some(bytes.len() - 32) {
        return Err(Error::parse(path, 0, "binary embedding length does not match its header"));
    }
    let values: Vec<f64> = bytes[32..].chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    let mut steps = Vec::with_capacity(t);
    let mut flags = Vec::with_capacity(t);
    for chunk in values.chunks_exact((n * k).max(1)).take(t) {
        let z = RowMatrix::from_vec(n, k, chunk.to_vec());
        flags.push(z.row_iter().map(|r| r.iter().any(|&x| x != 0.0)).collect());
        steps.push(z);
    }
    EmbeddingSeries::from_parts(steps, flags)
}

/// Writes `t,vertex,dynamic,inactive`.
pub fn write_vertex_dynamics(path: &Path, vd: &VertexDynamics, registry: &VertexRegistry) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(out, "t,vertex,dynamic,inactive").map_err(io)?;
    for t in 0..vd.len() {
        for (i, (&x, &inactive)) in vd.step(t).iter().zip(vd.inactive(t)).enumerate() {
            writeln!(out, "{},{},{},{}", t + 1, csv_field(registry.external_id(i as u32)), fmt_f64(x), inactive as u8)
                .map_err(io)?;
        }
    }
    out.flush().map_err(io)
}

/// Writes `t,community,dynamic`; empty communities are written as `NA`.
pub fn write_community_dynamics(path: &Path, community: &[Vec<Option<f64>>]) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(out, "t,community,dynamic").map_err(io)?;
    for (t, row) in community.iter().enumerate() {
        for (c, value) in row.iter().enumerate() {
            let v = value.map_or_else(|| "NA".to_owned(), fmt_f64);
            writeln!(out, "{},{},{v}", t + 1, c + 1).map_err(io)?;
        }
    }
    out.flush().map_err(io)
}

/// Writes `t,dynamic`.
pub fn write_graph_dynamics(path: &Path, graph: &[f64]) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(out, "t,dynamic").map_err(io)?;
    for (t, &x) in graph.iter().enumerate() {
        writeln!(out, "{},{}", t + 1, fmt_f64(x)).map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Writes `bin_lo,bin_hi,count`.
pub fn write_histogram(path: &Path, bin_edges: &[f64], counts: &[usize]) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(out, "bin_lo,bin_hi,count").map_err(io)?;
    for (w, count) in bin_edges.windows(2).zip(counts) {
        writeln!(out, "{},{},{count}", fmt_f64(w[0]), fmt_f64(w[1])).map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Writes threshold fractions, one row per time step.
pub fn write_thresholds(path: &Path, summaries: &[ThresholdSummary]) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(out, "t,outlier_threshold,outlier_count,outlier_fraction,inlier_threshold,inlier_count,inlier_fraction")
        .map_err(io)?;
    for s in summaries {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.time + 1,
            fmt_f64(s.outlier_threshold),
            s.outliers.len(),
            fmt_f64(s.outlier_fraction),
            fmt_f64(s.inlier_threshold),
            s.inliers.len(),
            fmt_f64(s.inlier_fraction)
        )
        .map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Writes `rank,vertex,value` for a descending ranking.
pub fn write_ranking(path: &Path, ranking: &[u32], values: &[f64], registry: &VertexRegistry) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(out, "rank,vertex,value").map_err(io)?;
    for (r, &v) in ranking.iter().enumerate() {
        writeln!(out, "{},{},{}", r + 1, csv_field(registry.external_id(v)), fmt_f64(values[v as usize])).map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Writes a one-column `vertex` list.
pub fn write_vertex_list(path: &Path, vertices: &[u32], registry: &VertexRegistry) -> Result<()> {
    let mut out = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(out, "vertex").map_err(io)?;
    for &v in vertices {
        writeln!(out, "{}", csv_field(registry.external_id(v))).map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Reads the tokens of a one-column vertex list with a header row.
pub fn read_vertex_tokens(path: &Path) -> Result<Vec<(String, u64)>> {
    let mut out = Vec::new();
    for record in records(path, true)?.into_records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        out.push((record.get(0).unwrap_or("").to_owned(), line));
    }
    Ok(out)
}

/// Reads a vertex list written by [`write_vertex_list`], resolving tokens.
pub fn read_vertex_list(path: &Path, registry: &VertexRegistry) -> Result<Vec<u32>> {
    read_vertex_tokens(path)?
        .into_iter()
        .map(|(token, line)| {
            registry.lookup(&token).ok_or_else(|| Error::parse(path, line, format!("unknown vertex `{token}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::temporal_encoder_embedding;
    use proptest::prelude::*;
    use std::fs;

    fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn loads_single_timed_file_with_comments_and_tabs() {
        let dir = tempfile::tempdir().unwrap();
        let edges = write(dir.path(), "e.tsv", "# comment\na\tb\t3\t1\nb\tc\t1.5\t2\n\na\tc\t2\t2\n");
        let labels = write(dir.path(), "l.csv", "vertex,community\na,1\nb,2\n");
        let g = load_temporal_graph(&[edges], &[labels], LoadOptions::default()).unwrap();
        assert_eq!(g.graph.len(), 2);
        assert_eq!(g.registry.tokens(), &["a", "b", "c"]);
        assert_eq!(g.graph.step(0), &[Edge::new(0, 1, 3.0)]);
        assert_eq!(g.graph.step(1), &[Edge::new(1, 2, 1.5), Edge::new(0, 2, 2.0)]);
        assert_eq!(g.labels[0].labels(), &[1, 2, 0]);
        assert_eq!(g.labels[0].k(), 2);
    }

    #[test]
    fn loads_one_file_per_step() {
        let dir = tempfile::tempdir().unwrap();
        let e1 = write(dir.path(), "1.csv", "src,dst,weight\nx,y,1\n");
        let e2 = write(dir.path(), "2.csv", "y,z,2\n");
        let labels = write(dir.path(), "l.csv", "x,1\ny,1\nz,3\n");
        let g = load_temporal_graph(&[e1, e2], &[labels], LoadOptions { k: Some(4), ..Default::default() }).unwrap();
        assert_eq!(g.graph.len(), 2);
        assert_eq!(g.labels[0].k(), 4);
        assert_eq!(g.labels[0].class_counts(), &[2, 0, 1, 0]);
    }

    #[test]
    fn errors_carry_file_and_line() {
        let dir = tempfile::tempdir().unwrap();
        let labels = write(dir.path(), "l.csv", "a,1\n");
        let bad = write(dir.path(), "bad.csv", "# header\na,b,1\na,b,-1\n");
        let err = load_temporal_graph(&[bad.clone()], &[labels.clone()], LoadOptions::default()).unwrap_err();
        match err {
            Error::Parse { path, line, message } => {
                assert_eq!(path, bad);
                assert_eq!(line, 3);
                assert!(message.contains("non-negative"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let nan = write(dir.path(), "nan.csv", "a,b,x\n");
        assert!(matches!(load_temporal_graph(&[nan], &[labels.clone()], LoadOptions::default()), Err(Error::Parse { line: 1, .. })));
        let mixed = write(dir.path(), "mixed.csv", "a,b,1,1\na,b,1\n");
        assert!(load_temporal_graph(&[mixed], &[labels.clone()], LoadOptions::default()).is_err());
        let bad_label = write(dir.path(), "bl.csv", "a,3\n");
        let edges = write(dir.path(), "ok.csv", "a,b,1\n");
        let err = load_temporal_graph(&[edges], &[bad_label], LoadOptions { k: Some(2), ..Default::default() }).unwrap_err();
        assert!(matches!(err, Error::InFile { .. }));
    }

    #[test]
    fn embedding_text_and_binary_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let registry = VertexRegistry::from_tokens(["a", "b,c", "d"]);
        let g = TemporalGraph::new(3, vec![vec![Edge::new(0, 1, 0.1)], vec![Edge::new(1, 2, 7.0)]], true).unwrap();
        let labels = LabelVector::new(vec![1, 2, 2], 2).unwrap();
        let series = temporal_encoder_embedding(&g, &labels).unwrap();

        let text = dir.path().join("emb.csv");
        write_embedding_csv(&text, &series, &registry).unwrap();
        let (back, reg) = read_embedding_csv(&text).unwrap();
        assert_eq!(back, series);
        assert_eq!(reg, registry);

        let bin = dir.path().join("emb.bin");
        write_embedding_binary(&bin, &series).unwrap();
        assert_eq!(read_embedding_binary(&bin).unwrap(), series);
        assert_eq!(fs::metadata(&bin).unwrap().len(), 32 + 8 * 2 * 3 * 2);
    }

    #[test]
    fn vertex_list_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let registry = VertexRegistry::from_tokens(["a", "b", "c"]);
        let p = dir.path().join("v.csv");
        write_vertex_list(&p, &[2, 0], &registry).unwrap();
        assert_eq!(read_vertex_list(&p, &registry).unwrap(), vec![2, 0]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn edgelist_round_trip_is_bit_exact(
            raw in proptest::collection::vec((0u32..20, 0u32..20, 0.0f64..1e9, 0usize..3), 1..80)
        ) {
            let dir = tempfile::tempdir().unwrap();
            let registry = VertexRegistry::with_numeric_ids(20);
            let mut steps = vec![Vec::new(); 3];
            for (u, v, w, t) in raw {
                steps[t].push(Edge::new(u, v, w));
            }
            let g = TemporalGraph::new(20, steps, true).unwrap();
            let path = dir.path().join("g.csv");
            write_edgelist(&path, &g, &registry).unwrap();
            let labels = dir.path().join("l.csv");
            let mut body = String::new();
            for i in 0..20 {
                body.push_str(&format!("{i},1\n"));
            }
            fs::write(&labels, body).unwrap();
            let back = load_temporal_graph(&[path], &[labels], LoadOptions::default()).unwrap();
            // steps after the last non-empty one are not representable in a timed file
            let last = g.steps().iter().rposition(|s| !s.is_empty()).unwrap();
            prop_assert_eq!(back.graph.steps(), &g.steps()[..=last]);
            for (a, b) in back.graph.steps().iter().flatten().zip(g.steps().iter().flatten()) {
                prop_assert_eq!(a.weight.to_bits(), b.weight.to_bits());
            }
        }
    }
}
