//! Vertex registry, weighted edgelists over a shared vertex set, and label vectors.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Bijective mapping between external vertex tokens and dense internal indices.
///
/// Indices are handed out in first-registration order, so every value in
/// `0..len()` belongs to exactly one token.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexRegistry {
    index: HashMap<String, u32>,
    tokens: Vec<String>,
}

impl VertexRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a registry from a token sequence. Repeated tokens keep the index
    /// they were first given.
    pub fn from_tokens<I, S>(tokens: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut registry = Self::new();
        for token in tokens {
            registry.register(token.as_ref());
        }
        registry
    }

    /// Registry whose external ids are the decimal strings `"0".."n-1"`.
    pub fn with_numeric_ids(n: usize) -> Self {
        Self::from_tokens((0..n).map(|i| i.to_string()))
    }

    pub fn register(&mut self, token: &str) -> u32 {
        if let Some(&idx) = self.index.get(token) {
            return idx;
        }
        let idx = u32::try_from(self.tokens.len()).expect("vertex count exceeds u32 range");
        self.index.insert(token.to_owned(), idx);
        self.tokens.push(token.to_owned());
        idx
    }

    pub fn lookup(&self, token: &str) -> Option<u32> {
        self.index.get(token).copied()
    }

    pub fn external_id(&self, index: u32) -> &str {
        &self.tokens[index as usize]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// A weighted edge between internal vertex indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: u32,
    pub target: u32,
    pub weight: f64,
}

impl Edge {
    pub fn new(source: u32, target: u32, weight: f64) -> Self {
        Edge { source, target, weight }
    }
}

/// Options applied while turning raw rows into edges.
#[derive(Debug, Clone, Copy, Default)]
pub struct IngestOptions {
    /// Accept negative weights. The `[0, 1]` range of the dynamics no longer
    /// holds when this is set.
    pub allow_negative: bool,
}

/// Resolves `(src, dst, weight)` rows against `registry`, preserving row order.
///
/// Row numbers in errors are 1-based positions in `rows`.
pub fn ingest_edgelist<I, S>(rows: I, registry: &VertexRegistry, opts: IngestOptions) -> Result<Vec<Edge>>
where
    I: IntoIterator<Item = (S, S, f64)>,
    S: AsRef<str>,
{
    let rows = rows.into_iter();
    let mut edges = Vec::with_capacity(rows.size_hint().0);
    for (i, (src, dst, weight)) in rows.enumerate() {
        let row = i + 1;
        let resolve = |token: &str| {
            registry
                .lookup(token)
                .ok_or_else(|| Error::UnknownVertex { token: token.to_owned(), row })
        };
        let source = resolve(src.as_ref())?;
        let target = resolve(dst.as_ref())?;
        if !weight.is_finite() {
            return Err(Error::NonFiniteWeight { row });
        }
        if weight < 0.0 && !opts.allow_negative {
            return Err(Error::NegativeWeight { row, weight });
        }
        edges.push(Edge { source, target, weight });
    }
    Ok(edges)
}

/// Per-time weighted edgelists sharing one vertex set of size `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalGraph {
    n: usize,
    steps: Vec<Vec<Edge>>,
    undirected: bool,
}

impl TemporalGraph {
    pub fn new(n: usize, steps: Vec<Vec<Edge>>, undirected: bool) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidParameter("a temporal graph needs at least one time step".into()));
        }
        for edges in &steps {
            validate_endpoints(edges, n)?;
        }
        Ok(TemporalGraph { n, steps, undirected })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of time steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn set_undirected(&mut self, undirected: bool) {
        self.undirected = undirected;
    }

    pub fn step(&self, t: usize) -> &[Edge] {
        &self.steps[t]
    }

    pub fn steps(&self) -> &[Vec<Edge>] {
        &self.steps
    }

    pub(crate) fn step_mut(&mut self, t: usize) -> &mut Vec<Edge> {
        &mut self.steps[t]
    }

    pub fn total_edges(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }

    pub fn into_steps(self) -> Vec<Vec<Edge>> {
        self.steps
    }
}

pub(crate) fn validate_endpoints(edges: &[Edge], n: usize) -> Result<()> {
    for (i, e) in edges.iter().enumerate() {
        for index in [e.source, e.target] {
            if index as usize >= n {
                return Err(Error::EndpointOutOfRange { row: i + 1, index, n });
            }
        }
    }
    Ok(())
}

/// Community assignment per vertex: `0` is unknown, `1..=k` are communities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelVector {
    labels: Vec<u32>,
    k: usize,
    class_counts: Vec<usize>,
}

impl LabelVector {
    pub fn new(labels: Vec<u32>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("number of communities must be at least 1".into()));
        }
        let mut class_counts = vec![0usize; k];
        for (i, &label) in labels.iter().enumerate() {
            match label as usize {
                0 => {}
                c if c <= k => class_counts[c - 1] += 1,
                _ => {
                    return Err(Error::LabelOutOfRange { token: i.to_string(), community: label, k });
                }
            }
        }
        Ok(LabelVector { labels, k, class_counts })
    }

    /// Builds a label vector with `k` set to the largest label present.
    pub fn infer_k(labels: Vec<u32>) -> Result<Self> {
        let k = labels.iter().copied().max().unwrap_or(0) as usize;
        Self::new(labels, k.max(1))
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> u32 {
        self.labels[i]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// `class_counts()[c]` is the size of community `c + 1`.
    pub fn class_counts(&self) -> &[usize] {
        &self.class_counts
    }

    pub fn class_count(&self, community: u32) -> usize {
        self.class_counts[community as usize - 1]
    }

    pub fn unknown_count(&self) -> usize {
        self.labels.len() - self.class_counts.iter().sum::<usize>()
    }

    /// Indices of vertices in `community`.
    pub fn members(&self, community: u32) -> impl Iterator<Item = usize> + '_ {
        self.labels.iter().enumerate().filter(move |(_, &l)| l == community).map(|(i, _)| i)
    }
}

/// Builds a label vector from `(vertex token, community)` rows. Vertices with
/// no row get label 0.
pub fn load_labels<I, S>(rows: I, registry: &VertexRegistry, k: usize) -> Result<LabelVector>
where
    I: IntoIterator<Item = (S, u32)>,
    S: AsRef<str>,
{
    let mut labels = vec![0u32; registry.len()];
    for (i, (token, community)) in rows.into_iter().enumerate() {
        let token = token.as_ref();
        let idx = registry
            .lookup(token)
            .ok_or_else(|| Error::UnknownVertex { token: token.to_owned(), row: i + 1 })?;
        if community == 0 || community as usize > k {
            return Err(Error::LabelOutOfRange { token: token.to_owned(), community, k });
        }
        let slot = &mut labels[idx as usize];
        if *slot != 0 && *slot != community {
            return Err(Error::ConflictingLabel { token: token.to_owned(), first: *slot, second: community });
        }
        *slot = community;
    }
    LabelVector::new(labels, k)
}
