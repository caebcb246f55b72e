//! Layered graph model, validation and per-layer-pair slicing.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// An undirected graph whose nodes are partitioned into ordered layers.
///
/// Edges are stored as given; [`LayeredGraph::validate`] checks that they only
/// join adjacent layers and that there are no loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LayeredGraph {
    pub layers: Vec<Vec<String>>,
    pub edges: Vec<(String, String)>,
    pub node_x: BTreeMap<String, f64>,
    pub node_labels: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateNode { node: String },
    UnknownNode { node: String },
    SelfLoop { node: String },
    ParallelEdge { a: String, b: String },
    NonAdjacentLayers { a: String, b: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNode { node } => write!(f, "duplicate node {node}"),
            Violation::UnknownNode { node } => write!(f, "unknown node {node}"),
            Violation::SelfLoop { node } => write!(f, "self loop at {node}"),
            Violation::ParallelEdge { a, b } => write!(f, "parallel edge {a}-{b}"),
            Violation::NonAdjacentLayers { a, b } => {
                write!(f, "non-adjacent-layer edge {a}-{b}")
            }
        }
    }
}

/// Every invariant violation found in a graph. Empty means valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl LayeredGraph {
    pub fn new(layers: Vec<Vec<String>>, edges: Vec<(String, String)>) -> Self {
        LayeredGraph {
            layers,
            edges,
            ..Default::default()
        }
    }

    /// Convenience constructor from string slices, mostly for tests.
    pub fn from_strs(layers: &[&[&str]], edges: &[(&str, &str)]) -> Self {
        Self::new(
            layers
                .iter()
                .map(|l| l.iter().map(|s| s.to_string()).collect())
                .collect(),
            edges
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        )
    }

    pub fn node_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// Map from node id to (layer, index within layer). First occurrence wins.
    pub fn node_index(&self) -> HashMap<&str, (usize, usize)> {
        let mut index = HashMap::with_capacity(self.node_count());
        for (li, layer) in self.layers.iter().enumerate() {
            for (pos, node) in layer.iter().enumerate() {
                index.entry(node.as_str()).or_insert((li, pos));
            }
        }
        index
    }

    pub fn label(&self, node: &str) -> String {
        self.node_labels
            .get(node)
            .cloned()
            .unwrap_or_else(|| node.to_string())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut seen = HashSet::new();
        for node in self.layers.iter().flatten() {
            if !seen.insert(node.as_str()) {
                violations.push(Violation::DuplicateNode { node: node.clone() });
            }
        }

        let index = self.node_index();
        let mut edge_set = HashSet::new();
        for (a, b) in &self.edges {
            let mut known = true;
            for n in [a, b] {
                if !index.contains_key(n.as_str()) {
                    violations.push(Violation::UnknownNode { node: n.clone() });
                    known = false;
                }
            }
            if a == b {
                violations.push(Violation::SelfLoop { node: a.clone() });
                continue;
            }
            let key = if a < b { (a, b) } else { (b, a) };
            if !edge_set.insert(key) {
                violations.push(Violation::ParallelEdge {
                    a: a.clone(),
                    b: b.clone(),
                });
            }
            if known {
                let la = index[a.as_str()].0;
                let lb = index[b.as_str()].0;
                if la.abs_diff(lb) != 1 {
                    violations.push(Violation::NonAdjacentLayers {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn check(&self) -> Result<()> {
        let report = self.validate();
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report))
        }
    }

    pub fn pair_count(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    /// The bipartite slice between layers `pair_index` and `pair_index + 1`.
    pub fn slice(&self, pair_index: usize) -> Result<BipartiteSlice> {
        if pair_index >= self.pair_count() {
            return Err(Error::PairOutOfRange {
                index: pair_index,
                layers: self.layers.len(),
            });
        }
        self.check()?;
        let index = self.node_index();
        let mut edges = Vec::new();
        for (a, b) in &self.edges {
            let (la, pa) = index[a.as_str()];
            let (lb, pb) = index[b.as_str()];
            if la == pair_index && lb == pair_index + 1 {
                edges.push((pa, pb));
            } else if lb == pair_index && la == pair_index + 1 {
                edges.push((pb, pa));
            }
        }
        BipartiteSlice::new(
            self.layers[pair_index].clone(),
            self.layers[pair_index + 1].clone(),
            edges,
        )
    }

    /// Default x-coordinates: uniform spacing within each layer, every layer
    /// centred on x = 0. Explicit `node_x` entries take precedence.
    pub fn coordinates(&self, spacing: f64) -> BTreeMap<String, f64> {
        let mut xs = crate::layout::orderings_to_coordinates(&self.layers, spacing);
        for (node, x) in &self.node_x {
            xs.insert(node.clone(), *x);
        }
        xs
    }
}

/// One adjacent layer pair: upper nodes, lower nodes, and the edges between
/// them as `(upper index, lower index)` pairs. Edge indices are fixed at
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteSlice {
    upper: Vec<String>,
    lower: Vec<String>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<bool>,
}

impl BipartiteSlice {
    pub fn new(upper: Vec<String>, lower: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![false; upper.len() * lower.len()];
        for &(u, l) in &edges {
            if u >= upper.len() || l >= lower.len() {
                return Err(Error::InvalidSlice(format!("edge ({u}, {l}) out of range")));
            }
            let cell = &mut adjacency[u * lower.len() + l];
            if *cell {
                return Err(Error::InvalidSlice(format!("duplicate edge ({u}, {l})")));
            }
            *cell = true;
        }
        Ok(BipartiteSlice {
            upper,
            lower,
            edges,
            adjacency,
        })
    }

    /// Slice with synthetic names `u1..` / `l1..`, edges given by 0-based index.
    pub fn with_sizes(n_upper: usize, n_lower: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(
            (1..=n_upper).map(|i| format!("u{i}")).collect(),
            (1..=n_lower).map(|i| format!("l{i}")).collect(),
            edges,
        )
    }

    pub fn upper(&self) -> &[String] {
        &self.upper
    }

    pub fn lower(&self) -> &[String] {
        &self.lower
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn has_edge(&self, upper: usize, lower: usize) -> bool {
        self.adjacency[upper * self.lower.len() + lower]
    }

    pub fn edge_names(&self, e: usize) -> (&str, &str) {
        let (u, l) = self.edges[e];
        (&self.upper[u], &self.lower[l])
    }
}
