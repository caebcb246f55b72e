//! Biclique covers of bipartite slices.
//!
//! Two edges of a bipartite graph may share a biclique unless they are
//! vertex-disjoint and at least one of the two "cross" edges is missing (the
//! four endpoints then induce a P4 or 2K2). Such pairs are joined in a
//! [`ConflictGraph`]; any proper vertex coloring of it partitions the edges
//! into classes that each span a complete bipartite subgraph. The number of
//! colors is therefore the size of the resulting cover, and the chromatic
//! number equals the bipartite dimension.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::BipartiteSlice;

/// Symmetric, irreflexive "must receive different colors" relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    n: usize,
    matrix: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut matrix = vec![false; n * n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidConflictGraph(format!(
                    "vertex out of range in ({a}, {b})"
                )));
            }
            if a == b {
                return Err(Error::InvalidConflictGraph(format!("self conflict at {a}")));
            }
            matrix[a * n + b] = true;
            matrix[b * n + a] = true;
        }
        Ok(Self::from_matrix(n, matrix))
    }

    fn from_matrix(n: usize, matrix: Vec<bool>) -> Self {
        let neighbors = (0..n)
            .map(|v| (0..n).filter(|&w| matrix[v * n + w]).collect())
            .collect();
        ConflictGraph { n, matrix, neighbors }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn conflicts(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.n + b]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Conflicting pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| {
                self.neighbors[a]
                    .iter()
                    .filter(move |&&b| b > a)
                    .map(move |&b| (a, b))
            })
            .collect()
    }
}

/// Whether slice edges `e` and `f` must be colored differently.
pub fn edges_conflict(slice: &BipartiteSlice, e: usize, f: usize) -> bool {
    let (u, l) = slice.edges()[e];
    let (u2, l2) = slice.edges()[f];
    u != u2 && l != l2 && !(slice.has_edge(u, l2) && slice.has_edge(u2, l))
}

/// One conflict-graph vertex per slice edge (same index). O(|E|^2).
pub fn build_conflict_graph(slice: &BipartiteSlice) -> ConflictGraph {
    let n = slice.edge_count();
    let mut matrix = vec![false; n * n];
    for e in 0..n {
        for f in e + 1..n {
            if edges_conflict(slice, e, f) {
                matrix[e * n + f] = true;
                matrix[f * n + e] = true;
            }
        }
    }
    ConflictGraph::from_matrix(n, matrix)
}

/// Colors `1..=k` indexed by slice edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub colors: Vec<usize>,
    pub k: usize,
}

impl EdgeColoring {
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let k = colors.iter().copied().max().unwrap_or(0);
        EdgeColoring { colors, k }
    }

    /// The first conflicting pair sharing a color, if any.
    pub fn find_violation(&self, cg: &ConflictGraph) -> Option<(usize, usize)> {
        cg.edges()
            .into_iter()
            .find(|&(a, b)| self.colors[a] == self.colors[b])
    }

    pub fn is_proper(&self, cg: &ConflictGraph) -> bool {
        self.colors.len() == cg.len()
            && self.colors.iter().all(|&c| c >= 1 && c <= self.k)
            && self.find_violation(cg).is_none()
    }

    /// Edge indices of color `c` (1-based), ascending.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.colors.len()).filter(|&e| self.colors[e] == c).collect()
    }
}

fn smallest_free_color(used: &[bool]) -> usize {
    // used[c] for c in 1..; index 0 unused
    (1..used.len()).find(|&c| !used[c]).unwrap_or(used.len())
}

/// First-fit coloring in the given vertex order.
pub fn color_greedy(cg: &ConflictGraph, order: &[usize]) -> Result<EdgeColoring> {
    let n = cg.len();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::MalformedOrder { n });
    }
    for &v in order {
        if v >= n || seen[v] {
            return Err(Error::MalformedOrder { n });
        }
        seen[v] = true;
    }

    let mut colors = vec![0usize; n];
    let mut used = vec![false; n + 2];
    for &v in order {
        used.iter_mut().for_each(|u| *u = false);
        for &w in cg.neighbors(v) {
            used[colors[w]] = true;
        }
        colors[v] = smallest_free_color(&used);
    }
    Ok(EdgeColoring::from_colors(colors))
}

/// DSATUR with the default tie-break order (lowest index first).
pub fn color_dsatur(cg: &ConflictGraph) -> EdgeColoring {
    let order: Vec<usize> = (0..cg.len()).collect();
    color_dsatur_ordered(cg, &order)
}

/// DSATUR: repeatedly color the uncolored vertex with the most distinct
/// neighbor colors, ties broken by larger degree and then by earlier position
/// in `order` (a permutation of the vertices).
pub fn color_dsatur_ordered(cg: &ConflictGraph, order: &[usize]) -> EdgeColoring {
    let n = cg.len();
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut colors = vec![0usize; n];
    // neighbor_colors[v][c] = number of neighbors of v that have color c
    let mut neighbor_colors: Vec<Vec<u32>> = vec![vec![0; n + 2]; n];
    let mut saturation = vec![0usize; n];

    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == 0)
            .max_by(|&a, &b| {
                saturation[a]
                    .cmp(&saturation[b])
                    .then(cg.degree(a).cmp(&cg.degree(b)))
                    .then(rank[b].cmp(&rank[a]))
            })
            .expect("uncolored vertex remains");
        let c = (1..)
            .find(|&c| neighbor_colors[v][c] == 0)
            .expect("a free color exists");
        colors[v] = c;
        for &w in cg.neighbors(v) {
            if neighbor_colors[w][c] == 0 {
                saturation[w] += 1;
            }
            neighbor_colors[w][c] += 1;
        }
    }
    EdgeColoring::from_colors(colors)
}

/// Recursive Largest First.
///
/// Each color class starts from the uncolored vertex with the most uncolored
/// neighbors. The class then grows by the candidate (uncolored, not adjacent
/// to the class) with the most neighbors among the uncolored vertices already
/// excluded from the class. Ties go to the lowest index.
pub fn color_rlf(cg: &ConflictGraph) -> EdgeColoring {
    let n = cg.len();
    let mut colors = vec![0usize; n];
    let mut remaining = n;
    let mut color = 0;

    // 0 = candidate, 1 = excluded (adjacent to the class), 2 = in class or colored
    let mut state = vec![0u8; n];
    let mut excluded_nbrs = vec![0usize; n];
    let mut residual_degree: Vec<usize> = (0..n).map(|v| cg.degree(v)).collect();

    while remaining > 0 {
        color += 1;
        for v in 0..n {
            state[v] = if colors[v] == 0 { 0 } else { 2 };
            excluded_nbrs[v] = 0;
        }

        let seed = (0..n)
            .filter(|&v| colors[v] == 0)
            .max_by(|&a, &b| residual_degree[a].cmp(&residual_degree[b]).then(b.cmp(&a)))
            .expect("uncolored vertex remains");

        let mut next = Some(seed);
        while let Some(v) = next {
            colors[v] = color;
            state[v] = 2;
            remaining -= 1;
            for &w in cg.neighbors(v) {
                if colors[w] == 0 {
                    residual_degree[w] -= 1;
                }
                if state[w] == 0 {
                    state[w] = 1;
                    for &x in cg.neighbors(w) {
                        excluded_nbrs[x] += 1;
                    }
                }
            }
            next = (0..n)
                .filter(|&v| state[v] == 0)
                .max_by(|&a, &b| excluded_nbrs[a].cmp(&excluded_nbrs[b]).then(b.cmp(&a)));
        }
    }
    EdgeColoring::from_colors(colors)
}

/// A complete bipartite subgraph of a slice, as sorted node indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Biclique {
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
}

impl Biclique {
    pub fn is_complete_in(&self, slice: &BipartiteSlice) -> bool {
        self.upper
            .iter()
            .all(|&u| self.lower.iter().all(|&l| slice.has_edge(u, l)))
    }

    pub fn contains_edge(&self, upper: usize, lower: usize) -> bool {
        self.upper.binary_search(&upper).is_ok() && self.lower.binary_search(&lower).is_ok()
    }

    pub fn is_single_edge(&self) -> bool {
        self.upper.len() == 1 && self.lower.len() == 1
    }
}

/// Bicliques covering every edge of a slice. `edge_class[e]` names the
/// biclique whose color class contains edge `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct BicliqueCover {
    pub bicliques: Vec<Biclique>,
    pub edge_class: Vec<usize>,
    pub slice: BipartiteSlice,
}

impl BicliqueCover {
    pub fn len(&self) -> usize {
        self.bicliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bicliques.is_empty()
    }

    /// Bicliques as node-name sets.
    pub fn named(&self) -> Vec<(Vec<String>, Vec<String>)> {
        self.bicliques
            .iter()
            .map(|b| {
                (
                    b.upper.iter().map(|&u| self.slice.upper()[u].clone()).collect(),
                    b.lower.iter().map(|&l| self.slice.lower()[l].clone()).collect(),
                )
            })
            .collect()
    }

    /// Every biclique complete and every slice edge inside some biclique.
    pub fn is_sound(&self) -> bool {
        self.bicliques.iter().all(|b| b.is_complete_in(&self.slice))
            && self
                .slice
                .edges()
                .iter()
                .all(|&(u, l)| self.bicliques.iter().any(|b| b.contains_edge(u, l)))
    }
}

/// Turn each color class into the biclique spanned by its endpoints.
pub fn extract_bicliques(slice: &BipartiteSlice, coloring: &EdgeColoring) -> Result<BicliqueCover> {
    if coloring.colors.len() != slice.edge_count() {
        return Err(Error::ColoringSizeMismatch {
            expected: slice.edge_count(),
            got: coloring.colors.len(),
        });
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); coloring.k];
    for (e, &c) in coloring.colors.iter().enumerate() {
        if c == 0 || c > coloring.k {
            return Err(Error::InvalidSlice(format!(
                "edge {e} has color {c} outside 1..={}",
                coloring.k
            )));
        }
        classes[c - 1].push(e);
    }

    for (ci, class) in classes.iter().enumerate() {
        for (i, &e) in class.iter().enumerate() {
            for &f in &class[i + 1..] {
                if edges_conflict(slice, e, f) {
                    return Err(Error::ImproperColoring(e, f, ci + 1));
                }
            }
        }
    }

    let mut bicliques = Vec::new();
    let mut edge_class = vec![0; slice.edge_count()];
    for class in classes.iter().filter(|c| !c.is_empty()) {
        let mut upper: Vec<usize> = class.iter().map(|&e| slice.edges()[e].0).collect();
        let mut lower: Vec<usize> = class.iter().map(|&e| slice.edges()[e].1).collect();
        upper.sort_unstable();
        upper.dedup();
        lower.sort_unstable();
        lower.dedup();
        for &u in &upper {
            for &l in &lower {
                if !slice.has_edge(u, l) {
                    return Err(Error::IncompleteBiclique {
                        color: bicliques.len() + 1,
                        upper: slice.upper()[u].clone(),
                        lower: slice.lower()[l].clone(),
                    });
                }
            }
        }
        for &e in class {
            edge_class[e] = bicliques.len();
        }
        bicliques.push(Biclique { upper, lower });
    }

    Ok(BicliqueCover {
        bicliques,
        edge_class,
        slice: slice.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColoringAlgorithm {
    #[default]
    Rlf,
    Dsatur,
    Greedy,
}

impl FromStr for ColoringAlgorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rlf" => Ok(Self::Rlf),
            "dsatur" => Ok(Self::Dsatur),
            "greedy" => Ok(Self::Greedy),
            other => Err(format!(
                "unknown coloring algorithm {other:?} (rlf, dsatur, greedy)"
            )),
        }
    }
}

impl fmt::Display for ColoringAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Rlf => "rlf",
            Self::Dsatur => "dsatur",
            Self::Greedy => "greedy",
        })
    }
}

/// Slice edges that lie in some K_{2,2}, i.e. form a vertex-disjoint pair
/// with another edge whose two cross edges both exist.
pub fn edges_in_four_cycles(slice: &BipartiteSlice) -> Vec<bool> {
    let edges = slice.edges();
    let mut flags = vec![false; edges.len()];
    for e in 0..edges.len() {
        if flags[e] {
            continue;
        }
        let (u, l) = edges[e];
        for f in 0..edges.len() {
            let (u2, l2) = edges[f];
            if u != u2 && l != l2 && slice.has_edge(u, l2) && slice.has_edge(u2, l) {
                flags[e] = true;
                flags[f] = true;
                break;
            }
        }
    }
    flags
}

/// Vertex consideration order with K_{2,2}-participating edges first.
pub fn priority_order(slice: &BipartiteSlice) -> Vec<usize> {
    let flags = edges_in_four_cycles(slice);
    let mut order: Vec<usize> = (0..slice.edge_count()).collect();
    order.sort_by_key(|&e| !flags[e]);
    order
}

/// Conflict graph, coloring, extraction.
///
/// `priority_pq` reorders the vertex consideration order for greedy and the
/// tie-break order for DSATUR so that edges belonging to a K_{2,2} come first;
/// RLF ignores it.
pub fn cover(
    slice: &BipartiteSlice,
    algorithm: ColoringAlgorithm,
    priority_pq: bool,
) -> Result<BicliqueCover> {
    let cg = build_conflict_graph(slice);
    let order: Vec<usize> = if priority_pq {
        priority_order(slice)
    } else {
        (0..cg.len()).collect()
    };
    let coloring = match algorithm {
        ColoringAlgorithm::Rlf => color_rlf(&cg),
        ColoringAlgorithm::Dsatur => color_dsatur_ordered(&cg, &order),
        ColoringAlgorithm::Greedy => color_greedy(&cg, &order)?,
    };
    extract_bicliques(slice, &coloring)
}
