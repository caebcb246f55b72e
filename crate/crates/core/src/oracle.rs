//! Exhaustive reference computations for small instances.
//!
//! These are deliberately independent of the heuristic code paths: the
//! minimum cover is found by searching over maximal bicliques, the chromatic
//! number by backtracking, and crossings by pairwise orientation tests.

use crate::cover::ConflictGraph;
use crate::curves::Point2;
use crate::error::{Error, Result};
use crate::graph::BipartiteSlice;

pub const MAX_COVER_EDGES: usize = 12;
pub const MAX_CHROMATIC_VERTICES: usize = 16;

/// Maximal bicliques of a slice as (upper mask, lower mask). Both layers
/// must have at most 64 nodes.
pub fn maximal_bicliques(slice: &BipartiteSlice) -> Vec<(u64, u64)> {
    let nu = slice.upper().len();
    let nl = slice.lower().len();
    assert!(
        nu <= 64 && nl <= 64,
        "maximal_bicliques supports at most 64 nodes per layer"
    );
    let nbr: Vec<u64> = (0..nu)
        .map(|u| {
            (0..nl)
                .filter(|&l| slice.has_edge(u, l))
                .fold(0, |m, l| m | 1 << l)
        })
        .collect();
    let active: Vec<usize> = (0..nu).filter(|&u| nbr[u] != 0).collect();

    let mut out = Vec::new();
    for subset in 1u64..(1 << active.len()) {
        let mut lower = u64::MAX >> (64 - nl.max(1));
        for (i, &u) in active.iter().enumerate() {
            if subset >> i & 1 == 1 {
                lower &= nbr[u];
            }
        }
        if lower == 0 {
            continue;
        }
        let upper = (0..nu)
            .filter(|&u| nbr[u] & lower == lower)
            .fold(0u64, |m, u| m | 1 << u);
        out.push((upper, lower));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Drop nodes without edges so that node masks stay small.
fn compact(slice: &BipartiteSlice) -> BipartiteSlice {
    let mut upper_map = vec![usize::MAX; slice.upper().len()];
    let mut lower_map = vec![usize::MAX; slice.lower().len()];
    let (mut nu, mut nl) = (0, 0);
    let edges = slice
        .edges()
        .iter()
        .map(|&(u, l)| {
            if upper_map[u] == usize::MAX {
                upper_map[u] = nu;
                nu += 1;
            }
            if lower_map[l] == usize::MAX {
                lower_map[l] = nl;
                nl += 1;
            }
            (upper_map[u], lower_map[l])
        })
        .collect();
    BipartiteSlice::with_sizes(nu, nl, edges).expect("sub-slice of a valid slice")
}

/// Minimum number of bicliques covering every edge (the bipartite dimension).
pub fn exact_min_biclique_cover(slice: &BipartiteSlice) -> Result<usize> {
    let m = slice.edge_count();
    if m > MAX_COVER_EDGES {
        return Err(Error::SizeGuard {
            what: "edges",
            got: m,
            limit: MAX_COVER_EDGES,
        });
    }
    if m == 0 {
        return Ok(0);
    }
    let slice = &compact(slice);
    let bicliques: Vec<u32> = maximal_bicliques(slice)
        .into_iter()
        .map(|(um, lm)| {
            slice
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, &(u, l))| um >> u & 1 == 1 && lm >> l & 1 == 1)
                .fold(0u32, |acc, (e, _)| acc | 1 << e)
        })
        .collect();
    let full: u32 = (1u32 << m) - 1;

    fn search(covered: u32, full: u32, budget: usize, sets: &[u32]) -> bool {
        if covered == full {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let first = (!covered & full).trailing_zeros();
        sets.iter()
            .filter(|&&s| s >> first & 1 == 1)
            .any(|&s| search(covered | s, full, budget - 1, sets))
    }

    Ok((1..=m)
        .find(|&k| search(0, full, k, &bicliques))
        .expect("single edges always cover"))
}

/// Exact chromatic number by backtracking with a greedy clique lower bound.
pub fn exact_chromatic_number(cg: &ConflictGraph) -> Result<usize> {
    let n = cg.len();
    if n > MAX_CHROMATIC_VERTICES {
        return Err(Error::SizeGuard {
            what: "vertices",
            got: n,
            limit: MAX_CHROMATIC_VERTICES,
        });
    }
    if n == 0 {
        return Ok(0);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(cg.degree(v)));

    let mut clique: Vec<usize> = Vec::new();
    for &v in &order {
        if clique.iter().all(|&w| cg.conflicts(v, w)) {
            clique.push(v);
        }
    }
    let lower_bound = clique.len().max(1);

    fn colorable(
        i: usize,
        k: usize,
        used: usize,
        order: &[usize],
        colors: &mut [usize],
        cg: &ConflictGraph,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        // colors are 1-based; a fresh color is only tried once (symmetry)
        for c in 1..=(used + 1).min(k) {
            if cg.neighbors(v).iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                if colorable(i + 1, k, used.max(c), order, colors, cg) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }

    let mut colors = vec![0usize; n];
    Ok((lower_bound..=n)
        .find(|&k| {
            colors.iter_mut().for_each(|c| *c = 0);
            colorable(0, k, 0, &order, &mut colors, cg)
        })
        .expect("n colors always suffice"))
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Whether two segments cross at a single interior point of both.
pub fn segments_cross(a: (Point2, Point2), b: (Point2, Point2)) -> bool {
    let d1 = orient(b.0, b.1, a.0);
    let d2 = orient(b.0, b.1, a.1);
    let d3 = orient(a.0, a.1, b.0);
    let d4 = orient(a.0, a.1, b.1);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Number of properly crossing segment pairs, O(m^2).
pub fn count_segment_crossings(segments: &[(Point2, Point2)]) -> usize {
    let mut count = 0;
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            if segments_cross(segments[i], segments[j]) {
                count += 1;
            }
        }
    }
    count
}

/// Straight-line two-layer drawing of a slice: upper nodes at y = 0 and lower
/// nodes at y = 1, x given by position in the layer order.
pub fn straight_slice_drawing(slice: &BipartiteSlice) -> Vec<(Point2, Point2)> {
    slice
        .edges()
        .iter()
        .map(|&(u, l)| (Point2::new(u as f64, 0.0), Point2::new(l as f64, 1.0)))
        .collect()
}
