//! Tree-center placement.
//!
//! y grows downward throughout: the upper layer of a slice has the smaller y.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::cover::BicliqueCover;
use crate::curves::Point2;
use crate::error::{Error, Result};
use crate::graph::{BipartiteSlice, LayeredGraph};
use crate::oracle::count_segment_crossings;

/// Geometry of one slice level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutConfig {
    pub y_upper: f64,
    pub y_lower: f64,
    /// Tree-center level; halfway between the layers when unset.
    pub y_center: Option<f64>,
    pub min_separation: f64,
    pub delta_y: f64,
    pub node_spacing: f64,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            y_upper: 0.0,
            y_lower: 120.0,
            y_center: None,
            min_separation: 30.0,
            delta_y: 42.0,
            node_spacing: 40.0,
        }
    }
}

impl LayoutConfig {
    pub fn center_y(&self) -> f64 {
        self.y_center.unwrap_or(0.5 * (self.y_upper + self.y_lower))
    }

    pub fn validate(&self) -> Result<()> {
        let yc = self.center_y();
        if !(self.y_upper < yc && yc < self.y_lower) {
            return Err(Error::InvalidConfig(format!(
                "levels must satisfy y_upper < y_center < y_lower (got {}, {}, {})",
                self.y_upper, yc, self.y_lower
            )));
        }
        for (name, v) in [
            ("min_separation", self.min_separation),
            ("delta_y", self.delta_y),
            ("node_spacing", self.node_spacing),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Tree-center x-coordinates, one per biclique in cover order.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterPlacement {
    pub center_x: Vec<f64>,
    pub center_y: f64,
}

impl CenterPlacement {
    pub fn min_gap(&self) -> Option<f64> {
        let mut xs = self.center_x.clone();
        xs.sort_by(f64::total_cmp);
        xs.windows(2).map(|w| w[1] - w[0]).reduce(f64::min)
    }
}

fn member_xs(cover: &BicliqueCover, i: usize, node_x: &impl Fn(&str) -> Option<f64>) -> Result<Vec<f64>> {
    let b = &cover.bicliques[i];
    let slice = &cover.slice;
    b.upper
        .iter()
        .map(|&u| &slice.upper()[u])
        .chain(b.lower.iter().map(|&l| &slice.lower()[l]))
        .map(|n| node_x(n).ok_or_else(|| Error::MissingCoordinate(n.clone())))
        .collect()
}

/// Mean x of every biclique's member nodes (upper and lower together).
pub fn barycenters(cover: &BicliqueCover, node_x: &impl Fn(&str) -> Option<f64>) -> Result<Vec<f64>> {
    (0..cover.len())
        .map(|i| {
            let xs = member_xs(cover, i, node_x)?;
            Ok(xs.iter().sum::<f64>() / xs.len() as f64)
        })
        .collect()
}

/// Barycenter placement with minimum separation.
///
/// Centers are sorted by barycenter; the middle one (1-based index k/2) keeps
/// its barycenter, then centers to its left are placed in turn at
/// `min(barycenter, previous - delta)` and those to its right at
/// `max(barycenter, previous + delta)`.
pub fn place_centers_barycenter(
    cover: &BicliqueCover,
    node_x: &impl Fn(&str) -> Option<f64>,
    cfg: &LayoutConfig,
) -> Result<CenterPlacement> {
    let bary = barycenters(cover, node_x)?;
    Ok(CenterPlacement {
        center_x: separate_sorted(&bary, cfg.min_separation),
        center_y: cfg.center_y(),
    })
}

/// The separation sweep on raw positions; output is in input order.
pub fn separate_sorted(bary: &[f64], delta: f64) -> Vec<f64> {
    let k = bary.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| bary[a].total_cmp(&bary[b]).then(a.cmp(&b)));

    let mut placed = vec![0.0; k];
    if k == 0 {
        return placed;
    }
    let start = (k / 2).max(1) - 1;
    placed[order[start]] = bary[order[start]];
    let mut prev = bary[order[start]];
    // Comparing gaps rather than `prev -/+ delta` keeps centers that are
    // exactly delta apart at their barycenters despite rounding.
    for &i in order[..start].iter().rev() {
        prev = if prev - bary[i] >= delta {
            bary[i]
        } else {
            prev - delta
        };
        placed[i] = prev;
    }
    prev = bary[order[start]];
    for &i in &order[start + 1..] {
        prev = if bary[i] - prev >= delta {
            bary[i]
        } else {
            prev + delta
        };
        placed[i] = prev;
    }
    placed
}

/// Bicliques whose center lies outside the x-range of its member nodes.
/// Reported only; neither placement strategy enforces this.
pub fn range_violations(
    cover: &BicliqueCover,
    node_x: &impl Fn(&str) -> Option<f64>,
    placement: &CenterPlacement,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, &x) in placement.center_x.iter().enumerate() {
        let xs = member_xs(cover, i, node_x)?;
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if x < lo - 1e-9 || x > hi + 1e-9 {
            out.push(i);
        }
    }
    Ok(out)
}

/// Names `{base}1..{base}count`, prefixed with underscores until none
/// collides with `taken`.
pub fn middle_names(base: &str, count: usize, taken: &HashSet<&str>) -> Vec<String> {
    let mut prefix = base.to_string();
    loop {
        let names: Vec<String> = (1..=count).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|n| !taken.contains(n.as_str())) {
            return names;
        }
        prefix.insert(0, '_');
    }
}

/// Three-layer graph U, M, L with one middle node per biclique joined to all
/// of its members.
pub fn build_three_layer(slice: &BipartiteSlice, cover: &BicliqueCover) -> LayeredGraph {
    let taken: HashSet<&str> = slice
        .upper()
        .iter()
        .chain(slice.lower())
        .map(String::as_str)
        .collect();
    let middle = middle_names("m", cover.len(), &taken);
    let mut edges = Vec::new();
    for (b, m) in cover.bicliques.iter().zip(&middle) {
        for &u in &b.upper {
            edges.push((slice.upper()[u].clone(), m.clone()));
        }
        for &l in &b.lower {
            edges.push((m.clone(), slice.lower()[l].clone()));
        }
    }
    LayeredGraph::new(
        vec![slice.upper().to_vec(), middle, slice.lower().to_vec()],
        edges,
    )
}

/// Straight-line crossings of a layered graph drawn with each node at
/// (rank in its layer, layer index).
pub fn layered_crossings(orderings: &[Vec<String>], edges: &[(String, String)]) -> usize {
    let mut pos: HashMap<&str, (usize, usize)> = HashMap::new();
    for (li, layer) in orderings.iter().enumerate() {
        for (r, n) in layer.iter().enumerate() {
            pos.insert(n.as_str(), (li, r));
        }
    }
    let mut per_pair: Vec<Vec<(Point2, Point2)>> = vec![Vec::new(); orderings.len().saturating_sub(1)];
    for (a, b) in edges {
        let (Some(&(la, ra)), Some(&(lb, rb))) = (pos.get(a.as_str()), pos.get(b.as_str())) else {
            continue;
        };
        let ((lu, ru), (_, rl)) = if la < lb {
            ((la, ra), (lb, rb))
        } else {
            ((lb, rb), (la, ra))
        };
        if la.abs_diff(lb) != 1 {
            continue;
        }
        per_pair[lu].push((Point2::new(ru as f64, 0.0), Point2::new(rl as f64, 1.0)));
    }
    per_pair.iter().map(|segs| count_segment_crossings(segs)).sum()
}

/// Iterated barycenter crossing reduction.
///
/// Each round sweeps down (layers 1.. ordered by the mean rank of their
/// neighbors in the layer above) and then up. Nodes without neighbors in the
/// reference layer keep their current rank as key; ties keep the previous
/// order. Stops after `max_rounds` or a round without change, returning the
/// orderings with the fewest crossings seen (the input orderings included).
pub fn reduce_crossings_sweep(graph: &LayeredGraph, max_rounds: usize) -> Vec<Vec<String>> {
    let mut order = graph.layers.clone();
    let n_layers = order.len();
    if n_layers < 2 {
        return order;
    }
    let index = graph.node_index();
    // adjacency split by direction
    let mut up: HashMap<&str, Vec<&str>> = HashMap::new();
    let mut down: HashMap<&str, Vec<&str>> = HashMap::new();
    for (a, b) in &graph.edges {
        let (Some(&(la, _)), Some(&(lb, _))) = (index.get(a.as_str()), index.get(b.as_str())) else {
            continue;
        };
        let (hi, lo) = if la < lb { (a, b) } else { (b, a) };
        down.entry(hi.as_str()).or_default().push(lo.as_str());
        up.entry(lo.as_str()).or_default().push(hi.as_str());
    }

    let mut best = order.clone();
    let mut best_crossings = layered_crossings(&order, &graph.edges);

    let reorder = |layer: &mut Vec<String>, reference: &[String], nbrs: &HashMap<&str, Vec<&str>>| -> bool {
        let rank: HashMap<&str, usize> = reference
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let keys: Vec<f64> = layer
            .iter()
            .enumerate()
            .map(|(i, n)| match nbrs.get(n.as_str()) {
                Some(ns) if !ns.is_empty() => {
                    ns.iter().map(|m| rank[m] as f64).sum::<f64>() / ns.len() as f64
                }
                _ => i as f64,
            })
            .collect();
        let mut idx: Vec<usize> = (0..layer.len()).collect();
        idx.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]).then(a.cmp(&b)));
        let changed = idx.iter().enumerate().any(|(i, &j)| i != j);
        if changed {
            *layer = idx.iter().map(|&i| layer[i].clone()).collect();
        }
        changed
    };

    for _ in 0..max_rounds.max(1) {
        let mut changed = false;
        for li in 1..n_layers {
            let (above, rest) = order.split_at_mut(li);
            changed |= reorder(&mut rest[0], &above[li - 1], &up);
        }
        for li in (0..n_layers - 1).rev() {
            let (head, below) = order.split_at_mut(li + 1);
            changed |= reorder(&mut head[li], &below[0], &down);
        }
        let c = layered_crossings(&order, &graph.edges);
        if c < best_crossings {
            best_crossings = c;
            best = order.clone();
        }
        if !changed {
            break;
        }
    }
    best
}

/// Uniform spacing within each layer, every layer centred on x = 0.
pub fn orderings_to_coordinates(orderings: &[Vec<String>], spacing: f64) -> BTreeMap<String, f64> {
    let mut xs = BTreeMap::new();
    for layer in orderings {
        let mid = (layer.len() as f64 - 1.0) / 2.0;
        for (i, n) in layer.iter().enumerate() {
            xs.insert(n.clone(), (i as f64 - mid) * spacing);
        }
    }
    xs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{extract_bicliques, EdgeColoring};

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// A cover whose bicliques are single upper nodes paired with one lower
    /// node each, so barycenters are easy to control.
    fn star_cover(upper_x: &[f64]) -> (BicliqueCover, BTreeMap<String, f64>) {
        let k = upper_x.len();
        let slice = BipartiteSlice::with_sizes(k, k, (0..k).map(|i| (i, i)).collect()).unwrap();
        let coloring = EdgeColoring::from_colors((1..=k).collect());
        let cover = extract_bicliques(&slice, &coloring).unwrap();
        let mut xs = BTreeMap::new();
        for (i, &x) in upper_x.iter().enumerate() {
            xs.insert(format!("u{}", i + 1), x);
            xs.insert(format!("l{}", i + 1), x);
        }
        (cover, xs)
    }

    fn cfg(delta: f64) -> LayoutConfig {
        LayoutConfig {
            min_separation: delta,
            ..Default::default()
        }
    }

    #[test]
    fn single_biclique_sits_at_barycenter() {
        let slice = BipartiteSlice::with_sizes(2, 1, vec![(0, 0), (1, 0)]).unwrap();
        let cover = extract_bicliques(&slice, &EdgeColoring::from_colors(vec![1, 1])).unwrap();
        let xs: BTreeMap<String, f64> = [("u1", 0.0), ("u2", 20.0), ("l1", 10.0)]
            .iter()
            .map(|(n, x)| (n.to_string(), *x))
            .collect();
        let p = place_centers_barycenter(&cover, &|n| xs.get(n).copied(), &cfg(30.0)).unwrap();
        assert_eq!(p.center_x, vec![10.0]);
        assert_eq!(p.center_y, 60.0);
    }

    #[test]
    fn sweep_traces() {
        assert_eq!(separate_sorted(&[5.0, 5.0], 4.0), vec![5.0, 9.0]);
        assert_eq!(separate_sorted(&[0.0, 1.0, 2.0], 5.0), vec![0.0, 5.0, 10.0]);
        assert_eq!(separate_sorted(&[], 5.0), Vec::<f64>::new());
        // unsorted input, output follows input order
        assert_eq!(separate_sorted(&[2.0, 0.0, 1.0], 5.0), vec![10.0, 0.0, 5.0]);
        // k = 4 starts from the second center and pushes left
        assert_eq!(
            separate_sorted(&[10.0, 10.0, 10.0, 10.0], 3.0),
            vec![7.0, 10.0, 13.0, 16.0]
        );
    }

    #[test]
    fn sweep_through_cover() {
        let (cover, xs) = star_cover(&[5.0, 5.0]);
        let p = place_centers_barycenter(&cover, &|n| xs.get(n).copied(), &cfg(4.0)).unwrap();
        assert_eq!(p.center_x, vec![5.0, 9.0]);
        let (cover, xs) = star_cover(&[0.0, 1.0, 2.0]);
        let p = place_centers_barycenter(&cover, &|n| xs.get(n).copied(), &cfg(5.0)).unwrap();
        assert_eq!(p.center_x, vec![0.0, 5.0, 10.0]);
        let missing = place_centers_barycenter(&cover, &|_| None, &cfg(5.0));
        assert!(matches!(missing, Err(Error::MissingCoordinate(_))));
    }

    #[test]
    fn range_violations_are_reported() {
        let (cover, xs) = star_cover(&[0.0, 1.0, 2.0]);
        let f = |n: &str| xs.get(n).copied();
        let p = place_centers_barycenter(&cover, &f, &cfg(5.0)).unwrap();
        assert_eq!(range_violations(&cover, &f, &p).unwrap(), vec![1, 2]);
    }

    #[test]
    fn three_layer_from_p4_cover() {
        let slice = BipartiteSlice::with_sizes(2, 2, vec![(0, 0), (1, 0), (1, 1)]).unwrap();
        let cover = extract_bicliques(&slice, &EdgeColoring::from_colors(vec![1, 1, 2])).unwrap();
        let g = build_three_layer(&slice, &cover);
        assert_eq!(g.layers[1], strs(&["m1", "m2"]));
        let mut edges: Vec<(String, String)> = g.edges.clone();
        edges.sort();
        let mut expect = vec![
            ("u1".to_string(), "m1".to_string()),
            ("u2".to_string(), "m1".to_string()),
            ("m1".to_string(), "l1".to_string()),
            ("u2".to_string(), "m2".to_string()),
            ("m2".to_string(), "l2".to_string()),
        ];
        expect.sort();
        assert_eq!(edges, expect);
        assert!(g.validate().is_ok());
    }

    #[test]
    fn three_layer_edge_cases() {
        let empty = BipartiteSlice::with_sizes(2, 2, vec![]).unwrap();
        let cover = extract_bicliques(&empty, &EdgeColoring::from_colors(vec![])).unwrap();
        let g = build_three_layer(&empty, &cover);
        assert!(g.layers[1].is_empty() && g.edges.is_empty());

        let k22 = BipartiteSlice::with_sizes(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let cover = extract_bicliques(&k22, &EdgeColoring::from_colors(vec![1; 4])).unwrap();
        let g = build_three_layer(&k22, &cover);
        assert_eq!(g.layers[1], strs(&["m1"]));
        assert_eq!(g.edges.len(), 4);
    }

    #[test]
    fn middle_names_avoid_collisions() {
        let slice = BipartiteSlice::new(strs(&["m1"]), strs(&["_m1"]), vec![(0, 0)]).unwrap();
        let cover = extract_bicliques(&slice, &EdgeColoring::from_colors(vec![1])).unwrap();
        let g = build_three_layer(&slice, &cover);
        assert_eq!(g.layers[1], strs(&["__m1"]));
    }

    #[test]
    fn sweep_untangles_a_swap() {
        let g = LayeredGraph::from_strs(&[&["u1", "u2"], &["l1", "l2"]], &[("u1", "l2"), ("u2", "l1")]);
        assert_eq!(layered_crossings(&g.layers, &g.edges), 1);
        let o = reduce_crossings_sweep(&g, 10);
        assert_eq!(layered_crossings(&o, &g.edges), 0);
    }

    #[test]
    fn sweep_keeps_planar_orderings() {
        let g = LayeredGraph::from_strs(
            &[&["a", "b"], &["c", "d"], &["e"]],
            &[("a", "c"), ("b", "d"), ("c", "e"), ("d", "e")],
        );
        assert_eq!(reduce_crossings_sweep(&g, 10), g.layers);
    }

    #[test]
    fn k22_keeps_one_crossing() {
        let g = LayeredGraph::from_strs(
            &[&["u1", "u2"], &["l1", "l2"]],
            &[("u1", "l1"), ("u1", "l2"), ("u2", "l1"), ("u2", "l2")],
        );
        let o = reduce_crossings_sweep(&g, 10);
        assert_eq!(layered_crossings(&o, &g.edges), 1);
    }

    #[test]
    fn coordinates_are_centered() {
        let xs = orderings_to_coordinates(&[strs(&["a"])], 10.0);
        assert_eq!(xs["a"], 0.0);
        let xs = orderings_to_coordinates(&[strs(&["a", "b", "c"])], 10.0);
        assert_eq!((xs["a"], xs["b"], xs["c"]), (-10.0, 0.0, 10.0));
        let xs = orderings_to_coordinates(&[strs(&["a", "b"]), strs(&["c", "d", "e", "f"])], 10.0);
        assert_eq!((xs["a"], xs["b"]), (-5.0, 5.0));
        assert_eq!((xs["c"], xs["d"], xs["e"], xs["f"]), (-15.0, -5.0, 5.0, 15.0));
    }

    #[test]
    fn config_validation() {
        assert!(LayoutConfig::default().validate().is_ok());
        assert!(LayoutConfig {
            min_separation: 0.0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(LayoutConfig {
            y_center: Some(200.0),
            ..Default::default()
        }
        .validate()
        .is_err());
    }
}
