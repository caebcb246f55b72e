//! Depth-1 and depth-2 confluent layered drawings.
//!
//! Depth 1 covers each layer pair once and draws every biclique as a tree.
//! Depth 2 first covers the pair to obtain a middle layer of tree centers,
//! then covers the upper-to-middle and middle-to-lower graphs again and draws
//! only those two covers; middle nodes become track junctions.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::cover::{cover, BicliqueCover, ColoringAlgorithm};
use crate::curves::{count_curve_crossings, direct_control_points, render_biclique, CubicBezier, Point2};
use crate::error::{Error, Result};
use crate::graph::{BipartiteSlice, LayeredGraph};
use crate::layout::{
    middle_names, orderings_to_coordinates, place_centers_barycenter, range_violations,
    reduce_crossings_sweep, CenterPlacement, LayoutConfig,
};
use crate::oracle::count_segment_crossings;

pub const DEFAULT_MIN_SEPARATION: f64 = 30.0;
pub const DEFAULT_NODE_SPACING: f64 = 40.0;
pub const DEFAULT_LAYER_GAP: f64 = 120.0;
/// Default curve-shape parameter as a fraction of the level gap it spans.
pub const DEFAULT_DELTA_Y_RATIO: f64 = 0.35;
pub const DEFAULT_SWEEP_ROUNDS: usize = 24;
pub const CROSSING_EPS: f64 = 1e-9;

/// Drawing-wide geometry knobs (all in abstract length units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrawingConfig {
    pub min_separation: f64,
    /// Fixed curve-shape parameter; when unset each level uses
    /// `DEFAULT_DELTA_Y_RATIO` times its own gap.
    pub delta_y: Option<f64>,
    pub node_spacing: f64,
    pub layer_gap: f64,
}

impl Default for DrawingConfig {
    fn default() -> Self {
        DrawingConfig {
            min_separation: DEFAULT_MIN_SEPARATION,
            delta_y: None,
            node_spacing: DEFAULT_NODE_SPACING,
            layer_gap: DEFAULT_LAYER_GAP,
        }
    }
}

impl DrawingConfig {
    /// Level geometry for a cover drawn between `y_upper` and `y_lower`.
    pub fn level(&self, y_upper: f64, y_lower: f64) -> LayoutConfig {
        LayoutConfig {
            y_upper,
            y_lower,
            y_center: None,
            min_separation: self.min_separation,
            delta_y: self
                .delta_y
                .unwrap_or(DEFAULT_DELTA_Y_RATIO * (y_lower - y_upper)),
            node_spacing: self.node_spacing,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.layer_gap > 0.0 && self.layer_gap.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "layer gap must be positive, got {}",
                self.layer_gap
            )));
        }
        self.level(0.0, self.layer_gap).validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Placement {
    #[default]
    Barycenter,
    CrossingReduction,
}

impl FromStr for Placement {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "barycenter" => Ok(Self::Barycenter),
            "crossings" | "crossing_reduction" => Ok(Self::CrossingReduction),
            other => Err(format!("unknown placement {other:?} (barycenter, crossings)")),
        }
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Barycenter => "barycenter",
            Self::CrossingReduction => "crossings",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutOptions {
    pub depth: usize,
    pub placement: Placement,
    /// Draw single-edge bicliques as one curve instead of two.
    pub smoothing: bool,
    pub algorithm: ColoringAlgorithm,
    pub priority_pq: bool,
    pub sweep_rounds: usize,
    pub config: DrawingConfig,
}

impl Default for LayoutOptions {
    fn default() -> Self {
        LayoutOptions {
            depth: 1,
            placement: Placement::Barycenter,
            smoothing: false,
            algorithm: ColoringAlgorithm::Rlf,
            priority_pq: false,
            sweep_rounds: DEFAULT_SWEEP_ROUNDS,
            config: DrawingConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeGlyph {
    pub id: String,
    pub pos: Point2,
    pub label: String,
    pub layer: usize,
    pub index: usize,
}

/// The chain of segments realizing one original edge, upper node first.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgePath {
    pub upper: String,
    pub lower: String,
    pub segments: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceReport {
    pub pair_index: usize,
    /// Sizes of every cover computed for this pair, in computation order.
    pub computed_cover_sizes: Vec<usize>,
    /// Sizes of the covers that were drawn.
    pub laid_out_cover_sizes: Vec<usize>,
    /// Tree centers outside the x-range of their leaves.
    pub range_violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Drawing {
    pub node_glyphs: Vec<NodeGlyph>,
    pub segments: Vec<CubicBezier>,
    /// Layer pair each segment belongs to.
    pub segment_pair: Vec<usize>,
    pub edge_paths: Vec<EdgePath>,
    pub depth: usize,
    pub covers_computed: usize,
    pub covers_laid_out: usize,
    /// Every y level used, ascending.
    pub level_y: Vec<f64>,
    pub slices: Vec<SliceReport>,
}

/// One cover that gets drawn, with its level geometry and (for the
/// crossing-reduction strategy) names for its tree centers.
struct PlannedCover {
    cover: BicliqueCover,
    level: LayoutConfig,
    center_names: Vec<String>,
}

struct PairPlan {
    computed: Vec<usize>,
    /// (names, depth-1 cover) of the middle layer, depth 2 only
    middle: Option<(Vec<String>, BicliqueCover)>,
    drawn: Vec<PlannedCover>,
    /// per original slice edge: (drawn cover, edge index in that cover's slice)
    hops: Vec<Vec<(usize, usize)>>,
}

struct NameSource {
    taken: HashSet<String>,
}

impl NameSource {
    fn fresh(&mut self, base: &str, count: usize) -> Vec<String> {
        let names = {
            let taken: HashSet<&str> = self.taken.iter().map(String::as_str).collect();
            middle_names(base, count, &taken)
        };
        self.taken.extend(names.iter().cloned());
        names
    }
}

fn plan_pair(
    slice: &BipartiteSlice,
    pair: usize,
    opts: &LayoutOptions,
    names: &mut NameSource,
) -> Result<PairPlan> {
    let cfg = &opts.config;
    let y_u = pair as f64 * cfg.layer_gap;
    let y_l = y_u + cfg.layer_gap;
    let first = cover(slice, opts.algorithm, opts.priority_pq)?;

    match opts.depth {
        1 => {
            let center_names = names.fresh(&format!("p{pair}c"), first.len());
            let hops = (0..slice.edge_count()).map(|e| vec![(0, e)]).collect();
            Ok(PairPlan {
                computed: vec![first.len()],
                middle: None,
                drawn: vec![PlannedCover {
                    level: cfg.level(y_u, y_l),
                    cover: first,
                    center_names,
                }],
                hops,
            })
        }
        2 => {
            let middle = names.fresh(&format!("p{pair}m"), first.len());
            let mut up_edges = Vec::new();
            let mut down_edges = Vec::new();
            let mut up_index = HashMap::new();
            let mut down_index = HashMap::new();
            for (i, b) in first.bicliques.iter().enumerate() {
                for &u in &b.upper {
                    up_index.insert((u, i), up_edges.len());
                    up_edges.push((u, i));
                }
                for &l in &b.lower {
                    down_index.insert((i, l), down_edges.len());
                    down_edges.push((i, l));
                }
            }
            let up_slice = BipartiteSlice::new(slice.upper().to_vec(), middle.clone(), up_edges)?;
            let down_slice = BipartiteSlice::new(middle.clone(), slice.lower().to_vec(), down_edges)?;
            let up_cover = cover(&up_slice, opts.algorithm, opts.priority_pq)?;
            let down_cover = cover(&down_slice, opts.algorithm, opts.priority_pq)?;

            let hops = slice
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(u, l))| {
                    let b = first.edge_class[e];
                    vec![(0, up_index[&(u, b)]), (1, down_index[&(b, l)])]
                })
                .collect();
            let y_m = 0.5 * (y_u + y_l);
            let up_names = names.fresh(&format!("p{pair}a"), up_cover.len());
            let down_names = names.fresh(&format!("p{pair}b"), down_cover.len());
            Ok(PairPlan {
                computed: vec![first.len(), up_cover.len(), down_cover.len()],
                middle: Some((middle, first)),
                drawn: vec![
                    PlannedCover {
                        cover: up_cover,
                        level: cfg.level(y_u, y_m),
                        center_names: up_names,
                    },
                    PlannedCover {
                        cover: down_cover,
                        level: cfg.level(y_m, y_l),
                        center_names: down_names,
                    },
                ],
                hops,
            })
        }
        d => Err(Error::UnsupportedDepth(d)),
    }
}

/// Layered graph of everything that is drawn: original layers interleaved
/// with center layers (and middle layers at depth 2).
fn refined_graph(graph: &LayeredGraph, plans: &[PairPlan]) -> LayeredGraph {
    let mut layers = Vec::new();
    let mut edges = Vec::new();
    for (pair, plan) in plans.iter().enumerate() {
        layers.push(graph.layers[pair].clone());
        for (j, drawn) in plan.drawn.iter().enumerate() {
            if j == 1 {
                let (middle, _) = plan
                    .middle
                    .as_ref()
                    .expect("two drawn covers imply a middle layer");
                layers.push(middle.clone());
            }
            layers.push(drawn.center_names.clone());
            let s = &drawn.cover.slice;
            for (b, c) in drawn.cover.bicliques.iter().zip(&drawn.center_names) {
                for &u in &b.upper {
                    edges.push((s.upper()[u].clone(), c.clone()));
                }
                for &l in &b.lower {
                    edges.push((c.clone(), s.lower()[l].clone()));
                }
            }
        }
    }
    if let Some(last) = graph.layers.last() {
        layers.push(last.clone());
    }
    LayeredGraph::new(layers, edges)
}

/// Lay out a layered graph as a confluent drawing.
pub fn confluent_layout(graph: &LayeredGraph, opts: &LayoutOptions) -> Result<Drawing> {
    if !(1..=2).contains(&opts.depth) {
        return Err(Error::UnsupportedDepth(opts.depth));
    }
    opts.config.validate()?;
    graph.check()?;
    let cfg = &opts.config;

    let mut names = NameSource {
        taken: graph.layers.iter().flatten().cloned().collect(),
    };
    let slices: Vec<BipartiteSlice> = (0..graph.pair_count())
        .map(|p| graph.slice(p))
        .collect::<Result<_>>()?;
    let plans: Vec<PairPlan> = slices
        .iter()
        .enumerate()
        .map(|(p, s)| plan_pair(s, p, opts, &mut names))
        .collect::<Result<_>>()?;

    // x for every node, middle node and tree center
    let mut xs: BTreeMap<String, f64>;
    let mut placements: Vec<Vec<CenterPlacement>> = Vec::with_capacity(plans.len());
    match opts.placement {
        Placement::Barycenter => {
            xs = graph.coordinates(cfg.node_spacing);
            for (pair, plan) in plans.iter().enumerate() {
                if let Some((middle, first)) = &plan.middle {
                    let y_u = pair as f64 * cfg.layer_gap;
                    let level = cfg.level(y_u, y_u + cfg.layer_gap);
                    let m = place_centers_barycenter(first, &|n| xs.get(n).copied(), &level)?;
                    for (name, x) in middle.iter().zip(m.center_x) {
                        xs.insert(name.clone(), x);
                    }
                }
                let mut per_pair = Vec::new();
                for drawn in &plan.drawn {
                    per_pair.push(place_centers_barycenter(
                        &drawn.cover,
                        &|n| xs.get(n).copied(),
                        &drawn.level,
                    )?);
                }
                placements.push(per_pair);
            }
        }
        Placement::CrossingReduction => {
            let refined = refined_graph(graph, &plans);
            let orderings = reduce_crossings_sweep(&refined, opts.sweep_rounds);
            xs = orderings_to_coordinates(&orderings, cfg.node_spacing);
            for plan in &plans {
                placements.push(
                    plan.drawn
                        .iter()
                        .map(|d| CenterPlacement {
                            center_x: d.center_names.iter().map(|c| xs[c]).collect(),
                            center_y: d.level.center_y(),
                        })
                        .collect(),
                );
            }
        }
    }
    let x_of = |n: &str| xs.get(n).copied();

    let mut segments = Vec::new();
    let mut segment_pair = Vec::new();
    let mut edge_paths = Vec::new();
    let mut reports = Vec::new();
    let mut next_biclique = 0;
    let mut level_y: Vec<f64> = Vec::new();

    for (pair, (plan, slice)) in plans.iter().zip(&slices).enumerate() {
        let mut routes: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut violations = 0;
        for (drawn, placement) in plan.drawn.iter().zip(&placements[pair]) {
            violations += range_violations(&drawn.cover, &x_of, placement)?.len();
            level_y.extend([drawn.level.y_upper, drawn.level.center_y(), drawn.level.y_lower]);
            let s = &drawn.cover.slice;
            let mut upper_seg = HashMap::new();
            let mut lower_seg = HashMap::new();
            let mut direct_seg = HashMap::new();
            for (i, (b, &cx)) in drawn.cover.bicliques.iter().zip(&placement.center_x).enumerate() {
                let id = next_biclique;
                next_biclique += 1;
                if opts.smoothing && b.is_single_edge() {
                    let xu = x_of(&s.upper()[b.upper[0]])
                        .ok_or_else(|| Error::MissingCoordinate(s.upper()[b.upper[0]].clone()))?;
                    let xl = x_of(&s.lower()[b.lower[0]])
                        .ok_or_else(|| Error::MissingCoordinate(s.lower()[b.lower[0]].clone()))?;
                    direct_seg.insert(i, segments.len());
                    segments.push(CubicBezier {
                        biclique_id: id,
                        ..direct_control_points(xu, xl, &drawn.level)
                    });
                    segment_pair.push(pair);
                    continue;
                }
                let rendered = render_biclique(b, s, &x_of, cx, &drawn.level, id)?;
                for (k, seg) in rendered.into_iter().enumerate() {
                    if k < b.upper.len() {
                        upper_seg.insert((i, b.upper[k]), segments.len());
                    } else {
                        lower_seg.insert((i, b.lower[k - b.upper.len()]), segments.len());
                    }
                    segments.push(seg);
                    segment_pair.push(pair);
                }
            }
            let route: Vec<Vec<usize>> = s
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(u, l))| {
                    let i = drawn.cover.edge_class[e];
                    match direct_seg.get(&i) {
                        Some(&d) => vec![d],
                        None => vec![upper_seg[&(i, u)], lower_seg[&(i, l)]],
                    }
                })
                .collect();
            routes.push(route);
        }

        for (e, hops) in plan.hops.iter().enumerate() {
            let (u, l) = slice.edge_names(e);
            edge_paths.push(EdgePath {
                upper: u.to_string(),
                lower: l.to_string(),
                segments: hops
                    .iter()
                    .flat_map(|&(d, sub)| routes[d][sub].iter().copied())
                    .collect(),
            });
        }
        reports.push(SliceReport {
            pair_index: pair,
            computed_cover_sizes: plan.computed.clone(),
            laid_out_cover_sizes: plan.drawn.iter().map(|d| d.cover.len()).collect(),
            range_violations: violations,
        });
    }

    let mut node_glyphs = Vec::with_capacity(graph.node_count());
    for (li, layer) in graph.layers.iter().enumerate() {
        let y = li as f64 * cfg.layer_gap;
        level_y.push(y);
        for (i, n) in layer.iter().enumerate() {
            node_glyphs.push(NodeGlyph {
                id: n.clone(),
                pos: Point2::new(xs[n], y),
                label: graph.label(n),
                layer: li,
                index: i,
            });
        }
    }
    level_y.sort_by(f64::total_cmp);
    level_y.dedup();

    let covers_computed = reports.iter().map(|r| r.computed_cover_sizes.len()).sum();
    let covers_laid_out = reports.iter().map(|r| r.laid_out_cover_sizes.len()).sum();
    Ok(Drawing {
        node_glyphs,
        segments,
        segment_pair,
        edge_paths,
        depth: opts.depth,
        covers_computed,
        covers_laid_out,
        level_y,
        slices: reports,
    })
}

impl Drawing {
    pub fn glyph(&self, id: &str) -> Option<&NodeGlyph> {
        self.node_glyphs.iter().find(|g| g.id == id)
    }

    fn pair_segments(&self, pair: usize) -> impl Iterator<Item = &CubicBezier> {
        self.segments
            .iter()
            .zip(&self.segment_pair)
            .filter(move |(_, &p)| p == pair)
            .map(|(s, _)| s)
    }

    /// Curve crossings within each layer pair.
    pub fn curve_crossings_per_pair(&self) -> Vec<usize> {
        (0..self.slices.len())
            .map(|p| {
                let segs: Vec<CubicBezier> = self.pair_segments(p).copied().collect();
                count_curve_crossings(&segs, CROSSING_EPS)
            })
            .collect()
    }

    pub fn curve_crossings(&self) -> usize {
        self.curve_crossings_per_pair().iter().sum()
    }

    /// Crossings of the straight lines joining each segment's endpoints.
    pub fn straight_crossings(&self) -> usize {
        let chords: Vec<_> = self.segments.iter().map(CubicBezier::chord).collect();
        count_segment_crossings(&chords)
    }

    pub fn non_monotone_segments(&self) -> usize {
        self.segments.iter().filter(|s| !s.is_y_monotone()).count()
    }

    /// Check that every edge path starts at its upper glyph, ends at its
    /// lower glyph, and that consecutive segments share the junction point
    /// with vertical tangents on both sides.
    pub fn check_paths(&self) -> std::result::Result<(), String> {
        let glyphs: HashMap<&str, Point2> = self.node_glyphs.iter().map(|g| (g.id.as_str(), g.pos)).collect();
        for path in &self.edge_paths {
            let name = format!("{}-{}", path.upper, path.lower);
            let segs: Vec<&CubicBezier> = path.segments.iter().map(|&i| &self.segments[i]).collect();
            let (Some(first), Some(last)) = (segs.first(), segs.last()) else {
                return Err(format!("edge {name} has no segments"));
            };
            if Some(&first.p0) != glyphs.get(path.upper.as_str()) {
                return Err(format!("edge {name} does not start at its upper node"));
            }
            if Some(&last.p3) != glyphs.get(path.lower.as_str()) {
                return Err(format!("edge {name} does not end at its lower node"));
            }
            for w in segs.windows(2) {
                if w[0].p3 != w[1].p0 {
                    return Err(format!("edge {name} has a gap at {:?}", w[0].p3));
                }
                if w[0].p2.x != w[0].p3.x || w[1].p0.x != w[1].p1.x {
                    return Err(format!(
                        "edge {name} has a non-vertical junction at {:?}",
                        w[0].p3
                    ));
                }
            }
        }
        Ok(())
    }
}
