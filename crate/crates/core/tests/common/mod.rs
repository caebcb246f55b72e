//! Helpers shared by the integration test targets.

#![allow(dead_code)]

use rand::Rng;

use confluent_core::{
    confluent_layout, emit_dot, emit_svg, parse_input, BipartiteSlice, LayeredGraph, LayoutOptions, Point2,
};

/// Random slice with at most `max_upper` upper and `max_lower` lower nodes
/// (at least `min_side` each); each edge present with a probability drawn
/// from `density`.
pub fn random_slice(
    rng: &mut impl Rng,
    min_side: usize,
    max_upper: usize,
    max_lower: usize,
    density: std::ops::Range<f64>,
) -> BipartiteSlice {
    let nu = rng.gen_range(min_side..=max_upper);
    let nl = rng.gen_range(min_side..=max_lower);
    let density = rng.gen_range(density);
    let edges = (0..nu)
        .flat_map(|u| (0..nl).map(move |l| (u, l)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    BipartiteSlice::with_sizes(nu, nl, edges).unwrap()
}

/// Two-layer graph with the same nodes and edges as `s`.
pub fn slice_graph(s: &BipartiteSlice) -> LayeredGraph {
    let edges = s
        .edges()
        .iter()
        .map(|&(u, l)| (s.upper()[u].clone(), s.lower()[l].clone()))
        .collect();
    LayeredGraph::new(vec![s.upper().to_vec(), s.lower().to_vec()], edges)
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn same_point(a: Point2, b: Point2) -> bool {
    a.x == b.x && a.y == b.y
}

/// Whether `p` lies in the convex hull of `pts`, allowing `tol` of slack.
pub fn convex_hull_contains(pts: &[Point2], p: Point2, tol: f64) -> bool {
    let mut sorted = pts.to_vec();
    sorted.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    sorted.dedup_by(|a, b| same_point(*a, *b));
    if sorted.len() == 1 {
        return (p.x - sorted[0].x).abs() <= tol && (p.y - sorted[0].y).abs() <= tol;
    }
    // Andrew's monotone chain, counter-clockwise
    let mut hull: Vec<Point2> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(sorted.iter())
        } else {
            Box::new(sorted.iter().rev())
        };
        for &q in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0.0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    let scale = pts.iter().map(|q| q.x.abs().max(q.y.abs())).fold(1.0, f64::max);
    (0..hull.len()).all(|i| {
        let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
        let len = (b.x - a.x).hypot(b.y - a.y);
        if len == 0.0 {
            return true;
        }
        cross(a, b, p) / len >= -tol * scale
    })
}

/// Parameter of the proper intersection of two segments, if any.
fn intersection(a: (Point2, Point2), b: (Point2, Point2)) -> Option<(f64, f64, Point2)> {
    let r = (a.1.x - a.0.x, a.1.y - a.0.y);
    let s = (b.1.x - b.0.x, b.1.y - b.0.y);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom == 0.0 {
        return None;
    }
    let qp = (b.0.x - a.0.x, b.0.y - a.0.y);
    let t = (qp.0 * s.1 - qp.1 * s.0) / denom;
    let u = (qp.0 * r.1 - qp.1 * r.0) / denom;
    if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) {
        Some((t, u, Point2::new(a.0.x + t * r.0, a.0.y + t * r.1)))
    } else {
        None
    }
}

/// General position for a set of chords: distinct endpoints on one level
/// are well apart, no two chords are nearly parallel while overlapping, every
/// crossing is well inside both chords, and no two crossings coincide.
pub fn general_position(chords: &[(Point2, Point2)]) -> bool {
    let mut ends: Vec<Point2> = chords.iter().flat_map(|&(a, b)| [a, b]).collect();
    ends.sort_by(|a, b| a.y.total_cmp(&b.y).then(a.x.total_cmp(&b.x)));
    if ends
        .windows(2)
        .any(|w| w[0].y == w[1].y && !same_point(w[0], w[1]) && w[1].x - w[0].x < 1e-2)
    {
        return false;
    }
    let mut points = Vec::new();
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            let (a, b) = (chords[i], chords[j]);
            let shared = [a.0, a.1]
                .iter()
                .any(|p| same_point(*p, b.0) || same_point(*p, b.1));
            let ra = (a.1.x - a.0.x, a.1.y - a.0.y);
            let rb = (b.1.x - b.0.x, b.1.y - b.0.y);
            let sin = (ra.0 * rb.1 - ra.1 * rb.0) / (ra.0.hypot(ra.1) * rb.0.hypot(rb.1));
            if shared {
                if sin.abs() < 1e-3 {
                    return false;
                }
                continue;
            }
            if sin.abs() < 1e-3 {
                let overlap_y = a.0.y.max(b.0.y) < a.1.y.min(b.1.y);
                if overlap_y {
                    return false;
                }
                continue;
            }
            if let Some((t, u, p)) = intersection(a, b) {
                if !(0.02..=0.98).contains(&t) || !(0.02..=0.98).contains(&u) {
                    return false;
                }
                points.push(p);
            }
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if (points[i].x - points[j].x).abs() < 1e-3 && (points[i].y - points[j].y).abs() < 1e-3 {
                return false;
            }
        }
    }
    true
}

pub fn render_svg(input: &str) -> String {
    let (g, config) = parse_input(input).unwrap();
    emit_svg(
        &confluent_layout(
            &g,
            &LayoutOptions {
                config,
                ..Default::default()
            },
        )
        .unwrap(),
    )
}

pub fn render_dot(input: &str) -> String {
    let (g, config) = parse_input(input).unwrap();
    emit_dot(
        &confluent_layout(
            &g,
            &LayoutOptions {
                config,
                ..Default::default()
            },
        )
        .unwrap(),
    )
}

/// Output formats checked against the golden corpus, by file extension.
pub type Renderer = fn(&str) -> String;

pub const GOLDEN_FORMATS: [(&str, Renderer); 2] = [("svg", render_svg), ("dot", render_dot)];
