//! Bezier tracks.
//!
//! Every track segment is a cubic whose end tangents are vertical: it leaves
//! a node straight down (or up) and arrives at a tree center the same way, so
//! segments meeting at a center join with first-order continuity. All upper
//! segments of a level share the same y(t), which makes two segments cross
//! exactly when the straight lines between their endpoints do.

use serde::Serialize;

use crate::cover::Biclique;
use crate::error::{Error, Result};
use crate::graph::BipartiteSlice;
use crate::layout::LayoutConfig;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    fn lerp(self, other: Point2, t: f64) -> Point2 {
        Point2::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }

    fn dist(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Node on the upper level to the tree center.
    Upper,
    /// Tree center to a node on the lower level.
    Lower,
    /// Upper node straight to lower node (smoothed single-edge biclique).
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicBezier {
    pub p0: Point2,
    pub p1: Point2,
    pub p2: Point2,
    pub p3: Point2,
    pub biclique_id: usize,
    pub side: Side,
}

impl CubicBezier {
    pub fn points(&self) -> [Point2; 4] {
        [self.p0, self.p1, self.p2, self.p3]
    }

    pub fn eval(&self, u: f64) -> Point2 {
        de_casteljau(&self.points(), u)
    }

    /// Derivative dC/du.
    pub fn derivative(&self, u: f64) -> Point2 {
        let d = [
            Point2::new(3.0 * (self.p1.x - self.p0.x), 3.0 * (self.p1.y - self.p0.y)),
            Point2::new(3.0 * (self.p2.x - self.p1.x), 3.0 * (self.p2.y - self.p1.y)),
            Point2::new(3.0 * (self.p3.x - self.p2.x), 3.0 * (self.p3.y - self.p2.y)),
        ];
        de_casteljau(&d, u)
    }

    /// The straight edge between the curve's endpoints.
    pub fn chord(&self) -> (Point2, Point2) {
        (self.p0, self.p3)
    }

    /// Whether y strictly increases along the curve, i.e. the curve has no
    /// turning point and is locally monotone.
    pub fn is_y_monotone(&self) -> bool {
        // y'(u)/3 = a(1-u)^2 + 2b u(1-u) + c u^2
        let a = self.p1.y - self.p0.y;
        let b = self.p2.y - self.p1.y;
        let c = self.p3.y - self.p2.y;
        if a < 0.0 || c < 0.0 || (a == 0.0 && c == 0.0) {
            return false;
        }
        // the quadratic stays positive on (0,1) unless b < 0 and b^2 >= ac
        b >= 0.0 || b * b < a * c
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Bernstein basis polynomial `C(n,k) u^k (1-u)^(n-k)`.
pub fn bernstein(k: usize, n: usize, u: f64) -> Result<f64> {
    if k > n {
        return Err(Error::BernsteinRange { k, n });
    }
    Ok(binomial(n, k) * u.powi(k as i32) * (1.0 - u).powi((n - k) as i32))
}

/// Bezier curve of degree `points.len() - 1` evaluated in the Bernstein form.
pub fn bezier_eval(points: &[Point2], u: f64) -> Result<Point2> {
    if points.len() < 2 {
        return Err(Error::TooFewControlPoints(points.len()));
    }
    let n = points.len() - 1;
    let mut out = Point2::new(0.0, 0.0);
    for (k, p) in points.iter().enumerate() {
        let b = bernstein(k, n, u)?;
        out.x += p.x * b;
        out.y += p.y * b;
    }
    Ok(out)
}

fn de_casteljau(points: &[Point2], u: f64) -> Point2 {
    let mut work = points.to_vec();
    for level in (1..work.len()).rev() {
        for i in 0..level {
            work[i] = work[i].lerp(work[i + 1], u);
        }
    }
    work[0]
}

/// Track segment between a node and its tree center.
pub fn control_points(x_node: f64, x_center: f64, cfg: &LayoutConfig, side: Side) -> CubicBezier {
    let (yu, yc, yl, dy) = (cfg.y_upper, cfg.center_y(), cfg.y_lower, cfg.delta_y);
    let [p0, p1, p2, p3] = match side {
        Side::Upper => [
            Point2::new(x_node, yu),
            Point2::new(x_node, yu + dy),
            Point2::new(x_center, yc - dy),
            Point2::new(x_center, yc),
        ],
        Side::Lower => [
            Point2::new(x_center, yc),
            Point2::new(x_center, yc + dy),
            Point2::new(x_node, yl - dy),
            Point2::new(x_node, yl),
        ],
        Side::Direct => panic!("control_points builds node-to-center segments only"),
    };
    CubicBezier {
        p0,
        p1,
        p2,
        p3,
        biclique_id: 0,
        side,
    }
}

/// Single curve spanning both levels, used for smoothed K_{1,1} bicliques.
pub fn direct_control_points(x_upper: f64, x_lower: f64, cfg: &LayoutConfig) -> CubicBezier {
    CubicBezier {
        p0: Point2::new(x_upper, cfg.y_upper),
        p1: Point2::new(x_upper, cfg.y_upper + cfg.delta_y),
        p2: Point2::new(x_lower, cfg.y_lower - cfg.delta_y),
        p3: Point2::new(x_lower, cfg.y_lower),
        biclique_id: 0,
        side: Side::Direct,
    }
}

/// Upper segments (one per upper node, ascending index) followed by lower
/// segments, all sharing the center point `(center_x, y_c)`.
pub fn render_biclique(
    biclique: &Biclique,
    slice: &BipartiteSlice,
    node_x: &impl Fn(&str) -> Option<f64>,
    center_x: f64,
    cfg: &LayoutConfig,
    biclique_id: usize,
) -> Result<Vec<CubicBezier>> {
    let lookup = |name: &String| node_x(name).ok_or_else(|| Error::MissingCoordinate(name.clone()));
    let mut out = Vec::with_capacity(biclique.upper.len() + biclique.lower.len());
    for &u in &biclique.upper {
        let x = lookup(&slice.upper()[u])?;
        out.push(CubicBezier {
            biclique_id,
            ..control_points(x, center_x, cfg, Side::Upper)
        });
    }
    for &l in &biclique.lower {
        let x = lookup(&slice.lower()[l])?;
        out.push(CubicBezier {
            biclique_id,
            ..control_points(x, center_x, cfg, Side::Lower)
        });
    }
    Ok(out)
}

const MAX_SUBDIVISION_DEPTH: u32 = 64;

fn split(p: &[Point2; 4]) -> ([Point2; 4], [Point2; 4]) {
    let p01 = p[0].lerp(p[1], 0.5);
    let p12 = p[1].lerp(p[2], 0.5);
    let p23 = p[2].lerp(p[3], 0.5);
    let a = p01.lerp(p12, 0.5);
    let b = p12.lerp(p23, 0.5);
    let m = a.lerp(b, 0.5);
    ([p[0], p01, a, m], [m, b, p23, p[3]])
}

fn bbox(p: &[Point2; 4]) -> (Point2, Point2) {
    let mut lo = p[0];
    let mut hi = p[0];
    for q in &p[1..] {
        lo.x = lo.x.min(q.x);
        lo.y = lo.y.min(q.y);
        hi.x = hi.x.max(q.x);
        hi.y = hi.y.max(q.y);
    }
    (lo, hi)
}

fn boxes_overlap(a: (Point2, Point2), b: (Point2, Point2)) -> bool {
    a.0.x <= b.1.x && b.0.x <= a.1.x && a.0.y <= b.1.y && b.0.y <= a.1.y
}

/// Largest distance of the inner control points from the chord.
fn flatness(p: &[Point2; 4]) -> f64 {
    let (a, b) = (p[0], p[3]);
    let len = a.dist(b);
    if len == 0.0 {
        return p[1].dist(a).max(p[2].dist(a));
    }
    let d = |q: Point2| ((b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x)).abs() / len;
    d(p[1]).max(d(p[2]))
}

/// Intersection parameters of two chords, closed on both ends. Parallel
/// chords yield nothing.
fn chord_intersection(a: (Point2, Point2), b: (Point2, Point2)) -> Option<(f64, f64)> {
    let r = Point2::new(a.1.x - a.0.x, a.1.y - a.0.y);
    let s = Point2::new(b.1.x - b.0.x, b.1.y - b.0.y);
    let denom = r.x * s.y - r.y * s.x;
    if denom == 0.0 {
        return None;
    }
    let qp = Point2::new(b.0.x - a.0.x, b.0.y - a.0.y);
    let t = (qp.x * s.y - qp.y * s.x) / denom;
    let u = (qp.x * r.y - qp.y * r.x) / denom;
    const SLACK: f64 = 1e-12;
    if (-SLACK..=1.0 + SLACK).contains(&t) && (-SLACK..=1.0 + SLACK).contains(&u) {
        Some((t.clamp(0.0, 1.0), u.clamp(0.0, 1.0)))
    } else {
        None
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Anchor {
    None,
    /// `pts[0]` is an endpoint shared with the other curve.
    Start,
    /// `pts[3]` is an endpoint shared with the other curve.
    End,
}

struct Piece {
    pts: [Point2; 4],
    t0: f64,
    t1: f64,
    anchor: Anchor,
}

struct Hit {
    ta: f64,
    tb: f64,
}

fn subdivide_pair(a: &Piece, b: &Piece, eps: f64, depth: u32, hits: &mut Vec<Hit>) {
    if !boxes_overlap(bbox(&a.pts), bbox(&b.pts)) {
        return;
    }
    let fa = flatness(&a.pts);
    let fb = flatness(&b.pts);
    if (fa < eps && fb < eps) || depth >= MAX_SUBDIVISION_DEPTH {
        if a.anchor != Anchor::None && b.anchor != Anchor::None {
            // these pieces meet only at the common endpoint
            return;
        }
        if let Some((s, t)) = chord_intersection((a.pts[0], a.pts[3]), (b.pts[0], b.pts[3])) {
            hits.push(Hit {
                ta: a.t0 + s * (a.t1 - a.t0),
                tb: b.t0 + t * (b.t1 - b.t0),
            });
        }
        return;
    }
    let size = |p: &[Point2; 4]| {
        let (lo, hi) = bbox(p);
        (hi.x - lo.x).max(hi.y - lo.y)
    };
    let split_a = fb < eps || (fa >= eps && size(&a.pts) >= size(&b.pts));
    let (whole, other) = if split_a { (a, b) } else { (b, a) };
    let (l, r) = split(&whole.pts);
    let mid = 0.5 * (whole.t0 + whole.t1);
    let left = Piece {
        pts: l,
        t0: whole.t0,
        t1: mid,
        anchor: if whole.anchor == Anchor::Start {
            Anchor::Start
        } else {
            Anchor::None
        },
    };
    let right = Piece {
        pts: r,
        t0: mid,
        t1: whole.t1,
        anchor: if whole.anchor == Anchor::End {
            Anchor::End
        } else {
            Anchor::None
        },
    };
    for half in [left, right] {
        if split_a {
            subdivide_pair(&half, other, eps, depth + 1, hits);
        } else {
            subdivide_pair(other, &half, eps, depth + 1, hits);
        }
    }
}

/// Number of transversal intersections between two cubic curves, excluding
/// contact at an endpoint both curves share.
///
/// Both curves are subdivided recursively (pruned by bounding boxes) until
/// each piece is flatter than `eps`; the chords of surviving piece pairs are
/// then intersected and hits closer than 1e-6 in both parameters merged.
/// Hits within `100 * sqrt(eps * extent)` of a shared endpoint count as
/// contact there.
pub fn bezier_pair_crossings(a: &CubicBezier, b: &CubicBezier, eps: f64) -> usize {
    let eps = eps.max(f64::MIN_POSITIVE);
    let pa = a.points();
    let pb = b.points();

    // coinciding endpoints as (param on a, param on b)
    let mut shared = Vec::new();
    for (ta, qa) in [(0.0, pa[0]), (1.0, pa[3])] {
        for (tb, qb) in [(0.0, pb[0]), (1.0, pb[3])] {
            if qa == qb {
                shared.push((ta, tb));
            }
        }
    }
    let anchor = |t: f64| if t == 0.0 { Anchor::Start } else { Anchor::End };
    let (anchor_a, anchor_b) = match shared.as_slice() {
        [(sa, sb)] => (anchor(*sa), anchor(*sb)),
        _ => (Anchor::None, Anchor::None),
    };

    let mut hits = Vec::new();
    subdivide_pair(
        &Piece {
            pts: pa,
            t0: 0.0,
            t1: 1.0,
            anchor: anchor_a,
        },
        &Piece {
            pts: pb,
            t0: 0.0,
            t1: 1.0,
            anchor: anchor_b,
        },
        eps,
        0,
        &mut hits,
    );

    hits.sort_by(|x, y| x.ta.total_cmp(&y.ta).then(x.tb.total_cmp(&y.tb)));
    let mut merged: Vec<Hit> = Vec::new();
    for h in hits {
        let dup = merged
            .iter()
            .any(|m| (m.ta - h.ta).abs() < 1e-6 && (m.tb - h.tb).abs() < 1e-6);
        if !dup {
            merged.push(h);
        }
    }
    // Curves leaving a common endpoint with the same tangent separate only
    // quadratically, so their gap stays below the flatness tolerance for a
    // distance of order sqrt(eps * extent) and chord noise can report hits
    // there. Hits that close to the shared point are contact, not crossings.
    let (lo_a, hi_a) = bbox(&pa);
    let (lo_b, hi_b) = bbox(&pb);
    let extent = (hi_a.x.max(hi_b.x) - lo_a.x.min(lo_b.x)).max(hi_a.y.max(hi_b.y) - lo_a.y.min(lo_b.y));
    let contact = 100.0 * (eps * extent).sqrt();
    merged
        .iter()
        .filter(|h| {
            !shared.iter().any(|&(sa, sb)| {
                let q = if sa == 0.0 { pa[0] } else { pa[3] };
                let near_param = (h.ta - sa).abs() < 1e-6 && (h.tb - sb).abs() < 1e-6;
                near_param || (a.eval(h.ta).dist(q) <= contact && b.eval(h.tb).dist(q) <= contact)
            })
        })
        .count()
}

/// Total pairwise crossings among a set of curves.
pub fn count_curve_crossings(curves: &[CubicBezier], eps: f64) -> usize {
    let boxes: Vec<_> = curves.iter().map(|c| bbox(&c.points())).collect();
    let mut total = 0;
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            if boxes_overlap(boxes[i], boxes[j]) {
                total += bezier_pair_crossings(&curves[i], &curves[j], eps);
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> LayoutConfig {
        LayoutConfig {
            y_upper: 0.0,
            y_lower: 100.0,
            y_center: None,
            min_separation: 30.0,
            delta_y: 10.0,
            node_spacing: 40.0,
        }
    }

    fn close(a: Point2, b: Point2, tol: f64) -> bool {
        (a.x - b.x).abs() <= tol && (a.y - b.y).abs() <= tol
    }

    #[test]
    fn bernstein_values() {
        assert_eq!(bernstein(0, 3, 0.0).unwrap(), 1.0);
        assert!((bernstein(1, 3, 0.5).unwrap() - 0.375).abs() < 1e-15);
        for u in [0.0, 0.13, 0.5, 0.77, 1.0] {
            let sum: f64 = (0..=3).map(|k| bernstein(k, 3, u).unwrap()).sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
        assert!(bernstein(4, 3, 0.5).is_err());
    }

    #[test]
    fn bezier_eval_examples() {
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 3.0),
            Point2::new(4.0, -2.0),
            Point2::new(7.0, 5.0),
        ];
        assert_eq!(bezier_eval(&pts, 0.0).unwrap(), pts[0]);
        assert_eq!(bezier_eval(&pts, 1.0).unwrap(), pts[3]);
        let mid = bezier_eval(&pts, 0.5).unwrap();
        let expect = Point2::new(
            (pts[0].x + 3.0 * pts[1].x + 3.0 * pts[2].x + pts[3].x) / 8.0,
            (pts[0].y + 3.0 * pts[1].y + 3.0 * pts[2].y + pts[3].y) / 8.0,
        );
        assert!(close(mid, expect, 1e-12));
        assert!(bezier_eval(&pts[..1], 0.5).is_err());
        // quadratic and linear work too
        assert!(close(
            bezier_eval(&pts[..2], 0.5).unwrap(),
            Point2::new(0.5, 1.5),
            1e-15
        ));
    }

    #[test]
    fn de_casteljau_matches_bernstein_form() {
        let c = control_points(0.0, 5.0, &cfg(), Side::Upper);
        for i in 0..=20 {
            let u = i as f64 / 20.0;
            assert!(close(c.eval(u), bezier_eval(&c.points(), u).unwrap(), 1e-12));
        }
    }

    #[test]
    fn upper_control_points() {
        let c = control_points(
            0.0,
            5.0,
            &LayoutConfig {
                y_lower: 100.0,
                ..cfg()
            },
            Side::Upper,
        );
        assert_eq!(
            c.points(),
            [
                Point2::new(0.0, 0.0),
                Point2::new(0.0, 10.0),
                Point2::new(5.0, 40.0),
                Point2::new(5.0, 50.0)
            ]
        );
    }

    #[test]
    fn lower_control_points() {
        let c = control_points(0.0, 5.0, &cfg(), Side::Lower);
        assert_eq!(
            c.points(),
            [
                Point2::new(5.0, 50.0),
                Point2::new(5.0, 60.0),
                Point2::new(0.0, 90.0),
                Point2::new(0.0, 100.0)
            ]
        );
    }

    #[test]
    fn degenerate_segment_is_vertical() {
        let c = control_points(7.0, 7.0, &cfg(), Side::Upper);
        assert!(c.points().iter().all(|p| p.x == 7.0));
    }

    #[test]
    fn end_tangents_are_vertical() {
        for side in [Side::Upper, Side::Lower] {
            let c = control_points(-12.0, 31.0, &cfg(), side);
            assert_eq!(c.derivative(0.0).x, 0.0);
            assert_eq!(c.derivative(1.0).x, 0.0);
            assert!(c.is_y_monotone());
        }
    }

    #[test]
    fn monotonicity_check() {
        let ok = control_points(0.0, 40.0, &cfg(), Side::Upper);
        assert!(ok.is_y_monotone());
        let steep = control_points(
            0.0,
            40.0,
            &LayoutConfig {
                delta_y: 60.0,
                ..cfg()
            },
            Side::Upper,
        );
        assert!(!steep.is_y_monotone());
    }

    #[test]
    fn x_configuration_crosses_once() {
        let c = cfg();
        let a = control_points(0.0, 20.0, &c, Side::Upper);
        let b = control_points(20.0, 0.0, &c, Side::Upper);
        assert_eq!(bezier_pair_crossings(&a, &b, 1e-9), 1);
    }

    #[test]
    fn nested_configuration_does_not_cross() {
        let c = cfg();
        let a = control_points(0.0, 10.0, &c, Side::Upper);
        let b = control_points(20.0, 30.0, &c, Side::Upper);
        assert_eq!(bezier_pair_crossings(&a, &b, 1e-9), 0);
        let far = control_points(500.0, 600.0, &c, Side::Lower);
        assert_eq!(bezier_pair_crossings(&a, &far, 1e-9), 0);
    }

    #[test]
    fn shared_endpoints_do_not_count() {
        let c = cfg();
        // same center
        let a = control_points(0.0, 10.0, &c, Side::Upper);
        let b = control_points(20.0, 10.0, &c, Side::Upper);
        assert_eq!(bezier_pair_crossings(&a, &b, 1e-9), 0);
        // same node, nearly identical centers
        let a = control_points(0.0, 10.0, &c, Side::Upper);
        let b = control_points(0.0, 10.5, &c, Side::Upper);
        assert_eq!(bezier_pair_crossings(&a, &b, 1e-9), 0);
        // upper and lower segment through one center
        let a = control_points(0.0, 10.0, &c, Side::Upper);
        let b = control_points(0.0, 10.0, &c, Side::Lower);
        assert_eq!(bezier_pair_crossings(&a, &b, 1e-9), 0);
    }

    #[test]
    fn render_biclique_counts() {
        let s =
            BipartiteSlice::with_sizes(2, 3, vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]).unwrap();
        let xs = |n: &str| Some(n[1..].parse::<f64>().unwrap() * 10.0);
        let k22 = Biclique {
            upper: vec![0, 1],
            lower: vec![0, 1],
        };
        let segs = render_biclique(&k22, &s, &xs, 15.0, &cfg(), 3).unwrap();
        assert_eq!(segs.len(), 4);
        let center = Point2::new(15.0, 50.0);
        assert!(segs.iter().all(|c| c.biclique_id == 3));
        assert!(segs[..2].iter().all(|c| c.p3 == center && c.side == Side::Upper));
        assert!(segs[2..].iter().all(|c| c.p0 == center && c.side == Side::Lower));

        let k13 = Biclique {
            upper: vec![0],
            lower: vec![0, 1, 2],
        };
        assert_eq!(render_biclique(&k13, &s, &xs, 0.0, &cfg(), 0).unwrap().len(), 4);
        let k11 = Biclique {
            upper: vec![1],
            lower: vec![2],
        };
        assert_eq!(render_biclique(&k11, &s, &xs, 0.0, &cfg(), 0).unwrap().len(), 2);

        let missing = |_: &str| None;
        assert!(matches!(
            render_biclique(&k11, &s, &missing, 0.0, &cfg(), 0),
            Err(Error::MissingCoordinate(_))
        ));
    }
}
