//! Input parsing and SVG / DOT output.
//!
//! Two input formats are accepted. The line format:
//!
//! ```text
//! # comment
//! layer u1 u2
//! layer l1 l2
//! edge u1 l1
//! pos u1 0
//! set delta 50
//! ```
//!
//! and a JSON object with keys `layers`, `edges`, `positions` and `config`:
//!
//! ```json
//! {"layers": [["u1", "u2"], ["l1", "l2"]], "edges": [["u1", "l1"]],
//!  "positions": {"u1": 0}, "config": {"delta": 50}}
//! ```
//!
//! Config keys: `delta` (minimum center separation), `delta_y` (curve
//! shape), `spacing` (node spacing), `layer_gap`.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::Deserialize;

use crate::curves::{CubicBezier, Point2};
use crate::error::{Error, Result};
use crate::graph::LayeredGraph;
use crate::multidepth::{Drawing, DrawingConfig};

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct JsonConfig {
    delta: Option<f64>,
    delta_y: Option<f64>,
    spacing: Option<f64>,
    layer_gap: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonInput {
    layers: Vec<Vec<String>>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    #[serde(default)]
    positions: BTreeMap<String, f64>,
    #[serde(default)]
    config: JsonConfig,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn apply_setting(cfg: &mut DrawingConfig, key: &str, value: f64) -> std::result::Result<(), String> {
    if !value.is_finite() {
        return Err(format!("value for {key} must be finite"));
    }
    match key {
        "delta" => cfg.min_separation = value,
        "delta_y" | "delta-y" => cfg.delta_y = Some(value),
        "spacing" => cfg.node_spacing = value,
        "layer_gap" | "layer-gap" => cfg.layer_gap = value,
        other => return Err(format!("unknown setting {other:?}")),
    }
    Ok(())
}

/// Parse either input format, then validate the graph and configuration.
pub fn parse_input(text: &str) -> Result<(LayeredGraph, DrawingConfig)> {
    let (graph, cfg) = if text.trim_start().starts_with('{') {
        parse_json(text)?
    } else {
        parse_lines(text)?
    };
    graph.check()?;
    cfg.validate()?;
    Ok((graph, cfg))
}

fn parse_json(text: &str) -> Result<(LayeredGraph, DrawingConfig)> {
    let doc: JsonInput =
        serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.column(), e.to_string()))?;
    let mut cfg = DrawingConfig::default();
    for (key, value) in [
        ("delta", doc.config.delta),
        ("delta_y", doc.config.delta_y),
        ("spacing", doc.config.spacing),
        ("layer_gap", doc.config.layer_gap),
    ] {
        if let Some(v) = value {
            apply_setting(&mut cfg, key, v).map_err(|m| parse_error(0, 0, m))?;
        }
    }
    let declared: HashSet<&String> = doc.layers.iter().flatten().collect();
    if let Some(unknown) = doc.positions.keys().find(|n| !declared.contains(n)) {
        return Err(parse_error(
            0,
            0,
            format!("position for undeclared node {unknown:?}"),
        ));
    }
    let graph = LayeredGraph {
        layers: doc.layers,
        edges: doc.edges,
        node_x: doc.positions,
        node_labels: BTreeMap::new(),
    };
    Ok((graph, cfg))
}

fn parse_lines(text: &str) -> Result<(LayeredGraph, DrawingConfig)> {
    let mut graph = LayeredGraph::default();
    let mut cfg = DrawingConfig::default();
    let mut declared = HashSet::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        // (column, token), columns 1-based
        let tokens: Vec<(usize, &str)> = content
            .char_indices()
            .filter(|&(i, c)| !c.is_whitespace() && (i == 0 || content[..i].ends_with(char::is_whitespace)))
            .map(|(i, _)| {
                let rest = &content[i..];
                let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
                (i + 1, &rest[..end])
            })
            .collect();
        let Some(&(col, keyword)) = tokens.first() else {
            continue;
        };
        let args = &tokens[1..];
        let expect = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(parse_error(
                    line_no,
                    col,
                    format!("{keyword} takes {n} arguments, got {}", args.len()),
                ))
            }
        };
        let number = |(c, tok): (usize, &str)| {
            tok.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_error(line_no, c, format!("expected a number, got {tok:?}")))
        };
        match keyword {
            "layer" => {
                let mut layer = Vec::new();
                for &(c, name) in args {
                    if !declared.insert(name.to_string()) {
                        return Err(parse_error(line_no, c, format!("node {name:?} declared twice")));
                    }
                    layer.push(name.to_string());
                }
                graph.layers.push(layer);
            }
            "edge" => {
                expect(2)?;
                for &(c, name) in args {
                    if !declared.contains(name) {
                        return Err(parse_error(line_no, c, format!("undeclared node {name:?}")));
                    }
                }
                graph.edges.push((args[0].1.to_string(), args[1].1.to_string()));
            }
            "pos" => {
                expect(2)?;
                let (c, name) = args[0];
                if !declared.contains(name) {
                    return Err(parse_error(line_no, c, format!("undeclared node {name:?}")));
                }
                graph.node_x.insert(name.to_string(), number(args[1])?);
            }
            "set" => {
                expect(2)?;
                let value = number(args[1])?;
                apply_setting(&mut cfg, args[0].1, value).map_err(|m| parse_error(line_no, args[0].0, m))?;
            }
            other => {
                return Err(parse_error(line_no, col, format!("unknown keyword {other:?}")));
            }
        }
    }
    Ok((graph, cfg))
}

/// Write a graph (and non-default settings) in the line format.
pub fn format_input(graph: &LayeredGraph, cfg: &DrawingConfig) -> String {
    let mut out = String::new();
    for layer in &graph.layers {
        out.push_str("layer");
        for n in layer {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
    }
    for (a, b) in &graph.edges {
        let _ = writeln!(out, "edge {a} {b}");
    }
    for (n, x) in &graph.node_x {
        let _ = writeln!(out, "pos {n} {x:?}");
    }
    let def = DrawingConfig::default();
    if cfg.min_separation != def.min_separation {
        let _ = writeln!(out, "set delta {:?}", cfg.min_separation);
    }
    if let Some(dy) = cfg.delta_y {
        let _ = writeln!(out, "set delta_y {dy:?}");
    }
    if cfg.node_spacing != def.node_spacing {
        let _ = writeln!(out, "set spacing {:?}", cfg.node_spacing);
    }
    if cfg.layer_gap != def.layer_gap {
        let _ = writeln!(out, "set layer_gap {:?}", cfg.layer_gap);
    }
    out
}

/// Fixed 3-decimal formatting; negative zero prints as zero.
fn fx(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// Shortest of the 3-decimal form with trailing zeros removed.
fn compact(v: f64) -> String {
    let s = fx(v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

const NODE_RADIUS: f64 = 6.0;
const MARGIN: f64 = 30.0;

fn bounds(drawing: &Drawing) -> Option<(Point2, Point2)> {
    let pts = drawing
        .node_glyphs
        .iter()
        .map(|g| g.pos)
        .chain(drawing.segments.iter().flat_map(|s| s.points()));
    pts.fold(None, |acc, p| match acc {
        None => Some((p, p)),
        Some((lo, hi)) => Some((
            Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
            Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
        )),
    })
}

fn path_data(s: &CubicBezier) -> String {
    format!(
        "M {} {} C {} {} {} {} {} {}",
        fx(s.p0.x),
        fx(s.p0.y),
        fx(s.p1.x),
        fx(s.p1.y),
        fx(s.p2.x),
        fx(s.p2.y),
        fx(s.p3.x),
        fx(s.p3.y)
    )
}

/// Standalone SVG: one cubic path per track segment, then a circle and a
/// label per node.
pub fn emit_svg(drawing: &Drawing) -> String {
    let (lo, hi) = bounds(drawing).unwrap_or((Point2::new(0.0, 0.0), Point2::new(0.0, 0.0)));
    let x0 = lo.x - MARGIN;
    let y0 = lo.y - MARGIN;
    let w = hi.x - lo.x + 2.0 * MARGIN;
    let h = hi.y - lo.y + 2.0 * MARGIN;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        fx(w),
        fx(h),
        fx(x0),
        fx(y0),
        fx(w),
        fx(h)
    );
    out.push_str("<g fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\">\n");
    for s in &drawing.segments {
        let _ = writeln!(
            out,
            "<path class=\"track\" data-biclique=\"{}\" d=\"{}\"/>",
            s.biclique_id,
            path_data(s)
        );
    }
    out.push_str("</g>\n");
    out.push_str("<g font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">\n");
    for g in &drawing.node_glyphs {
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#ffffff\" stroke=\"#000000\"/>",
            fx(g.pos.x),
            fx(g.pos.y),
            fx(NODE_RADIUS)
        );
        let label_y = if g.layer == 0 {
            g.pos.y - NODE_RADIUS - 4.0
        } else {
            g.pos.y + NODE_RADIUS + 12.0
        };
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\">{}</text>",
            fx(g.pos.x),
            fx(label_y),
            escape_xml(&g.label)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn dot_point(p: Point2) -> String {
    // DOT's y axis points up
    format!("{},{}", compact(p.x), compact(-p.y))
}

/// DOT graph with fixed node positions and one spline per original edge.
///
/// Each spline chains the edge's cubic segments (3n+1 points), so a renderer
/// that honours `pos` attributes reproduces the drawing as laid out.
pub fn emit_dot(drawing: &Drawing) -> String {
    let mut out = String::from("graph G {\n");
    if !drawing.node_glyphs.is_empty() {
        out.push_str("  node [shape=circle, width=0.2, fixedsize=true];\n");
    }
    for g in &drawing.node_glyphs {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{}\", pos=\"{}\"];",
            escape_dot(&g.id),
            escape_dot(&g.label),
            dot_point(g.pos)
        );
    }
    for path in &drawing.edge_paths {
        let mut pts: Vec<Point2> = Vec::new();
        for &i in &path.segments {
            let s = &drawing.segments[i];
            if pts.is_empty() {
                pts.push(s.p0);
            }
            pts.extend([s.p1, s.p2, s.p3]);
        }
        let spline: Vec<String> = pts.into_iter().map(dot_point).collect();
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\" [pos=\"{}\"];",
            escape_dot(&path.upper),
            escape_dot(&path.lower),
            spline.join(" ")
        );
    }
    out.push_str("}\n");
    out
}
