//! Confluent layered drawings.
//!
//! Each pair of adjacent layers is covered by complete bipartite subgraphs
//! (bicliques), found by coloring a conflict graph over the pair's edges. Every
//! biclique is then drawn as a small tree of cubic Bezier tracks meeting at a
//! shared center, so many edges merge instead of crossing one another.
//!
//! The pipeline is [`graph`] (model and slicing), [`cover`] (bicliques),
//! [`layout`] (tree-center placement), [`curves`] (track geometry),
//! [`multidepth`] (the whole drawing) and [`io`] (input, SVG, DOT).
//! [`oracle`] holds exhaustive reference algorithms for small instances.

pub mod cover;
pub mod curves;
pub mod error;
pub mod graph;
pub mod io;
pub mod layout;
pub mod multidepth;
pub mod oracle;

pub use cover::{
    build_conflict_graph, color_dsatur, color_greedy, color_rlf, cover, extract_bicliques, Biclique,
    BicliqueCover, ColoringAlgorithm, ConflictGraph, EdgeColoring,
};
pub use curves::{bernstein, bezier_eval, bezier_pair_crossings, control_points, CubicBezier, Point2, Side};
pub use error::{Error, Result};
pub use graph::{BipartiteSlice, LayeredGraph, ValidationReport, Violation};
pub use io::{emit_dot, emit_svg, format_input, parse_input};
pub use layout::{
    build_three_layer, orderings_to_coordinates, place_centers_barycenter, reduce_crossings_sweep,
    CenterPlacement, LayoutConfig,
};
pub use multidepth::{confluent_layout, Drawing, DrawingConfig, LayoutOptions, Placement};
