use thiserror::Error;

use crate::graph::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(ValidationReport),

    #[error("layer pair index {index} out of range (graph has {layers} layers)")]
    PairOutOfRange { index: usize, layers: usize },

    #[error("invalid slice: {0}")]
    InvalidSlice(String),

    #[error("vertex order is not a permutation of 0..{n}")]
    MalformedOrder { n: usize },

    #[error("invalid conflict graph: {0}")]
    InvalidConflictGraph(String),

    #[error("coloring is not proper: edges {0} and {1} conflict but share color {2}")]
    ImproperColoring(usize, usize, usize),

    #[error("coloring covers {got} edges, slice has {expected}")]
    ColoringSizeMismatch { expected: usize, got: usize },

    /// A proper coloring produced an incomplete biclique. This cannot happen
    /// for bipartite input and indicates a bug.
    #[error(
        "internal error: color class {color} does not induce a complete biclique (missing {upper}-{lower})"
    )]
    IncompleteBiclique {
        color: usize,
        upper: String,
        lower: String,
    },

    #[error("no x-coordinate for node {0}")]
    MissingCoordinate(String),

    #[error("bernstein index out of range: k={k}, n={n}")]
    BernsteinRange { k: usize, n: usize },

    #[error("a Bezier curve needs at least 2 control points, got {0}")]
    TooFewControlPoints(usize),

    #[error("unsupported depth {0} (supported: 1, 2)")]
    UnsupportedDepth(usize),

    #[error("instance too large for exhaustive search: {what} = {got} (limit {limit})")]
    SizeGuard {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// True for errors that signal a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::IncompleteBiclique { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
