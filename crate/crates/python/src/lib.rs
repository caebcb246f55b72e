//! Python bindings for `confluent-core`.
//!
//! ```python
//! import confluent
//! g = confluent.parse_input("layer a b\nlayer c d\nedge a c\nedge b d\n")
//! svg = g.layout(depth=1).to_svg()
//! ```

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use confluent_core as core;
use confluent_core::oracle;

fn to_py(e: core::Error) -> PyErr {
    if e.is_internal() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn parse_arg<T: std::str::FromStr>(what: &str, value: &str) -> PyResult<T> {
    value
        .parse()
        .map_err(|_| PyValueError::new_err(format!("unknown {what} {value:?}")))
}

type Xy = (f64, f64);

/// A graph whose nodes sit on horizontal layers, edges joining adjacent ones.
#[pyclass(name = "LayeredGraph", module = "confluent")]
struct PyLayeredGraph {
    graph: core::LayeredGraph,
    config: core::DrawingConfig,
}

#[pymethods]
impl PyLayeredGraph {
    #[new]
    #[pyo3(signature = (layers, edges, positions=None))]
    fn new(
        layers: Vec<Vec<String>>,
        edges: Vec<(String, String)>,
        positions: Option<BTreeMap<String, f64>>,
    ) -> Self {
        let mut graph = core::LayeredGraph::new(layers, edges);
        graph.node_x = positions.unwrap_or_default();
        PyLayeredGraph {
            graph,
            config: core::DrawingConfig::default(),
        }
    }

    #[getter]
    fn layers(&self) -> Vec<Vec<String>> {
        self.graph.layers.clone()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        self.graph.edges.clone()
    }

    #[getter]
    fn pair_count(&self) -> usize {
        self.graph.pair_count()
    }

    /// Problems with the graph, one message each; empty when valid.
    fn validate(&self) -> Vec<String> {
        self.graph
            .validate()
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    /// The bipartite graph between layers `pair` and `pair + 1`.
    fn slice(&self, pair: usize) -> PyResult<PyBipartiteSlice> {
        Ok(PyBipartiteSlice {
            slice: self.graph.slice(pair).map_err(to_py)?,
        })
    }

    /// Compute a confluent drawing.
    #[pyo3(signature = (depth=1, placement="barycenter", coloring="rlf", priority_pq=false,
                        smoothing=false, delta=None, delta_y=None))]
    #[allow(clippy::too_many_arguments)]
    fn layout(
        &self,
        depth: usize,
        placement: &str,
        coloring: &str,
        priority_pq: bool,
        smoothing: bool,
        delta: Option<f64>,
        delta_y: Option<f64>,
    ) -> PyResult<PyDrawing> {
        let mut config = self.config;
        if let Some(d) = delta {
            config.min_separation = d;
        }
        if let Some(dy) = delta_y {
            config.delta_y = Some(dy);
        }
        let opts = core::LayoutOptions {
            depth,
            placement: parse_arg("placement", placement)?,
            algorithm: parse_arg("coloring algorithm", coloring)?,
            priority_pq,
            smoothing,
            config,
            ..Default::default()
        };
        let drawing = core::confluent_layout(&self.graph, &opts).map_err(to_py)?;
        Ok(PyDrawing { drawing })
    }

    /// The graph in the line input format.
    fn to_text(&self) -> String {
        core::format_input(&self.graph, &self.config)
    }

    fn __repr__(&self) -> String {
        format!(
            "LayeredGraph(layers={}, nodes={}, edges={})",
            self.graph.layers.len(),
            self.graph.node_count(),
            self.graph.edges.len()
        )
    }
}

/// The edges between two adjacent layers.
#[pyclass(name = "BipartiteSlice", module = "confluent")]
struct PyBipartiteSlice {
    slice: core::BipartiteSlice,
}

#[pymethods]
impl PyBipartiteSlice {
    /// Slice with nodes `u1..` and `l1..`; edges are (upper, lower) indices.
    #[new]
    fn new(n_upper: usize, n_lower: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyBipartiteSlice {
            slice: core::BipartiteSlice::with_sizes(n_upper, n_lower, edges).map_err(to_py)?,
        })
    }

    #[getter]
    fn upper(&self) -> Vec<String> {
        self.slice.upper().to_vec()
    }

    #[getter]
    fn lower(&self) -> Vec<String> {
        self.slice.lower().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.slice.edges().to_vec()
    }

    /// Biclique cover as (upper names, lower names) pairs.
    #[pyo3(signature = (algorithm="rlf", priority_pq=false))]
    fn cover(&self, algorithm: &str, priority_pq: bool) -> PyResult<Vec<(Vec<String>, Vec<String>)>> {
        let alg = parse_arg("coloring algorithm", algorithm)?;
        Ok(core::cover(&self.slice, alg, priority_pq).map_err(to_py)?.named())
    }

    /// Conflict-graph edges between slice edge indices.
    fn conflict_edges(&self) -> Vec<(usize, usize)> {
        core::build_conflict_graph(&self.slice).edges()
    }

    /// Colors of the conflict graph's vertices (slice edges) under one of the
    /// heuristics.
    #[pyo3(signature = (algorithm="rlf"))]
    fn coloring(&self, algorithm: &str) -> PyResult<Vec<usize>> {
        let cg = core::build_conflict_graph(&self.slice);
        let coloring = match parse_arg("coloring algorithm", algorithm)? {
            core::ColoringAlgorithm::Rlf => core::color_rlf(&cg),
            core::ColoringAlgorithm::Dsatur => core::color_dsatur(&cg),
            core::ColoringAlgorithm::Greedy => {
                let order: Vec<usize> = (0..cg.len()).collect();
                core::color_greedy(&cg, &order).map_err(to_py)?
            }
        };
        Ok(coloring.colors)
    }

    /// Exact minimum biclique cover size (small slices only).
    fn min_cover_size(&self) -> PyResult<usize> {
        oracle::exact_min_biclique_cover(&self.slice).map_err(to_py)
    }

    /// Exact chromatic number of the conflict graph (small slices only).
    fn chromatic_number(&self) -> PyResult<usize> {
        oracle::exact_chromatic_number(&core::build_conflict_graph(&self.slice)).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.slice.edge_count()
    }
}

/// A finished drawing: node positions and cubic track segments.
#[pyclass(name = "Drawing", module = "confluent")]
struct PyDrawing {
    drawing: core::Drawing,
}

#[pymethods]
impl PyDrawing {
    fn to_svg(&self) -> String {
        core::emit_svg(&self.drawing)
    }

    fn to_dot(&self) -> String {
        core::emit_dot(&self.drawing)
    }

    /// Control points of every segment.
    #[getter]
    fn segments(&self) -> Vec<[Xy; 4]> {
        self.drawing
            .segments
            .iter()
            .map(|s| s.points().map(|p| (p.x, p.y)))
            .collect()
    }

    #[getter]
    fn node_positions(&self) -> BTreeMap<String, Xy> {
        self.drawing
            .node_glyphs
            .iter()
            .map(|g| (g.id.clone(), (g.pos.x, g.pos.y)))
            .collect()
    }

    #[getter]
    fn covers_computed(&self) -> usize {
        self.drawing.covers_computed
    }

    #[getter]
    fn covers_laid_out(&self) -> usize {
        self.drawing.covers_laid_out
    }

    /// Sizes of the drawn covers, per layer pair.
    #[getter]
    fn cover_sizes(&self) -> Vec<Vec<usize>> {
        self.drawing
            .slices
            .iter()
            .map(|s| s.laid_out_cover_sizes.clone())
            .collect()
    }

    fn curve_crossings(&self) -> usize {
        self.drawing.curve_crossings()
    }

    fn straight_crossings(&self) -> usize {
        self.drawing.straight_crossings()
    }
}

/// Parse the line or JSON input format.
#[pyfunction]
fn parse_input(text: &str) -> PyResult<PyLayeredGraph> {
    let (graph, config) = core::parse_input(text).map_err(to_py)?;
    Ok(PyLayeredGraph { graph, config })
}

/// Bernstein basis polynomial `b_{k,n}(u)`.
#[pyfunction]
fn bernstein(k: usize, n: usize, u: f64) -> PyResult<f64> {
    core::bernstein(k, n, u).map_err(to_py)
}

/// Evaluate a Bezier curve of any degree at `u`.
#[pyfunction]
fn bezier_eval(points: Vec<Xy>, u: f64) -> PyResult<Xy> {
    let pts: Vec<core::Point2> = points.into_iter().map(|(x, y)| core::Point2::new(x, y)).collect();
    let p = core::bezier_eval(&pts, u).map_err(to_py)?;
    Ok((p.x, p.y))
}

/// Spread positions apart to at least `delta`, keeping their order.
#[pyfunction]
fn separate(positions: Vec<f64>, delta: f64) -> Vec<f64> {
    core::layout::separate_sorted(&positions, delta)
}

#[pymodule]
fn confluent(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLayeredGraph>()?;
    m.add_class::<PyBipartiteSlice>()?;
    m.add_class::<PyDrawing>()?;
    m.add_function(wrap_pyfunction!(parse_input, m)?)?;
    m.add_function(wrap_pyfunction!(bernstein, m)?)?;
    m.add_function(wrap_pyfunction!(bezier_eval, m)?)?;
    m.add_function(wrap_pyfunction!(separate, m)?)?;
    Ok(())
}
