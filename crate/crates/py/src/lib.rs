//! Python bindings. Node arguments and results use dense indices `0..n`;
//! `Graph.labels` maps them back to the ids found in the input.

use pyo3::exceptions::{PyIndexError, PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use walkimmune::graph::{self as core_graph, LoadOptions, NodeId, NodeSet};
use walkimmune::immunize::{
    self, Baseline, GammaMode, GreedyConfig, ImmunizationResult, ScoreParams,
};
use walkimmune::sketch::{default_alpha, DEFAULT_BETA};
use walkimmune::spectral::PowerIterConfig;
use walkimmune::{generators, sketch, spectral, walks, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NodeOutOfRange { .. } | Error::UnknownLabel(_) => {
            PyIndexError::new_err(e.to_string())
        }
        Error::Overflow(_) | Error::SizeLimit { .. } => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn power_config(tolerance: f64, max_iterations: usize, seed: u64) -> PowerIterConfig {
    PowerIterConfig {
        tolerance,
        max_iterations,
        seed,
    }
}

/// Undirected simple graph.
#[pyclass(module = "walkimmune", frozen)]
struct Graph {
    inner: core_graph::Graph,
}

impl Graph {
    fn node_set(&self, nodes: Vec<usize>) -> PyResult<NodeSet> {
        NodeSet::from_indices(self.inner.n(), nodes).map_err(to_py)
    }

    fn node(&self, v: usize) -> PyResult<NodeId> {
        let v = NodeId::from(v);
        self.inner.check_node(v).map_err(to_py)?;
        Ok(v)
    }
}

#[pymethods]
impl Graph {
    /// Build from `(u, v)` index pairs; self-loops and duplicates are dropped.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = core_graph::Graph::from_edges(n, &edges).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Parse edge-list text. Node ids are compacted in ascending order.
    #[staticmethod]
    #[pyo3(signature = (text, one_indexed = false))]
    fn parse(text: &str, one_indexed: bool) -> PyResult<Self> {
        let opts = LoadOptions {
            one_indexed,
            allow_comments: true,
        };
        let loaded = core_graph::Graph::parse_edge_list(text, opts).map_err(to_py)?;
        Ok(Self {
            inner: loaded.graph,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn labels(&self) -> Vec<i64> {
        self.inner.labels().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        Ok(self.inner.degree(self.node(v)?))
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<u32>> {
        Ok(self.inner.neighbors(self.node(v)?).to_vec())
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner
            .edges()
            .map(|(u, v)| (u.index(), v.index()))
            .collect()
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    /// Returns the remaining graph and, for each of its nodes, the parent index.
    fn remove_nodes(&self, nodes: Vec<usize>) -> PyResult<(Graph, Vec<usize>)> {
        let sub = self.inner.remove_nodes(&self.node_set(nodes)?);
        let parent = sub.parent.iter().map(|v| v.index()).collect();
        Ok((Graph { inner: sub.graph }, parent))
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

fn result_dict<'py>(py: Python<'py>, r: &ImmunizationResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item(
        "selected",
        r.selected.iter().map(|v| v.index()).collect::<Vec<_>>(),
    )?;
    d.set_item("labels", r.labels.clone())?;
    d.set_item(
        "marginals",
        r.steps.iter().map(|s| s.marginal).collect::<Vec<_>>(),
    )?;
    d.set_item("lambda_before", r.spectra.before)?;
    d.set_item("lambda_after", r.spectra.after)?;
    d.set_item("eigendrop", r.spectra.drop)?;
    d.set_item("eigendrop_pct", r.spectra.drop_pct)?;
    d.set_item("converged", r.spectra.converged)?;
    d.set_item("select_seconds", r.timings.select.as_secs_f64())?;
    d.set_item("eval_seconds", r.timings.eval.as_secs_f64())?;
    Ok(d)
}

#[pyfunction]
fn karate() -> Graph {
    Graph {
        inner: generators::karate(),
    }
}

#[pyfunction]
fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    Graph {
        inner: generators::gnp(n, p, seed),
    }
}

#[pyfunction]
#[pyo3(signature = (g, tolerance = 1e-9, max_iterations = 10_000, seed = 0))]
fn lambda_max(
    py: Python<'_>,
    g: &Graph,
    tolerance: f64,
    max_iterations: usize,
    seed: u64,
) -> PyResult<f64> {
    let cfg = power_config(tolerance, max_iterations, seed);
    let r = py
        .detach(|| spectral::lambda_max(&g.inner, &cfg))
        .map_err(to_py)?;
    Ok(r.lambda_max)
}

/// `(lambda_before, lambda_after, drop, drop_pct)` for removing `nodes`.
#[pyfunction]
fn eigendrop(py: Python<'_>, g: &Graph, nodes: Vec<usize>) -> PyResult<(f64, f64, f64, f64)> {
    let set = g.node_set(nodes)?;
    let d = py
        .detach(|| spectral::eigendrop(&g.inner, &set, &PowerIterConfig::default()))
        .map_err(to_py)?;
    Ok((d.before, d.after, d.drop, d.drop_pct))
}

#[pyfunction]
fn trace_power(py: Python<'_>, g: &Graph, p: u32) -> PyResult<u128> {
    py.detach(|| spectral::trace_power(&g.inner, p))
        .map_err(to_py)
}

/// Exact closed 6-walk count for every node.
#[pyfunction]
fn exact_cw6_all(py: Python<'_>, g: &Graph) -> PyResult<Vec<u64>> {
    let table = py
        .detach(|| walks::exact_cw6_all(&g.inner))
        .map_err(to_py)?;
    Ok(table.as_slice().to_vec())
}

/// Enumeration count for one node; small graphs only.
#[pyfunction]
fn brute_force_cw6(g: &Graph, v: usize) -> PyResult<u64> {
    walks::brute_force_cw6(&g.inner, g.node(v)?).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (g, alpha = None, beta = DEFAULT_BETA, seed = 0))]
fn estimate_walks(
    py: Python<'_>,
    g: &Graph,
    alpha: Option<usize>,
    beta: usize,
    seed: u64,
) -> PyResult<Vec<f64>> {
    let alpha = alpha.unwrap_or_else(|| default_alpha(g.inner.n()));
    let est = py
        .detach(|| sketch::estimate_walks(&g.inner, alpha, beta, seed))
        .map_err(to_py)?;
    Ok(est.values)
}

/// Selection score of `nodes` given per-node walk weights.
#[pyfunction]
fn score(g: &Graph, walks: Vec<f64>, nodes: Vec<usize>, gamma: f64) -> PyResult<f64> {
    if walks.len() != g.inner.n() {
        return Err(PyValueError::new_err("need one walk weight per node"));
    }
    let params = ScoreParams::new(gamma).map_err(to_py)?;
    Ok(immunize::score(
        &g.inner,
        &walks,
        &g.node_set(nodes)?,
        &params,
    ))
}

#[pyfunction]
#[pyo3(signature = (g, k, alpha = None, beta = DEFAULT_BETA, seed = 0, gamma_mode = "k-times-max"))]
fn greedy_select<'py>(
    py: Python<'py>,
    g: &Graph,
    k: usize,
    alpha: Option<usize>,
    beta: usize,
    seed: u64,
    gamma_mode: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let gamma_mode: GammaMode = gamma_mode.parse().map_err(to_py)?;
    let cfg = GreedyConfig {
        alpha,
        beta,
        base_seed: seed,
        gamma_mode,
    };
    let r = py
        .detach(|| immunize::greedy_select(&g.inner, k, &cfg, &PowerIterConfig::default()))
        .map_err(to_py)?;
    result_dict(py, &r)
}

/// Repeatedly remove the node with the largest eigenvalue drop.
#[pyfunction]
fn greedy1<'py>(py: Python<'py>, g: &Graph, k: usize) -> PyResult<Bound<'py, PyDict>> {
    let r = py
        .detach(|| immunize::greedy1_baseline(&g.inner, k, &PowerIterConfig::default()))
        .map_err(to_py)?;
    result_dict(py, &r)
}

/// `method` is `"degree"` or `"random"`.
#[pyfunction]
#[pyo3(signature = (g, k, method = "degree", seed = 0))]
fn baseline<'py>(
    py: Python<'py>,
    g: &Graph,
    k: usize,
    method: &str,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let method = match method {
        "degree" => Baseline::Degree,
        "random" => Baseline::Random { seed },
        other => return Err(PyValueError::new_err(format!("unknown baseline {other:?}"))),
    };
    let r = py
        .detach(|| immunize::baseline_select(&g.inner, k, method, &PowerIterConfig::default()))
        .map_err(to_py)?;
    result_dict(py, &r)
}

#[pymodule]
#[pyo3(name = "walkimmune")]
fn walkimmune_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(karate, m)?)?;
    m.add_function(wrap_pyfunction!(gnp, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_max, m)?)?;
    m.add_function(wrap_pyfunction!(eigendrop, m)?)?;
    m.add_function(wrap_pyfunction!(trace_power, m)?)?;
    m.add_function(wrap_pyfunction!(exact_cw6_all, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_cw6, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_walks, m)?)?;
    m.add_function(wrap_pyfunction!(score, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_select, m)?)?;
    m.add_function(wrap_pyfunction!(greedy1, m)?)?;
    m.add_function(wrap_pyfunction!(baseline, m)?)?;
    Ok(())
}
