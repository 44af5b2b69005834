//! Python bindings for the steinerpow recognizers, verifier, oracle and
//! generators.

use std::time::Duration;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use steinerpow::chordal::{clique_arrangement as arrangement, is_chordal, is_strongly_chordal};
use steinerpow::dp::{recognize_4_steiner as rec4, recognize_6_leaf as rec6, witness_invariants as invariants, RejectReason};
use steinerpow::sweep::{run as run_sweep, Recognizers, Scale};
use steinerpow::testkit::{self, OracleBudget, OracleOutcome};
use steinerpow::tree::{canonical_form, tree_power_graph, verify_leaf_root, verify_root};
use steinerpow::{Error, Graph, NodeLabel, SteinerTree};

fn value_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", module = "steinerpow_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGraph {
    pub inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::from_edges(n, &edges).map_err(value_err)? })
    }

    /// Parse the "n m" edge-list format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::parse_edge_list(text).map_err(value_err)? })
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph { inner: Graph::cycle(n) }
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph { inner: Graph::path(n) }
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph { inner: Graph::complete(n) }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.inner.n() && v < self.inner.n() && self.inner.has_edge(u, v)
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn is_chordal(&self) -> bool {
        is_chordal(&self.inner).is_ok()
    }

    fn is_strongly_chordal(&self) -> bool {
        is_chordal(&self.inner).is_ok() && matches!(is_strongly_chordal(&self.inner), Ok(Some(_)))
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

#[pyclass(name = "SteinerTree", module = "steinerpow_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTree {
    pub inner: SteinerTree,
}

#[pymethods]
impl PyTree {
    /// Parse the "N" + "id parent label" format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyTree { inner: SteinerTree::parse(text).map_err(value_err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Vertex carried by each node, None for Steiner nodes.
    fn labels(&self) -> Vec<Option<usize>> {
        self.inner.labels().iter().map(|l| l.vertex()).collect()
    }

    fn reals(&self) -> Vec<usize> {
        self.inner.reals().into_vec()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    #[pyo3(signature = (graph, k, leaf = false))]
    fn verify(&self, graph: &PyGraph, k: usize, leaf: bool) -> bool {
        if leaf {
            verify_leaf_root(&self.inner, &graph.inner, k)
        } else {
            verify_root(&self.inner, &graph.inner, k)
        }
    }

    /// The graph on the reals with an edge for every pair at distance <= k.
    fn power(&self, k: usize) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: tree_power_graph(&self.inner, k).map_err(value_err)? })
    }

    fn canonical_form(&self) -> String {
        canonical_form(&self.inner)
    }

    fn __repr__(&self) -> String {
        let steiner = self.inner.labels().iter().filter(|l| **l == NodeLabel::Steiner).count();
        format!("SteinerTree(nodes={}, steiner={steiner})", self.inner.len())
    }
}

#[pyclass(name = "Recognition", module = "steinerpow_py", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct Recognition {
    pub accepted: bool,
    pub tree: Option<PyTree>,
    /// not-chordal | not-strongly-chordal | separator-chain | dp-exhausted
    pub reason: Option<String>,
}

#[pymethods]
impl Recognition {
    fn __bool__(&self) -> bool {
        self.accepted
    }

    fn __repr__(&self) -> String {
        match &self.reason {
            None => "Recognition(accepted)".to_string(),
            Some(r) => format!("Recognition(rejected: {r})"),
        }
    }
}

impl From<Result<SteinerTree, RejectReason>> for Recognition {
    fn from(r: Result<SteinerTree, RejectReason>) -> Self {
        match r {
            Ok(t) => Recognition { accepted: true, tree: Some(PyTree { inner: t }), reason: None },
            Err(e) => Recognition { accepted: false, tree: None, reason: Some(e.as_str().to_string()) },
        }
    }
}

#[pyfunction]
pub fn recognize_4_steiner(py: Python<'_>, graph: &PyGraph) -> Recognition {
    let g = graph.inner.clone();
    py.detach(move || rec4(&g)).into()
}

#[pyfunction]
pub fn recognize_6_leaf(py: Python<'_>, graph: &PyGraph) -> Recognition {
    let g = graph.inner.clone();
    py.detach(move || rec6(&g)).into()
}

/// Exhaustive search; returns ("found", tree), ("not-found", None) or
/// ("inconclusive", None) when the budget runs out.
#[pyfunction]
#[pyo3(signature = (graph, k, leaf = false, node_cap = 5_000_000, time_cap = None, max_steiner = None))]
pub fn oracle(
    py: Python<'_>,
    graph: &PyGraph,
    k: usize,
    leaf: bool,
    node_cap: usize,
    time_cap: Option<f64>,
    max_steiner: Option<usize>,
) -> (&'static str, Option<PyTree>) {
    let g = graph.inner.clone();
    let b = OracleBudget { max_steiner, node_cap, time_cap: time_cap.map(Duration::from_secs_f64) };
    let res = py.detach(move || {
        if leaf {
            testkit::oracle_leaf_root(&g, k, &b)
        } else {
            testkit::oracle_steiner_root(&g, k, &b)
        }
    });
    match res {
        OracleOutcome::Found(t) => ("found", Some(PyTree { inner: t })),
        OracleOutcome::NotFound => ("not-found", None),
        OracleOutcome::Inconclusive => ("inconclusive", None),
    }
}

#[pyfunction]
pub fn random_yes_instance(k: usize, n_real: usize, n_steiner: usize, seed: u64) -> PyResult<(PyGraph, PyTree)> {
    if n_real == 0 {
        return Err(PyValueError::new_err("n_real must be at least 1"));
    }
    let (g, t) = testkit::random_yes_instance(k, n_real, n_steiner, seed);
    Ok((PyGraph { inner: g }, PyTree { inner: t }))
}

#[pyfunction]
pub fn random_leaf_instance(k: usize, n_leaves: usize, n_internal: usize, seed: u64) -> PyResult<(PyGraph, PyTree)> {
    if n_leaves == 0 || n_internal == 0 {
        return Err(PyValueError::new_err("n_leaves and n_internal must be at least 1"));
    }
    let (g, t) = testkit::random_leaf_instance(k, n_leaves, n_internal, seed);
    Ok((PyGraph { inner: g }, PyTree { inner: t }))
}

#[pyfunction]
pub fn random_strongly_chordal(n: usize, seed: u64) -> PyResult<PyGraph> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be at least 1"));
    }
    Ok(PyGraph { inner: testkit::random_strongly_chordal(n, seed) })
}

/// None when the witness satisfies every structural invariant, otherwise a
/// description of the first violation.
#[pyfunction]
pub fn witness_invariants(tree: &PyTree, graph: &PyGraph) -> Option<String> {
    invariants(&tree.inner, &graph.inner).err()
}

/// Text dump of the clique arrangement of a connected strongly chordal graph.
#[pyfunction]
pub fn clique_arrangement(graph: &PyGraph) -> PyResult<String> {
    if !graph.inner.is_connected() {
        return Err(PyValueError::new_err("graph must be connected"));
    }
    Ok(arrangement(&graph.inner).map_err(value_err)?.dump())
}

/// Runs the acceptance criteria; returns (id, name, passed, detail) rows.
#[pyfunction]
#[pyo3(signature = (small = true, only = Vec::new()))]
pub fn sweep(py: Python<'_>, small: bool, only: Vec<usize>) -> Vec<(usize, &'static str, bool, String)> {
    let scale = if small { Scale::Small } else { Scale::Full };
    py.detach(move || run_sweep(&Recognizers::default(), scale, &only))
        .into_iter()
        .map(|r| (r.id, r.name, r.pass, r.detail))
        .collect()
}

#[pymodule]
pub fn steinerpow_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyTree>()?;
    m.add_class::<Recognition>()?;
    m.add_function(wrap_pyfunction!(recognize_4_steiner, m)?)?;
    m.add_function(wrap_pyfunction!(recognize_6_leaf, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(random_yes_instance, m)?)?;
    m.add_function(wrap_pyfunction!(random_leaf_instance, m)?)?;
    m.add_function(wrap_pyfunction!(random_strongly_chordal, m)?)?;
    m.add_function(wrap_pyfunction!(witness_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(clique_arrangement, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
