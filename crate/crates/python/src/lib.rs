//! Python bindings: a `Graph` class plus the matching, extension,
//! classification and generation entry points.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use regext_core as core;
use regext_core::{Evidence, ExtendError, ExtendToError, Strategy, Target, TutteViolator};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", module = "regext", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph {
    inner: core::Graph,
}

impl From<core::Graph> for PyGraph {
    fn from(inner: core::Graph) -> Self {
        PyGraph { inner }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Graph::build(n, &edges).map(Into::into).map_err(value_error)
    }

    #[staticmethod]
    fn from_graph6(line: &str) -> PyResult<Self> {
        core::parse_graph6(line).map(Into::into).map_err(value_error)
    }

    fn to_graph6(&self) -> String {
        self.inner.to_graph6()
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.order() {
            return Err(value_error(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    /// The common degree, or None when degrees differ.
    fn regularity(&self) -> Option<usize> {
        self.inner.regularity().ok()
    }

    fn complement(&self) -> Self {
        self.inner.complement().into()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Graph.from_graph6({:?})", self.inner.to_graph6())
    }
}

fn violator_dict<'py>(py: Python<'py>, v: &TutteViolator) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("s", v.s.as_slice().to_vec())?;
    d.set_item("odd_count", v.odd_count)?;
    Ok(d)
}

/// `{"matching": [...]}` or `{"violator": {"s": [...], "odd_count": k}}`.
#[pyfunction]
fn perfect_matching<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    match core::perfect_matching(&g.inner) {
        Ok(m) => d.set_item("matching", m.edges().to_vec())?,
        Err(v) => d.set_item("violator", violator_dict(py, &v)?)?,
    }
    Ok(d)
}

#[pyfunction]
fn max_matching(g: &PyGraph) -> Vec<(usize, usize)> {
    core::max_matching(&g.inner).edges().to_vec()
}

/// Returns `(graph, matching)`; raises ValueError with the violator when stuck.
#[pyfunction]
#[pyo3(signature = (g, strategy = "auto"))]
fn extend_once(g: &PyGraph, strategy: &str) -> PyResult<(PyGraph, Vec<(usize, usize)>)> {
    let strategy: Strategy = strategy.parse().map_err(value_error)?;
    match core::extend_once(&g.inner, strategy) {
        Ok(ext) => Ok((ext.graph.into(), ext.matching.edges().to_vec())),
        Err(ExtendError::NoMatching(v)) => Err(value_error(format!(
            "complement has no perfect matching: S={:?} leaves {} odd components",
            v.s.as_slice(),
            v.odd_count
        ))),
        Err(e) => Err(value_error(e)),
    }
}

type Edges = Vec<(usize, usize)>;

/// Returns `(final_graph, matchings)`.
#[pyfunction]
#[pyo3(signature = (g, target_r, backtrack = 0))]
fn extend_to(g: &PyGraph, target_r: usize, backtrack: usize) -> PyResult<(PyGraph, Vec<Edges>)> {
    match core::extend_to(&g.inner, target_r, backtrack) {
        Ok(t) => Ok((t.final_graph.into(), t.steps.iter().map(|m| m.edges().to_vec()).collect())),
        Err(ExtendToError::Stuck(f)) => Err(value_error(format!(
            "stuck at r={}: S={:?} leaves {} odd components of the complement",
            f.reached_r,
            f.violator.s.as_slice(),
            f.violator.odd_count
        ))),
        Err(e) => Err(value_error(e)),
    }
}

/// One dict per rule: `rule`, `applies`, `conclusion`, `evidence`.
#[pyfunction]
fn classify<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyList>> {
    let verdicts = core::classify(&g.inner).map_err(value_error)?;
    let out = PyList::empty(py);
    for v in verdicts {
        let d = PyDict::new(py);
        d.set_item("rule", v.rule.id())?;
        d.set_item("applies", v.applies)?;
        d.set_item("conclusion", v.conclusion.to_string())?;
        let ev = PyList::empty(py);
        for e in &v.evidence {
            let item = PyDict::new(py);
            match e {
                Evidence::Biclique(w) => {
                    item.set_item("kind", "biclique")?;
                    item.set_item("part_a", w.part_a.as_slice().to_vec())?;
                    item.set_item("part_b", w.part_b.as_slice().to_vec())?;
                }
                Evidence::Clique { vertices } => {
                    item.set_item("kind", "clique")?;
                    item.set_item("vertices", vertices.as_slice().to_vec())?;
                }
                Evidence::Violator(t) => {
                    item.set_item("kind", "violator")?;
                    item.set_item("violator", violator_dict(py, t)?)?;
                }
            }
            ev.append(item)?;
        }
        d.set_item("evidence", ev)?;
        out.append(d)?;
    }
    Ok(out)
}

#[pyfunction]
fn balloons<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyDict>> {
    let rep = core::balloons(&g.inner);
    let d = PyDict::new(py);
    d.set_item("bridges", rep.bridges)?;
    d.set_item("b", rep.b)?;
    let sets: Vec<Vec<usize>> = rep.balloons.iter().map(|s| s.as_slice().to_vec()).collect();
    d.set_item("balloons", sets)?;
    Ok(d)
}

#[pyfunction]
fn random_regular(n: usize, r: usize, seed: u64) -> PyResult<PyGraph> {
    core::random_regular(n, r, seed).map(Into::into).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (n, r, connected = false))]
fn enumerate_regular(n: usize, r: usize, connected: bool) -> PyResult<Vec<PyGraph>> {
    core::enumerate_regular(n, r, connected)
        .map(|gs| gs.into_iter().map(Into::into).collect())
        .map_err(value_error)
}

#[pyfunction]
fn canonical_form(g: &PyGraph) -> PyResult<String> {
    core::canonical_form(&g.inner)
        .map(|c| c.as_str().to_string())
        .map_err(value_error)
}

/// Summary counters of a verification sweep.
#[pyfunction]
#[pyo3(signature = (rule, n_range, r_range = None, samples = None, seed = 0, jobs = 1))]
fn verify<'py>(
    py: Python<'py>,
    rule: &str,
    n_range: (usize, usize),
    r_range: Option<(usize, usize)>,
    samples: Option<usize>,
    seed: u64,
    jobs: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let target: Target = rule.parse().map_err(value_error)?;
    let mut cfg = core::VerifyConfig::new(target, n_range.0..=n_range.1);
    cfg.r_range = r_range.map(|(a, b)| a..=b);
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.jobs = jobs;
    let rep = py.detach(|| core::verify(&cfg));
    let d = PyDict::new(py);
    d.set_item("rule", rep.target)?;
    d.set_item("confirmed", rep.confirmed)?;
    d.set_item("not_applicable", rep.not_applicable)?;
    let bad: Vec<String> = rep.counterexamples.iter().map(|c| c.graph.to_graph6()).collect();
    d.set_item("counterexamples", bad)?;
    d.set_item("notices", rep.notices)?;
    Ok(d)
}

#[pymodule]
fn regext(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(perfect_matching, m)?)?;
    m.add_function(wrap_pyfunction!(max_matching, m)?)?;
    m.add_function(wrap_pyfunction!(extend_once, m)?)?;
    m.add_function(wrap_pyfunction!(extend_to, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(balloons, m)?)?;
    m.add_function(wrap_pyfunction!(random_regular, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_regular, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_form, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
