//! Python bindings. Structured results (reports, scans, findings) cross the
//! boundary as plain dicts built from their JSON form.

use irregularity_lab as core;
use irregularity_lab::generators::{self, TreeFamilySpec};
use irregularity_lab::verify::{self, Instance, Params};
use irregularity_lab::{graph6, indices, Exponent, PowValue};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn exponent(p: f64) -> PyResult<Exponent> {
    Exponent::new(p).map_err(err)
}

/// Exact pow values come back as Python ints, the rest as floats.
fn pow_to_py(py: Python<'_>, pow: PowValue) -> PyResult<Bound<'_, PyAny>> {
    match pow {
        PowValue::Exact(v) => Ok(v.into_pyobject(py)?.into_any()),
        PowValue::Float(v) => Ok(v.into_pyobject(py)?.into_any()),
    }
}

#[pyclass(name = "Graph", module = "irregularity_lab", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph(core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Graph::new(n, &edges).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        graph6::decode(text).map(PyGraph).map_err(err)
    }

    /// Builds a tree family from a spec such as `"bethe:k=3,d=2"`.
    #[staticmethod]
    fn family(spec: &str) -> PyResult<Self> {
        let spec: TreeFamilySpec = spec.parse().map_err(err)?;
        spec.build().map(PyGraph).map_err(err)
    }

    fn graph6(&self) -> String {
        graph6::encode(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    fn degrees(&self) -> Vec<usize> {
        self.0.degrees()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edge_list()
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn is_tree(&self) -> bool {
        self.0.is_tree()
    }

    fn spider_legs(&self) -> Option<Vec<usize>> {
        self.0.spider_legs()
    }

    fn line_graph(&self) -> PyResult<Self> {
        self.0.line_graph().map(PyGraph).map_err(err)
    }

    fn complement(&self) -> Self {
        PyGraph(self.0.complement())
    }

    fn join_apex(&self) -> Self {
        PyGraph(self.0.join_apex())
    }

    fn attach_pendant_path(&self, anchor: usize, t: usize) -> PyResult<Self> {
        self.0.attach_pendant_path(anchor, t).map(|a| PyGraph(a.graph)).map_err(err)
    }

    /// Hex canonical code; equal exactly for isomorphic graphs.
    fn canonical_code(&self) -> PyResult<String> {
        core::canonical_code(&self.0).map(|c| c.to_hex()).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={}, graph6={:?})", self.0.n(), self.0.m(), graph6::encode(&self.0))
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }
}

/// `Σ |d(u) - d(v)|^p` over the edges (the pow form).
#[pyfunction]
fn general_albertson_pow(py: Python<'_>, g: &PyGraph, p: f64) -> PyResult<Py<PyAny>> {
    Ok(pow_to_py(py, indices::general_albertson(&g.0, exponent(p)?).pow)?.unbind())
}

/// `(Σ |d(u) - d(v)|^p)^(1/p)`.
#[pyfunction]
fn general_albertson(g: &PyGraph, p: f64) -> PyResult<f64> {
    Ok(indices::general_albertson(&g.0, exponent(p)?).value())
}

#[pyfunction]
fn albertson(g: &PyGraph) -> u64 {
    indices::albertson(&g.0)
}

#[pyfunction]
fn sigma(g: &PyGraph) -> u64 {
    indices::sigma(&g.0)
}

#[pyfunction]
fn zagreb_second(g: &PyGraph) -> u64 {
    indices::zagreb_second(&g.0)
}

#[pyfunction]
fn forgotten(g: &PyGraph) -> u64 {
    indices::forgotten(&g.0)
}

#[pyfunction]
fn sombor(g: &PyGraph) -> f64 {
    indices::sombor(&g.0)
}

#[pyfunction]
fn first_zagreb_general(py: Python<'_>, g: &PyGraph, p: f64) -> PyResult<Py<PyAny>> {
    let pow = indices::first_zagreb_general(&g.0, p).map_err(err)?;
    Ok(pow_to_py(py, pow)?.unbind())
}

#[pyfunction]
fn bethe_closed_form(py: Python<'_>, levels: Vec<usize>, p: f64) -> PyResult<Py<PyAny>> {
    let v = generators::bethe_closed_form(&levels, exponent(p)?).map_err(err)?;
    Ok(pow_to_py(py, v.pow)?.unbind())
}

#[pyfunction]
fn kragujevac_closed_form(py: Python<'_>, branches: Vec<usize>, p: f64) -> PyResult<Py<PyAny>> {
    let v = generators::kragujevac_closed_form(&branches, exponent(p)?).map_err(err)?;
    Ok(pow_to_py(py, v.pow)?.unbind())
}

#[pyfunction]
fn free_trees(n: usize) -> PyResult<Vec<PyGraph>> {
    Ok(core::enumeration::free_trees(n).map_err(err)?.map(PyGraph).collect())
}

#[pyfunction]
fn connected_graphs(n: usize) -> PyResult<Vec<PyGraph>> {
    Ok(core::enumeration::connected_graphs(n).map_err(err)?.into_iter().map(PyGraph).collect())
}

#[pyfunction]
fn random_tree(n: usize, seed: u64) -> PyResult<PyGraph> {
    core::enumeration::random_tree(n, seed).map(PyGraph).map_err(err)
}

/// Evaluates one registered claim. `target` is a `Graph` or a family spec
/// string.
#[pyfunction]
#[pyo3(signature = (claim_id, target, p = None, q = None, t = None, anchor = None))]
fn check<'py>(
    py: Python<'py>,
    claim_id: &str,
    target: &Bound<'py, PyAny>,
    p: Option<f64>,
    q: Option<f64>,
    t: Option<usize>,
    anchor: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let instance = if let Ok(g) = target.cast::<PyGraph>() {
        Instance::Graph(g.get().0.clone())
    } else {
        let spec: String = target.extract()?;
        Instance::Family(spec.parse().map_err(err)?)
    };
    let params = Params {
        p,
        q,
        t,
        anchor,
        ..Params::default()
    };
    let report = verify::check(claim_id, &instance, &params).map_err(err)?;
    to_py(py, &report)
}

/// Exhaustive extremal scan over all trees of order `n`.
#[pyfunction]
fn extremal_scan(py: Python<'_>, n: usize, p: f64) -> PyResult<Bound<'_, PyAny>> {
    let scan = py.detach(|| verify::extremal_scan(n, p)).map_err(err)?;
    to_py(py, &scan)
}

/// `(id, statement)` for every registered claim.
#[pyfunction]
fn claims() -> Vec<(&'static str, &'static str)> {
    verify::ClaimId::all().map(|c| (c.as_str(), c.statement())).collect()
}

#[pyfunction]
fn findings(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &verify::findings())
}

#[pymodule(name = "irregularity_lab")]
fn irregularity_lab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(general_albertson_pow, m)?)?;
    m.add_function(wrap_pyfunction!(general_albertson, m)?)?;
    m.add_function(wrap_pyfunction!(albertson, m)?)?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(zagreb_second, m)?)?;
    m.add_function(wrap_pyfunction!(forgotten, m)?)?;
    m.add_function(wrap_pyfunction!(sombor, m)?)?;
    m.add_function(wrap_pyfunction!(first_zagreb_general, m)?)?;
    m.add_function(wrap_pyfunction!(bethe_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(kragujevac_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(free_trees, m)?)?;
    m.add_function(wrap_pyfunction!(connected_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(random_tree, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_scan, m)?)?;
    m.add_function(wrap_pyfunction!(claims, m)?)?;
    m.add_function(wrap_pyfunction!(findings, m)?)?;
    Ok(())
}
