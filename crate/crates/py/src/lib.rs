//! Python bindings: a `Graph` class wrapping a defining graph, with the
//! analysis pipeline returned as plain Python data.
use artinacyl::cert::{self, CheckStatus};
use artinacyl::classify::{center_report, classify, coxeter_group_order, decide_acyl};
use artinacyl::graph::join_decompose;
use artinacyl::shadow::{build_shadow, shadow_laws};
use artinacyl::wpd::build_gamma;
use artinacyl::{CoxeterSystem, DefiningGraph, Error};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

pyo3::create_exception!(artinacyl_py, HypothesisError, PyValueError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Graph(g) => PyValueError::new_err(g.to_string()),
        Error::Malformed(m) => PyValueError::new_err(m),
        Error::Hypothesis(m) => HypothesisError::new_err(m),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn to_object(py: Python<'_>, value: serde_json::Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (value.to_string(),))?.unbind())
}

#[pyclass(name = "Graph", module = "artinacyl_py", frozen)]
struct PyGraph {
    inner: DefiningGraph,
}

impl PyGraph {
    fn word(&self, letters: Vec<String>) -> PyResult<Vec<usize>> {
        self.inner.resolve(&letters).map_err(|e| to_py(e.into()))
    }
}

#[pymethods]
impl PyGraph {
    /// `edges` holds (u, v, label) triples; absent pairs carry label ∞.
    #[new]
    fn new(vertices: Vec<String>, edges: Vec<(String, String, u32)>) -> PyResult<Self> {
        let edges: Vec<(&str, &str, u32)> = edges.iter().map(|(a, b, m)| (a.as_str(), b.as_str(), *m)).collect();
        let inner = DefiningGraph::new(&vertices, &edges).map_err(|e| to_py(e.into()))?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = DefiningGraph::from_json(text).map_err(|e| to_py(e.into()))?;
        Ok(PyGraph { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Graph({})", self.to_json())
    }

    fn join_decomposition(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let d = join_decompose(&self.inner).named(&self.inner);
        to_object(py, serde_json::json!(d))
    }

    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_object(py, serde_json::json!(classify(&self.inner)))
    }

    /// "AcylindricallyHyperbolic", "NotAcylindricallyHyperbolic" or "Unknown".
    fn verdict(&self) -> String {
        format!("{:?}", decide_acyl(&self.inner).status)
    }

    fn center(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let c = center_report(&self.inner).map_err(to_py)?;
        to_object(py, serde_json::json!(c))
    }

    fn coxeter_order(&self) -> Option<u128> {
        coxeter_group_order(&self.inner)
    }

    /// Shortlex normal form in the Coxeter quotient.
    fn reduce(&self, word: Vec<String>) -> PyResult<Vec<String>> {
        let cox = CoxeterSystem::new(&self.inner);
        let nf = cox.reduce(&self.word(word)?).map_err(to_py)?;
        Ok(self.inner.spell(&nf))
    }

    fn equal(&self, a: Vec<String>, b: Vec<String>) -> PyResult<bool> {
        let cox = CoxeterSystem::new(&self.inner);
        cox.equal(&self.word(a)?, &self.word(b)?).map_err(to_py)
    }

    fn gamma(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let plan = build_gamma(&self.inner).map_err(to_py)?;
        to_object(py, plan.to_json())
    }

    fn gamma_word(&self) -> PyResult<Vec<String>> {
        Ok(build_gamma(&self.inner).map_err(to_py)?.gamma)
    }

    fn certify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let plan = build_gamma(&self.inner).map_err(to_py)?;
        let c = cert::certify(&self.inner, &plan).map_err(to_py)?;
        to_object(py, serde_json::json!(c))
    }

    #[pyo3(signature = (radius=None, reduced=false, cap=100_000))]
    fn shadow(&self, py: Python<'_>, radius: Option<usize>, reduced: bool, cap: usize) -> PyResult<Py<PyAny>> {
        let d = join_decompose(&self.inner);
        let ambient = build_shadow(&self.inner, &d, false, cap, radius).map_err(to_py)?;
        let sub = build_shadow(&self.inner, &d, true, cap, radius).map_err(to_py)?;
        let checks = shadow_laws(&self.inner, &d, &ambient, &sub).map_err(to_py)?;
        let passed = checks.iter().all(|c| c.status != CheckStatus::Fail);
        let shown = if reduced { &sub } else { &ambient };
        to_object(py, serde_json::json!({ "complex": shown.to_json(), "checks": checks, "passed": passed }))
    }
}

#[pymodule]
fn artinacyl_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("HypothesisError", m.py().get_type::<HypothesisError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
