//! Python bindings for `vcgap-core`.
//!
//! Rationals cross the boundary as `fractions.Fraction`. Cost vectors accept
//! anything whose `str()` is an integer or `p/q` (ints, `Fraction`, strings);
//! floats are rejected.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use vcgap_core::cert::CertificateDoc;
use vcgap_core::chromatic::{self, DEFAULT_ORACLE_LIMIT};
use vcgap_core::graph::{self, Family, VertexSet};
use vcgap_core::rational::{format_rat, parse_rat};
use vcgap_core::vc::{self, CostVector, DEFAULT_EXACT_LIMIT};
use vcgap_core::{gap, Error, Rat};

type CheckRows = Vec<(String, bool, String)>;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) | Error::LpStatus(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format_rat(r),))
}

fn fractions<'py>(py: Python<'py>, v: &[Rat]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    v.iter().map(|r| fraction(py, r)).collect()
}

fn costs(g: &graph::Graph, values: Option<Vec<Bound<'_, PyAny>>>) -> PyResult<CostVector> {
    let Some(values) = values else {
        return Ok(CostVector::unit(g.n()));
    };
    if values.len() != g.n() {
        return Err(PyValueError::new_err(format!(
            "{} costs for {} vertices",
            values.len(),
            g.n()
        )));
    }
    let mut parsed = Vec::with_capacity(values.len());
    for (i, v) in values.iter().enumerate() {
        if v.is_instance_of::<pyo3::types::PyFloat>() {
            return Err(PyValueError::new_err(format!(
                "cost {i} is a float; use int or Fraction"
            )));
        }
        let text = v.str()?.to_string();
        parsed.push(parse_rat(&text).map_err(|m| PyValueError::new_err(format!("cost {i}: {m}")))?);
    }
    CostVector::new(parsed).map_err(py_err)
}

/// A simple undirected graph on vertices `0..n`.
#[pyclass(frozen, eq, module = "vcgap_py")]
#[derive(Clone, PartialEq)]
struct Graph {
    inner: graph::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        graph::Graph::new(n, edges)
            .map(|inner| Graph { inner })
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_dimacs(text: &str) -> PyResult<Self> {
        graph::parse_dimacs(text)
            .map(|inner| Graph { inner })
            .map_err(py_err)
    }

    /// e.g. `Graph.family("mycielski cycle 5")` or `Graph.family("kneser 5 2")`.
    #[staticmethod]
    fn family(text: &str) -> PyResult<Self> {
        let tokens: Vec<String> = text.split_whitespace().map(str::to_string).collect();
        let inner = Family::parse(&tokens)
            .and_then(|f| f.generate())
            .map_err(py_err)?;
        Ok(Graph { inner })
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
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn is_vertex_cover(&self, s: Vec<usize>) -> PyResult<bool> {
        let s = VertexSet::new(s);
        self.inner.validate_set(&s).map_err(py_err)?;
        Ok(self.inner.is_vertex_cover(&s))
    }

    fn is_independent(&self, s: Vec<usize>) -> PyResult<bool> {
        let s = VertexSet::new(s);
        self.inner.validate_set(&s).map_err(py_err)?;
        Ok(self.inner.is_independent(&s))
    }

    fn mycielskian(&self) -> Self {
        Graph {
            inner: graph::mycielskian(&self.inner),
        }
    }

    fn to_dimacs(&self) -> String {
        self.inner.to_dimacs()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Fractional chromatic number.
#[pyfunction]
fn chi_f<'py>(py: Python<'py>, g: &Graph) -> PyResult<Bound<'py, PyAny>> {
    let (coloring, _) = chromatic::solve_chi_f(&g.inner).map_err(py_err)?;
    fraction(py, &coloring.value)
}

/// Optimal fractional coloring with its dual vertex weights:
/// `{"value", "classes": [(vertices, weight)], "z"}`.
#[pyfunction]
fn fractional_coloring<'py>(py: Python<'py>, g: &Graph) -> PyResult<Bound<'py, PyDict>> {
    let (coloring, duals) = chromatic::solve_chi_f(&g.inner).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("value", fraction(py, &coloring.value)?)?;
    let classes = coloring
        .classes
        .iter()
        .map(|(s, y)| Ok((s.as_slice().to_vec(), fraction(py, y)?)))
        .collect::<PyResult<Vec<_>>>()?;
    d.set_item("classes", classes)?;
    d.set_item("z", fractions(py, &duals.z)?)?;
    Ok(d)
}

/// Worst-case ratio of the vertex cover IP to its LP relaxation.
#[pyfunction]
fn integrality_gap<'py>(py: Python<'py>, g: &Graph) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &gap::integrality_gap(&g.inner).map_err(py_err)?)
}

/// Half-integral optimum of the vertex cover LP:
/// `{"x", "objective", "v0", "v_half", "v1"}`.
#[pyfunction]
#[pyo3(signature = (g, costs=None))]
fn solve_vc_lp<'py>(
    py: Python<'py>,
    g: &Graph,
    costs: Option<Vec<Bound<'py, PyAny>>>,
) -> PyResult<Bound<'py, PyDict>> {
    let c = self::costs(&g.inner, costs)?;
    let x = vc::solve_vc_lp(&g.inner, &c).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("x", fractions(py, &x.x)?)?;
    d.set_item("objective", fraction(py, &x.objective)?)?;
    d.set_item("v0", x.v0.as_slice().to_vec())?;
    d.set_item("v_half", x.v_half.as_slice().to_vec())?;
    d.set_item("v1", x.v1.as_slice().to_vec())?;
    Ok(d)
}

/// Minimum-cost vertex cover as `(cover, cost)`.
#[pyfunction]
#[pyo3(signature = (g, costs=None, limit=DEFAULT_EXACT_LIMIT))]
fn min_vc_exact<'py>(
    py: Python<'py>,
    g: &Graph,
    costs: Option<Vec<Bound<'py, PyAny>>>,
    limit: usize,
) -> PyResult<(Vec<usize>, Bound<'py, PyAny>)> {
    let c = self::costs(&g.inner, costs)?;
    let (cover, value) = vc::min_vc_exact(&g.inner, &c, limit).map_err(py_err)?;
    Ok((cover.into_vec(), fraction(py, &value)?))
}

/// IP over LP optimum for one cost vector.
#[pyfunction]
#[pyo3(signature = (g, costs, limit=DEFAULT_EXACT_LIMIT))]
fn empirical_ratio<'py>(
    py: Python<'py>,
    g: &Graph,
    costs: Vec<Bound<'py, PyAny>>,
    limit: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let c = self::costs(&g.inner, Some(costs))?;
    fraction(
        py,
        &gap::empirical_ratio(&g.inner, &c, limit).map_err(py_err)?,
    )
}

/// Gap certificate for the worst-case costs, as JSON text.
#[pyfunction]
#[pyo3(signature = (g, limit=DEFAULT_EXACT_LIMIT, seed=0))]
fn worst_case_certificate(g: &Graph, limit: usize, seed: u64) -> PyResult<String> {
    let cert = gap::worst_case_certificate(&g.inner, limit).map_err(py_err)?;
    Ok(CertificateDoc::new(&cert, seed).to_json())
}

/// Checks certificate JSON without solving anything. Returns
/// `(passed, [(name, passed, detail)])`. With `oracle=True` the values are
/// also re-derived by enumeration.
#[pyfunction]
#[pyo3(signature = (certificate, oracle=false, oracle_limit=DEFAULT_ORACLE_LIMIT))]
fn verify_certificate(
    certificate: &str,
    oracle: bool,
    oracle_limit: usize,
) -> PyResult<(bool, CheckRows)> {
    let cert = CertificateDoc::from_json(certificate)
        .and_then(|d| d.to_certificate())
        .map_err(py_err)?;
    let report = gap::verify_certificate(&cert.graph, &cert, oracle.then_some(oracle_limit));
    let checks = report
        .checks
        .iter()
        .map(|c| (c.name.clone(), c.passed, c.detail.clone()))
        .collect();
    Ok((report.all_passed(), checks))
}

#[pymodule]
fn vcgap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(chi_f, m)?)?;
    m.add_function(wrap_pyfunction!(fractional_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(integrality_gap, m)?)?;
    m.add_function(wrap_pyfunction!(solve_vc_lp, m)?)?;
    m.add_function(wrap_pyfunction!(min_vc_exact, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(worst_case_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    Ok(())
}
