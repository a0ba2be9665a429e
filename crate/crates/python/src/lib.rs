//! Python bindings: presentations, quotient rings, minimal models, classification
//! and the biquotient checks. Structured results come back as plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

use sullivan::biquotient::{family3_ring, formality_obstruction, freeness_check, ActionMatrix};
use sullivan::classify::{check_elliptic_inequalities, classify_dim5_ring, classify_dim6, cubic_root, EllipticProfile};
use sullivan::cli::report;
use sullivan::exact::Rational;
use sullivan::graded as g;
use sullivan::model::{borel_model, build_model, RankTable};
use sullivan::parse::{parse_polynomial, parse_presentation};

create_exception!(sullivan_py, SullivanError, PyException);

fn core_err(e: sullivan::Error) -> PyErr {
    SullivanError::new_err(e.to_string())
}

fn parse_err(e: sullivan::parse::ParseError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::Null => Ok(py.None().into_bound(py)),
        Value::Bool(b) => b.into_bound_py_any(py),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_bound_py_any(py),
            (_, Some(u)) => u.into_bound_py_any(py),
            _ => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py),
        },
        Value::String(s) => s.into_bound_py_any(py),
        Value::Array(a) => {
            let list = PyList::empty(py);
            for x in a {
                list.append(to_py(py, x)?)?;
            }
            Ok(list.into_any())
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            Ok(d.into_any())
        }
    }
}

/// Generators, relations and an optional formal dimension.
#[pyclass(name = "Presentation", module = "sullivan_py", frozen)]
struct PyPresentation {
    inner: g::Presentation,
}

#[pymethods]
impl PyPresentation {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPresentation { inner: parse_presentation(text).map_err(parse_err)? })
    }

    #[getter]
    fn generators(&self) -> Vec<(String, u32)> {
        self.inner.generators().iter().map(|g| (g.name.clone(), g.degree)).collect()
    }

    #[getter]
    fn relations(&self) -> Vec<String> {
        self.inner.relations().iter().map(|r| self.inner.algebra().display(r)).collect()
    }

    #[getter]
    fn formal_dimension(&self) -> Option<u32> {
        self.inner.formal_dimension()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Presentation({:?})", self.inner.to_text())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// The quotient ring, built degreewise up to `cap`.
#[pyclass(name = "QuotientRing", module = "sullivan_py", frozen)]
struct PyQuotient {
    inner: g::QuotientAlgebra,
}

#[pymethods]
impl PyQuotient {
    #[new]
    #[pyo3(signature = (presentation, cap=None))]
    fn new(presentation: &PyPresentation, cap: Option<u32>) -> Self {
        let p = presentation.inner.clone();
        let inner = match cap {
            Some(c) => g::QuotientAlgebra::new(p, c),
            None => g::QuotientAlgebra::with_default_cap(p),
        };
        PyQuotient { inner }
    }

    #[getter]
    fn cap(&self) -> u32 {
        self.inner.cap()
    }

    fn dim(&self, degree: u32) -> usize {
        self.inner.dim(degree)
    }

    fn hilbert(&self) -> Vec<usize> {
        self.inner.hilbert_coefficients()
    }

    fn basis(&self, degree: u32) -> Vec<String> {
        let alg = self.inner.algebra();
        self.inner.basis(degree).iter().map(|m| alg.display_monomial(m)).collect()
    }

    /// Normal form of a polynomial in the generators.
    fn reduce(&self, expr: &str) -> PyResult<String> {
        let alg = self.inner.algebra();
        let p = parse_polynomial(alg, expr).map_err(parse_err)?;
        Ok(alg.display(&self.inner.reduce(&p).map_err(core_err)?))
    }

    fn multiply(&self, a: &str, b: &str) -> PyResult<String> {
        let alg = self.inner.algebra();
        let pa = parse_polynomial(alg, a).map_err(parse_err)?;
        let pb = parse_polynomial(alg, b).map_err(parse_err)?;
        Ok(alg.display(&self.inner.multiply(&pa, &pb).map_err(core_err)?))
    }

    fn pairing_check(&self, n: u32) -> bool {
        self.inner.poincare_pairing_check(n)
    }
}

/// Minimal model of a quotient ring through `max_degree`.
#[pyclass(name = "MinimalModel", module = "sullivan_py", frozen)]
struct PyModel {
    generators: Vec<(String, u32, String)>,
    ranks: RankTable,
}

#[pymethods]
impl PyModel {
    #[new]
    fn new(ring: &PyQuotient, max_degree: u32) -> PyResult<Self> {
        let (pm, ranks) = build_model(&ring.inner, max_degree).map_err(core_err)?;
        let dga = pm.dga();
        let generators = dga
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.clone(), g.degree, dga.display_differential(i)))
            .collect();
        Ok(PyModel { generators, ranks })
    }

    /// `(name, degree, differential)` triples in construction order.
    #[getter]
    fn generators(&self) -> Vec<(String, u32, String)> {
        self.generators.clone()
    }

    /// Nonzero ranks by degree.
    #[getter]
    fn ranks(&self) -> Vec<(u32, usize)> {
        self.ranks.nonzero()
    }

    fn rank(&self, degree: u32) -> usize {
        self.ranks.rank(degree)
    }
}

#[pyfunction]
fn classify<'py>(py: Python<'py>, presentation: &PyPresentation, dim: u32) -> PyResult<Bound<'py, PyAny>> {
    let p = presentation.inner.clone().with_formal_dimension(Some(dim));
    let q = g::QuotientAlgebra::with_default_cap(p);
    let c = match dim {
        5 => classify_dim5_ring(&q),
        6 => classify_dim6(&q),
        _ => return Err(PyValueError::new_err("dim must be 5 or 6")),
    }
    .map_err(core_err)?;
    to_py(py, &report::classification(&c, &q))
}

/// Ellipticity inequalities; `ranks[i]` is the rank in degree `i + 2`.
#[pyfunction]
fn check_elliptic(dim: u32, ranks: Vec<usize>) -> bool {
    let mut counts = vec![0, 0];
    counts.extend(ranks);
    check_elliptic_inequalities(&EllipticProfile::new(dim, RankTable::from_counts(&counts)))
}

#[pyfunction]
fn borel<'py>(py: Python<'py>, presentation: &PyPresentation) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &report::borel(&borel_model(&presentation.inner).map_err(core_err)?))
}

/// Freeness of the action with row-major exponent matrix `entries`.
#[pyfunction]
fn freeness<'py>(py: Python<'py>, entries: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
    let e: Vec<_> = entries.into_iter().map(Into::into).collect();
    let m = ActionMatrix::from_entries(&e).ok_or_else(|| PyValueError::new_err("expected 9 entries"))?;
    to_py(py, &report::freeness(&freeness_check(&m)))
}

#[pyfunction]
fn family3_obstruction<'py>(py: Python<'py>, b1: i64, c1: i64, c2: i64) -> PyResult<Bound<'py, PyAny>> {
    let r = family3_ring(b1, c1, c2);
    let o = formality_obstruction(&r).map_err(core_err)?;
    to_py(py, &report::obstruction(&o, r.presentation.algebra()))
}

/// The chosen real root of the normalization cubic for a rational `alpha` like "3/2".
#[pyfunction]
fn normalization_root<'py>(py: Python<'py>, alpha: &str) -> PyResult<Bound<'py, PyAny>> {
    let a: Rational = alpha.trim().parse().map_err(|_| PyValueError::new_err(format!("not a rational: {alpha}")))?;
    let c = cubic_root(&a);
    let mut v = report::algebraic(&c.chosen_root, "a");
    v["cubic"] = Value::String(c.polynomial.display_in("a"));
    to_py(py, &v)
}

#[pymodule]
fn sullivan_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SullivanError", m.py().get_type::<SullivanError>())?;
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyQuotient>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(check_elliptic, m)?)?;
    m.add_function(wrap_pyfunction!(borel, m)?)?;
    m.add_function(wrap_pyfunction!(freeness, m)?)?;
    m.add_function(wrap_pyfunction!(family3_obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(normalization_root, m)?)?;
    Ok(())
}
