//! Python bindings for `annihil`.
//!
//! Polynomials cross the boundary as `Polynomial` objects or as text such as
//! `"2X^4 - 3X^2 + 8X"`; big integers map to Python `int`.

use annihil::annihilator_ideals::{self as ideals, CheckReport, IdealKind};
use annihil::pfister_algebra::{expansion_coefficients, shifted_expansion_coefficients};
use annihil::witt_models::{self as witt, DiagonalForm, Family, FieldModel};
use annihil::{stirling, valuation, IntPolynomial};
use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: annihil::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Integer polynomial in one variable X.
#[pyclass(name = "Polynomial", eq, frozen, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPolynomial(IntPolynomial);

#[derive(FromPyObject)]
enum PolyArg {
    Poly(PyPolynomial),
    Text(String),
}

impl PolyArg {
    fn into_poly(self) -> PyResult<IntPolynomial> {
        match self {
            PolyArg::Poly(p) => Ok(p.0),
            PolyArg::Text(s) => s.parse().map_err(err),
        }
    }
}

#[pymethods]
impl PyPolynomial {
    /// From text (`"X^2 - 1"`) or a list of ints, constant term first.
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(s) = value.extract::<String>() {
            return s.parse().map(Self).map_err(err);
        }
        let coeffs: Vec<BigInt> = value.extract()?;
        Ok(Self(IntPolynomial::new(coeffs)))
    }

    #[staticmethod]
    fn lewis(n: u64) -> PyResult<Self> {
        IntPolynomial::lewis(n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn ql(l: u64) -> PyResult<Self> {
        IntPolynomial::q_family(l).map(Self).map_err(err)
    }

    #[getter]
    fn coeffs(&self) -> Vec<BigInt> {
        self.0.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn eval(&self, x: BigInt) -> BigInt {
        self.0.eval(&x)
    }

    /// f(X + a).
    fn shift(&self, a: BigInt) -> Self {
        Self(self.0.taylor_shift(&a))
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }
}

#[pyfunction]
fn nu2(x: BigInt) -> PyResult<u64> {
    valuation::nu2(&x).map_err(err)
}

#[pyfunction]
fn stirling2(n: u64, k: u64) -> BigUint {
    stirling::stirling2(n, k)
}

#[pyfunction]
fn bound_margin(n: u64, k: u64) -> PyResult<i64> {
    stirling::bound_margin(n, k).map_err(err)
}

/// Rows `(n, k, nu2, lower, margin)` for all `0 < k <= n <= max_n`.
#[pyfunction]
fn scan_bound(max_n: u64) -> PyResult<Vec<(u64, u64, u64, i64, i64)>> {
    let report = stirling::scan_bound(max_n).map_err(err)?;
    Ok(report.rows.iter().map(|r| (r.n, r.k, r.nu2, r.lower, r.margin)).collect())
}

#[pyfunction]
fn k_of_r(r: u32) -> u32 {
    ideals::k_of_r(r)
}

fn ideal(name: &str) -> PyResult<IdealKind> {
    name.parse().map_err(err)
}

/// Generator list of `jprime-e`, `j-e`, `j-o` or `j`.
#[pyfunction]
fn generators(ideal_name: &str, r: u32) -> PyResult<Vec<PyPolynomial>> {
    let spec = ideals::generators(ideal(ideal_name)?, r).map_err(err)?;
    Ok(spec.polynomials().into_iter().map(PyPolynomial).collect())
}

#[pyfunction]
fn generator_text(ideal_name: &str, r: u32) -> PyResult<String> {
    Ok(ideals::generators(ideal(ideal_name)?, r).map_err(err)?.generator_text())
}

#[pyfunction]
fn is_member(poly: PolyArg, ideal_name: &str, r: u32) -> PyResult<bool> {
    ideals::is_member(&poly.into_poly()?, ideal(ideal_name)?, r).map_err(err)
}

/// `A_0..A_n`; with `shifted=True` the expansion at `Y_1 + ... + Y_n - n`.
#[pyfunction]
#[pyo3(signature = (poly, n, shifted = false))]
fn expand(poly: PolyArg, n: u32, shifted: bool) -> PyResult<Vec<BigInt>> {
    let f = poly.into_poly()?;
    let e = if shifted {
        shifted_expansion_coefficients(&f, n)
    } else {
        expansion_coefficients(&f, n)
    };
    Ok(e.map_err(err)?.a)
}

#[pyfunction]
fn comaximality_witness(k: u32) -> PyResult<(PyPolynomial, PyPolynomial)> {
    let (u, v) = ideals::comaximality_witness(k).map_err(err)?;
    Ok((PyPolynomial(u), PyPolynomial(v)))
}

#[pyfunction]
fn annihilation_failure(poly: PolyArg, r: u32, n_max: u32) -> PyResult<Option<u32>> {
    ideals::generic_annihilation_failure(&poly.into_poly()?, r, n_max).map_err(err)
}

fn report(r: annihil::Result<CheckReport>) -> PyResult<(bool, u64, String)> {
    let r = r.map_err(err)?;
    Ok((r.passed, r.cases, r.to_json()))
}

/// `(passed, cases, json_report)`.
#[pyfunction]
#[pyo3(signature = (r, n_max = 12))]
fn lemma_check(r: u32, n_max: u32) -> PyResult<(bool, u64, String)> {
    report(ideals::lemma_32_check(r, n_max))
}

#[pyfunction]
#[pyo3(signature = (r, trials = 500, seed = 0))]
fn theorem_check(r: u32, trials: u32, seed: u64) -> PyResult<(bool, u64, String)> {
    report(ideals::theorem_equivalence_check(r, trials, seed))
}

#[pyfunction]
#[pyo3(signature = (l, n_max = 12))]
fn ql_check(l: u32, n_max: u32) -> PyResult<(bool, u64, String)> {
    report(ideals::ql_sufficient_check(l, n_max))
}

/// Canonical Witt-class representative of a diagonal form, e.g. `"<1,2>"`.
#[pyfunction]
fn witt_reduce(field: &str, entries: Vec<u32>) -> PyResult<String> {
    let model: FieldModel = field.parse().map_err(err)?;
    let form = DiagonalForm::new(model, entries).map_err(err)?;
    Ok(witt::witt_reduce(&form).map_err(err)?.to_string())
}

/// `(passed, classes_checked, counterexample)`.
#[pyfunction]
#[pyo3(signature = (field, poly, family = "all", dim_cap = 4))]
fn witt_verify(
    field: &str,
    poly: PolyArg,
    family: &str,
    dim_cap: usize,
) -> PyResult<(bool, usize, Option<String>)> {
    let model: FieldModel = field.parse().map_err(err)?;
    let family: Family = family.parse().map_err(err)?;
    let r = witt::verify_annihilation(&poly.into_poly()?, model, family, dim_cap).map_err(err)?;
    Ok((r.pass, r.classes_checked, r.counterexample))
}

#[pymodule]
#[pyo3(name = "annihil")]
fn annihil_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(nu2, m)?)?;
    m.add_function(wrap_pyfunction!(stirling2, m)?)?;
    m.add_function(wrap_pyfunction!(bound_margin, m)?)?;
    m.add_function(wrap_pyfunction!(scan_bound, m)?)?;
    m.add_function(wrap_pyfunction!(k_of_r, m)?)?;
    m.add_function(wrap_pyfunction!(generators, m)?)?;
    m.add_function(wrap_pyfunction!(generator_text, m)?)?;
    m.add_function(wrap_pyfunction!(is_member, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(comaximality_witness, m)?)?;
    m.add_function(wrap_pyfunction!(annihilation_failure, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_check, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_check, m)?)?;
    m.add_function(wrap_pyfunction!(ql_check, m)?)?;
    m.add_function(wrap_pyfunction!(witt_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(witt_verify, m)?)?;
    Ok(())
}
