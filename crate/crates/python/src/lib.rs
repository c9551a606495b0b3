//! Python bindings for `cilattice`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use cilattice::decompose::DecomposeOptions;
use cilattice::lattice::{Component, IntMatrix, Sign};
use cilattice::oracle::{IsometryOutcome, IsometrySearchBudget, REALIZE_LIMIT};
use cilattice::render::ReportDocument;
use cilattice::{DecomposeError, HodgeError, LatticeError, MultiDegree};

create_exception!(pycilattice, OutsideTheoremError, PyValueError);

fn lattice_err(e: LatticeError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn hodge_err(e: HodgeError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn decompose_err(e: DecomposeError) -> PyErr {
    match e {
        DecomposeError::OutsideTheorem(_) => OutsideTheoremError::new_err(e.to_string()),
        DecomposeError::Inconsistent(_) | DecomposeError::Witness(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_degrees(raw: Vec<u64>) -> PyResult<MultiDegree> {
    MultiDegree::new(&raw).map_err(hodge_err)
}

fn matrix(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    IntMatrix::from_rows(&rows).map_err(lattice_err)
}

/// Integral lattice given by a symmetric Gram matrix.
#[pyclass(name = "GramLattice", module = "pycilattice", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGramLattice {
    inner: cilattice::GramLattice,
}

#[pymethods]
impl PyGramLattice {
    #[new]
    fn new(rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let inner = cilattice::GramLattice::new(matrix(rows)?).map_err(lattice_err)?;
        Ok(Self { inner })
    }

    /// Gram matrix of a named block such as `"E8"`, `"A2"`, `"U"` or `"<-4>"`.
    #[staticmethod]
    #[pyo3(signature = (tag, sign = 1))]
    fn standard(tag: &str, sign: i8) -> PyResult<Self> {
        let component: Component = tag.parse().map_err(lattice_err)?;
        let sign = Sign::from_i8(sign).ok_or_else(|| PyValueError::new_err("sign must be 1 or -1"))?;
        let inner = component.standard_gram(sign).map_err(lattice_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = cilattice::GramLattice::from_json(text).map_err(lattice_err)?;
        Ok(Self { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn gram(&self) -> Vec<Vec<BigInt>> {
        self.inner.gram().to_rows()
    }

    fn determinant(&self) -> BigInt {
        self.inner.determinant()
    }

    /// `(positive, negative, zero)`.
    fn signature(&self) -> (BigInt, BigInt, BigInt) {
        let s = self.inner.signature();
        (s.positive, s.negative, s.zero)
    }

    fn is_even(&self) -> bool {
        self.inner.is_even()
    }

    /// Invariant factors of the discriminant group.
    fn discriminant_group(&self) -> PyResult<Vec<BigInt>> {
        let g = self.inner.discriminant_group().map_err(lattice_err)?;
        Ok(g.factors().to_vec())
    }

    fn is_characteristic(&self, v: Vec<BigInt>) -> PyResult<bool> {
        self.inner.is_characteristic(&v).map_err(lattice_err)
    }

    fn orthogonal_complement(&self, v: Vec<BigInt>) -> PyResult<Self> {
        let inner = self.inner.orthogonal_complement(&v).map_err(lattice_err)?;
        Ok(Self { inner })
    }

    /// Gram matrix `T^t G T` for a unimodular `T`.
    fn transform(&self, t: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let inner = self.inner.transform(&matrix(t)?).map_err(lattice_err)?;
        Ok(Self { inner })
    }

    fn direct_sum(&self, other: &Self) -> Self {
        Self {
            inner: cilattice::GramLattice::direct_sum([&self.inner, &other.inner]),
        }
    }

    fn __repr__(&self) -> String {
        format!("GramLattice({})", self.inner.to_json())
    }
}

/// Decomposition report for one complete intersection.
#[pyclass(name = "Report", module = "pycilattice", frozen)]
struct PyReport {
    inner: cilattice::DecompositionReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn degrees(&self) -> Vec<u64> {
        self.inner.degrees.degrees().to_vec()
    }

    #[getter]
    fn dim(&self) -> u32 {
        self.inner.dim
    }

    #[getter]
    fn branch(&self) -> &'static str {
        self.inner.branch.as_str()
    }

    #[getter]
    fn decomposition(&self) -> String {
        self.inner.decomposition.to_string()
    }

    #[getter]
    fn hodge_primitive(&self) -> Vec<BigInt> {
        self.inner.hodge.primitive.clone()
    }

    #[getter]
    fn b_plus(&self) -> BigInt {
        self.inner.signature.b_plus.clone()
    }

    #[getter]
    fn b_minus(&self) -> BigInt {
        self.inner.signature.b_minus.clone()
    }

    #[getter]
    fn lattice_is_even(&self) -> bool {
        self.inner.parity.lattice_is_even
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.inner.notes.clone()
    }

    /// `[(check, passed, detail), ...]`.
    fn audit(&self) -> Vec<(String, bool, String)> {
        cilattice::audit(&self.inner)
            .checks
            .into_iter()
            .map(|c| (c.check, c.pass, c.detail))
            .collect()
    }

    /// Gram matrix of the whole decomposition; refused above rank 160.
    fn gram(&self) -> PyResult<PyGramLattice> {
        let inner = self
            .inner
            .decomposition
            .realize(REALIZE_LIMIT)
            .map_err(lattice_err)?;
        Ok(PyGramLattice { inner })
    }

    fn to_json(&self) -> String {
        ReportDocument::new(self.inner.clone()).to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "Report(degrees=({}), dim={}, decomposition='{}')",
            self.inner.degrees, self.inner.dim, self.inner.decomposition
        )
    }
}

/// Primitive middle Hodge numbers `h^{p,n-p}_o`, `p = 0..n`.
#[pyfunction]
fn hodge_row(degrees: Vec<u64>, n: u32) -> PyResult<Vec<BigInt>> {
    let row = cilattice::hodge_row(&parse_degrees(degrees)?, n).map_err(hodge_err)?;
    Ok(row.primitive)
}

/// `(e, b_n)` from the Chern class computation.
#[pyfunction]
fn euler_oracle(degrees: Vec<u64>, n: u32) -> PyResult<(BigInt, BigInt)> {
    cilattice::euler_oracle(&parse_degrees(degrees)?, n).map_err(hodge_err)
}

/// `(b_plus, b_minus, s, t, u, epsilon)`; `u` is `None` when `b+ < d`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn signature_data(
    degrees: Vec<u64>,
    n: u32,
) -> PyResult<(BigInt, BigInt, BigInt, BigInt, Option<BigInt>, u8)> {
    let s = cilattice::signature_data(&parse_degrees(degrees)?, n).map_err(decompose_err)?;
    Ok((s.b_plus, s.b_minus, s.s, s.t, s.u, s.epsilon))
}

#[pyfunction]
#[pyo3(signature = (degrees, n, exceptional_cases = true))]
fn decompose(degrees: Vec<u64>, n: u32, exceptional_cases: bool) -> PyResult<PyReport> {
    let options = DecomposeOptions { exceptional_cases };
    let inner = cilattice::decompose_with(&parse_degrees(degrees)?, n, options).map_err(decompose_err)?;
    Ok(PyReport { inner })
}

/// `C(a + b, b) mod 2`.
#[pyfunction]
fn lucas_parity(a: u64, b: u64) -> u8 {
    cilattice::lucas_parity(a, b)
}

/// Matrix `T` with `T^t G2 T = G1`, or `None` when the lattices are not
/// isometric. Both must be definite of rank at most 8.
#[pyfunction]
fn definite_isometry(g1: &PyGramLattice, g2: &PyGramLattice) -> PyResult<Option<Vec<Vec<BigInt>>>> {
    let outcome = cilattice::definite_isometry(&g1.inner, &g2.inner, &IsometrySearchBudget::default())
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(match outcome {
        IsometryOutcome::Isometric { witness } => Some(witness.to_rows()),
        IsometryOutcome::NotIsometric { .. } => None,
    })
}

#[pymodule]
fn pycilattice(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGramLattice>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(hodge_row, m)?)?;
    m.add_function(wrap_pyfunction!(euler_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(signature_data, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(lucas_parity, m)?)?;
    m.add_function(wrap_pyfunction!(definite_isometry, m)?)?;
    m.add("OutsideTheoremError", m.py().get_type::<OutsideTheoremError>())?;
    Ok(())
}
