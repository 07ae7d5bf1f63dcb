//! Python bindings for `smatrix`.
//!
//! Matrices cross the boundary as nested lists of ints; counts come back as
//! Python ints of arbitrary size. Size guards raise `GuardExceededError`
//! unless `force=True` is passed.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use smatrix::count;
use smatrix::generate::{self, BijectiveGenerator};
use smatrix::sudoku::{self, SudokuMatrix};
use smatrix::{BinaryMatrix, Error, Guard};

create_exception!(smatrix_py, GuardExceededError, PyValueError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::GuardExceeded { .. } => GuardExceededError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn dense(rows: Vec<Vec<u8>>) -> PyResult<BinaryMatrix> {
    BinaryMatrix::from_rows(&rows).map_err(to_py)
}

#[pyclass(
    name = "PiMatrix",
    module = "smatrix_py",
    frozen,
    eq,
    hash,
    from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyPiMatrix(generate::PiMatrix);

#[pymethods]
impl PyPiMatrix {
    /// Build from `2n` rows, each a permutation of `1..=n`.
    #[new]
    fn new(rows: Vec<Vec<u32>>) -> PyResult<Self> {
        generate::PiMatrix::from_rows(rows).map(Self).map_err(to_py)
    }

    /// The lexicographically first matrix: every row is the identity.
    #[staticmethod]
    fn first(n: usize) -> Self {
        Self(generate::PiMatrix::first(n))
    }

    #[staticmethod]
    fn from_lex_rank(n: usize, rank: BigUint) -> PyResult<Self> {
        generate::PiMatrix::from_lex_rank(n, &rank)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        (1..=2 * self.0.n())
            .map(|i| self.0.row(i).to_vec())
            .collect()
    }

    fn lex_rank(&self) -> BigUint {
        self.0.lex_rank()
    }

    fn __repr__(&self) -> String {
        format!("PiMatrix({:?})", self.rows())
    }
}

#[pyclass(
    name = "SPermutationMatrix",
    module = "smatrix_py",
    frozen,
    eq,
    hash,
    from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PySPermutationMatrix(smatrix::SPermutationMatrix);

#[pymethods]
impl PySPermutationMatrix {
    /// `column_of_row[i]` is the 1-based column of the one in row `i + 1`.
    #[new]
    fn new(n: usize, column_of_row: Vec<u32>) -> PyResult<Self> {
        smatrix::SPermutationMatrix::new(n, column_of_row)
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn from_dense(rows: Vec<Vec<u8>>) -> PyResult<Self> {
        smatrix::SPermutationMatrix::from_dense(&dense(rows)?)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn side(&self) -> usize {
        self.0.side()
    }

    #[getter]
    fn column_of_row(&self) -> Vec<u32> {
        self.0.column_of_row().to_vec()
    }

    fn to_dense(&self) -> Vec<Vec<u32>> {
        let side = self.0.side();
        (1..=side)
            .map(|i| (1..=side).map(|j| self.0.get(i, j) as u32).collect())
            .collect()
    }

    /// Position `(k, l)` of the one inside block `(s, t)`, all 1-based.
    fn local_one(&self, s: usize, t: usize) -> PyResult<(usize, usize)> {
        let n = self.0.n();
        if !(1..=n).contains(&s) || !(1..=n).contains(&t) {
            return Err(PyValueError::new_err(format!(
                "block ({s}, {t}) outside 1..={n}"
            )));
        }
        Ok(self.0.local_one(s, t))
    }

    fn __repr__(&self) -> String {
        format!(
            "SPermutationMatrix({}, {:?})",
            self.0.n(),
            self.0.column_of_row()
        )
    }
}

/// Lazy lexicographic stream of S-permutation matrices.
#[pyclass(name = "BijectiveIterator", module = "smatrix_py")]
pub struct PyBijectiveIterator {
    inner: BijectiveGenerator,
    left: Option<u64>,
}

#[pymethods]
impl PyBijectiveIterator {
    fn __iter__(slf: PyRef<'_, Self>) -> PyRef<'_, Self> {
        slf
    }

    fn __next__(mut slf: PyRefMut<'_, Self>) -> Option<PySPermutationMatrix> {
        if slf.left == Some(0) {
            return None;
        }
        let next = slf.inner.next()?;
        if let Some(left) = slf.left.as_mut() {
            *left -= 1;
        }
        Some(PySPermutationMatrix(next))
    }

    /// Matrices still ahead in the underlying stream, ignoring any limit.
    fn remaining(&self) -> BigUint {
        self.inner.remaining()
    }
}

#[pyfunction]
fn phi(p: &PyPiMatrix) -> PySPermutationMatrix {
    PySPermutationMatrix(generate::phi(&p.0))
}

#[pyfunction]
fn phi_inverse(a: &PySPermutationMatrix) -> PyPiMatrix {
    PyPiMatrix(generate::phi_inverse(&a.0))
}

#[pyfunction]
fn are_disjoint_pi(c: &PyPiMatrix, d: &PyPiMatrix) -> PyResult<bool> {
    generate::are_disjoint_pi(&c.0, &d.0).map_err(to_py)
}

#[pyfunction]
fn are_disjoint_sigma(a: &PySPermutationMatrix, b: &PySPermutationMatrix) -> PyResult<bool> {
    smatrix::are_disjoint_sigma(&a.0, &b.0).map_err(to_py)
}

#[pyfunction]
fn is_s_permutation(rows: Vec<Vec<u8>>) -> PyResult<bool> {
    smatrix::is_s_permutation(&dense(rows)?).map_err(to_py)
}

#[pyfunction]
fn is_lambda_matrix(rows: Vec<Vec<u8>>, k: usize) -> PyResult<bool> {
    smatrix::is_lambda_matrix(&dense(rows)?, k).map_err(to_py)
}

/// Number of n×n binary matrices with k ones in every row and column.
///
/// `method` is one of "auto", "factorial" (k=1), "sum", "anand", "good",
/// "system" (k=2), "explicit" (k=3) or "brute".
#[pyfunction]
#[pyo3(signature = (n, k, method = "auto", force = false))]
fn lambda_count(n: usize, k: usize, method: &str, force: bool) -> PyResult<BigUint> {
    if n == 0 || k == 0 || k > n {
        return Err(PyValueError::new_err(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let guard = Guard::from_force_flag(force);
    let value = match (method, k) {
        ("auto" | "factorial", 1) => Ok(count::lambda_k1(n)),
        ("auto" | "sum", 2) => count::lambda_k2_sum(n),
        ("anand", 2) => Ok(count::lambda_k2_anand(n)),
        ("good", 2) => Ok(count::lambda_k2_good(n)),
        ("system", 2) => count::lambda_k2_system(n),
        ("auto" | "explicit", 3) => count::lambda_k3_explicit(n),
        ("auto" | "brute", _) => count::lambda_brute(n, k, guard),
        _ => {
            return Err(PyValueError::new_err(format!(
                "method {method:?} does not apply to k = {k}"
            )))
        }
    };
    value.map(|c| c.into_inner()).map_err(to_py)
}

/// Number of n²×n² binary matrices with k ones in every row, column and
/// block. `method` is "auto", "formula" (k=1) or "brute".
#[pyfunction]
#[pyo3(signature = (n, k, method = "auto", force = false))]
fn mu_count(n: usize, k: usize, method: &str, force: bool) -> PyResult<BigUint> {
    if n == 0 || k == 0 || k > n * n {
        return Err(PyValueError::new_err(format!(
            "need n >= 1 and 1 <= k <= n^2, got n = {n}, k = {k}"
        )));
    }
    let value = match (method, k) {
        ("auto" | "formula", 1) => Ok(count::mu_k1(n)),
        ("auto" | "brute", _) => count::mu_brute(n, k, Guard::from_force_flag(force)),
        _ => {
            return Err(PyValueError::new_err(format!(
                "method {method:?} does not apply to k = {k}"
            )))
        }
    };
    value.map(|c| c.into_inner()).map_err(to_py)
}

#[pyfunction]
fn pi_cardinality(n: usize) -> BigUint {
    generate::pi_cardinality(n)
}

/// Lazy stream of all S-permutation matrices of order `n`, in the order of
/// their lexicographically enumerated pre-images.
#[pyfunction]
#[pyo3(signature = (n, skip = BigUint::ZERO, limit = None))]
fn generate_bijective(
    n: usize,
    skip: BigUint,
    limit: Option<u64>,
) -> PyResult<PyBijectiveIterator> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be at least 1"));
    }
    let mut inner = generate::generate_bijective(n);
    inner.advance_by_big(&skip);
    Ok(PyBijectiveIterator { inner, left: limit })
}

/// All S-permutation matrices of order `n` found by filtering every
/// permutation matrix, plus the number of candidates examined.
#[pyfunction]
#[pyo3(signature = (n, force = false))]
fn generate_naive(n: usize, force: bool) -> PyResult<(Vec<PySPermutationMatrix>, u64)> {
    let mut g = generate::generate_naive(n, Guard::from_force_flag(force)).map_err(to_py)?;
    let found = g.by_ref().map(PySPermutationMatrix).collect();
    Ok((found, g.candidates_examined()))
}

#[pyfunction]
fn is_sudoku(rows: Vec<Vec<u32>>) -> PyResult<bool> {
    sudoku::is_sudoku(&rows).map_err(to_py)
}

/// Raises `ValueError` naming the first violated constraint.
#[pyfunction]
fn validate_sudoku(rows: Vec<Vec<u32>>) -> PyResult<()> {
    sudoku::validate(&rows).map_err(to_py)
}

#[pyfunction]
fn compose(parts: Vec<PySPermutationMatrix>) -> PyResult<Vec<Vec<u32>>> {
    let parts: Vec<_> = parts.into_iter().map(|p| p.0).collect();
    sudoku::compose(&parts).map(|g| g.rows()).map_err(to_py)
}

#[pyfunction]
fn decompose(rows: Vec<Vec<u32>>) -> PyResult<Vec<PySPermutationMatrix>> {
    let grid = SudokuMatrix::new(rows).map_err(to_py)?;
    Ok(sudoku::decompose(&grid)
        .into_iter()
        .map(PySPermutationMatrix)
        .collect())
}

#[pyfunction]
#[pyo3(signature = (n, force = false))]
fn count_sudoku(n: usize, force: bool) -> PyResult<BigUint> {
    sudoku::count_sudoku_parallel(n, Guard::from_force_flag(force)).map_err(to_py)
}

#[pymodule]
fn smatrix_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add(
        "GuardExceededError",
        m.py().get_type::<GuardExceededError>(),
    )?;
    m.add_class::<PyPiMatrix>()?;
    m.add_class::<PySPermutationMatrix>()?;
    m.add_class::<PyBijectiveIterator>()?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(phi_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(are_disjoint_pi, m)?)?;
    m.add_function(wrap_pyfunction!(are_disjoint_sigma, m)?)?;
    m.add_function(wrap_pyfunction!(is_s_permutation, m)?)?;
    m.add_function(wrap_pyfunction!(is_lambda_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_count, m)?)?;
    m.add_function(wrap_pyfunction!(mu_count, m)?)?;
    m.add_function(wrap_pyfunction!(pi_cardinality, m)?)?;
    m.add_function(wrap_pyfunction!(generate_bijective, m)?)?;
    m.add_function(wrap_pyfunction!(generate_naive, m)?)?;
    m.add_function(wrap_pyfunction!(is_sudoku, m)?)?;
    m.add_function(wrap_pyfunction!(validate_sudoku, m)?)?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(count_sudoku, m)?)?;
    Ok(())
}
