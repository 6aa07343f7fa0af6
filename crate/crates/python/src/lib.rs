//! Python bindings for `opvframe_core`.
//!
//! Matrices cross the boundary as nested lists of Python `complex` values,
//! row-major. Library errors surface as `ValueError`, file errors as
//! `OSError` or `ValueError`.

use opvframe_core as core;
use opvframe_core::{Complex64, ComplexMatrix, FileError, FrameError, OpvFrame};
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

type Rows = Vec<Vec<Complex64>>;

fn value_error(e: FrameError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn file_error(e: FileError) -> PyErr {
    match e {
        FileError::Io { .. } => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn matrix(rows: Rows) -> PyResult<ComplexMatrix> {
    ComplexMatrix::from_rows(&rows).map_err(value_error)
}

/// A finite operator-valued frame: blocks `V_j` of shape `l_j × n`.
#[pyclass(name = "Frame", module = "opvframe", frozen)]
struct PyFrame {
    inner: OpvFrame,
}

impl From<OpvFrame> for PyFrame {
    fn from(inner: OpvFrame) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyFrame {
    /// Builds a frame from a list of blocks, each a list of rows.
    #[new]
    fn new(blocks: Vec<Rows>) -> PyResult<Self> {
        let blocks = blocks.into_iter().map(matrix).collect::<PyResult<Vec<_>>>()?;
        Ok(OpvFrame::new(blocks).map_err(value_error)?.into())
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn num_blocks(&self) -> usize {
        self.inner.num_blocks()
    }

    #[getter]
    fn block_sizes(&self) -> Vec<usize> {
        self.inner.block_sizes()
    }

    fn blocks(&self) -> Vec<Rows> {
        self.inner.blocks().iter().map(ComplexMatrix::to_rows).collect()
    }

    fn analysis_operator(&self) -> Rows {
        core::analysis_operator(&self.inner).to_rows()
    }

    fn frame_operator(&self) -> Rows {
        core::frame_operator(&self.inner).to_rows()
    }

    fn grammian(&self) -> Rows {
        core::grammian(&self.inner).to_rows()
    }

    #[pyo3(signature = (tol = core::DEFAULT_TOL))]
    fn frame_bounds(&self, tol: f64) -> PyResult<(f64, f64)> {
        core::frame_bounds(&self.inner, tol).map_err(value_error)
    }

    /// Classification report as a dict.
    #[pyo3(signature = (tol = core::DEFAULT_TOL))]
    fn classify<'py>(&self, py: Python<'py>, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let r = core::classify(&self.inner, tol).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("dim", r.dim)?;
        d.set_item("num_blocks", r.num_blocks)?;
        d.set_item("total_rows", r.total_rows)?;
        d.set_item("lower_bound", r.lower_bound)?;
        d.set_item("upper_bound", r.upper_bound)?;
        d.set_item("is_bessel", r.is_bessel)?;
        d.set_item("is_frame", r.is_frame)?;
        d.set_item("is_tight", r.is_tight)?;
        d.set_item("is_parseval", r.is_parseval)?;
        d.set_item("is_riesz", r.is_riesz)?;
        d.set_item("is_orthonormal", r.is_orthonormal)?;
        d.set_item("is_equal_norm", r.is_equal_norm)?;
        d.set_item("block_frobenius_norms", r.block_frobenius_norms)?;
        d.set_item("mean_norm", r.mean_norm)?;
        d.set_item("trace_identity_residual", r.trace_identity_residual)?;
        d.set_item("tol", r.tol)?;
        Ok(d)
    }

    #[pyo3(signature = (tol = core::DEFAULT_TOL))]
    fn cross_gram_orthonormality(&self, tol: f64) -> bool {
        core::cross_gram_orthonormality(&self.inner, tol)
    }

    #[pyo3(signature = (tol = core::DEFAULT_TOL))]
    fn canonical_parseval(&self, tol: f64) -> PyResult<Self> {
        Ok(core::canonical_parseval(&self.inner, tol).map_err(value_error)?.into())
    }

    #[pyo3(signature = (tol = core::DEFAULT_TOL))]
    fn dilate(&self, tol: f64) -> PyResult<Self> {
        Ok(core::dilate(&self.inner, tol).map_err(value_error)?.into())
    }

    #[pyo3(signature = (projection, tol = core::DEFAULT_TOL))]
    fn compress(&self, projection: Rows, tol: f64) -> PyResult<Self> {
        let p = matrix(projection)?;
        Ok(core::compress_by_projection(&self.inner, &p, tol)
            .map_err(value_error)?
            .into())
    }

    /// Returns `(dual, residual)`.
    #[pyo3(signature = (tol = core::DEFAULT_TOL))]
    fn canonical_dual(&self, tol: f64) -> PyResult<(Self, f64)> {
        let pair = core::canonical_dual(&self.inner, tol).map_err(value_error)?;
        Ok((pair.dual.into(), pair.residual))
    }

    /// Returns `(dual, bound)` with bound `1 + c²`.
    #[pyo3(signature = (c, tol = core::DEFAULT_TOL))]
    fn tight_dual(&self, c: f64, tol: f64) -> PyResult<(Self, f64)> {
        let t = core::tight_dual(&self.inner, c, tol).map_err(value_error)?;
        Ok((t.pair.dual.into(), t.bound))
    }

    /// Returns `(robust, failing_subsets)` with 0-based block indices.
    #[pyo3(signature = (k, tol = core::DEFAULT_TOL))]
    fn robust_to_k(&self, k: usize, tol: f64) -> PyResult<(bool, Vec<Vec<usize>>)> {
        let r = core::robust_to_k(&self.inner, k, tol).map_err(value_error)?;
        Ok((r.robust, r.failing_subsets))
    }

    #[pyo3(signature = (tol = core::DEFAULT_TOL))]
    fn d1(&self, tol: f64) -> PyResult<f64> {
        core::d1(&self.inner, tol).map_err(value_error)
    }

    #[pyo3(signature = (k, tol = core::DEFAULT_TOL))]
    fn erasure_report<'py>(&self, py: Python<'py>, k: usize, tol: f64) -> PyResult<Bound<'py, PyDict>> {
        let r = core::erasure_report(&self.inner, k, tol).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("k", r.k)?;
        d.set_item("robust", r.robust)?;
        d.set_item("failing_subsets", r.failing_subsets)?;
        d.set_item("per_block_error_norms", r.per_block_error_norms)?;
        d.set_item("d1", r.d1)?;
        d.set_item("is_parseval_input", r.is_parseval_input)?;
        d.set_item("is_d1_optimal", r.is_d1_optimal)?;
        d.set_item("tol", r.tol)?;
        Ok(d)
    }

    /// Returns `(transform, residual, unitary)` with `other_j = self_j · T`.
    #[pyo3(signature = (other, tol = core::DEFAULT_TOL))]
    fn similarity_to(&self, other: &PyFrame, tol: f64) -> PyResult<(Rows, f64, bool)> {
        let s = core::similarity_transform(&self.inner, &other.inner, tol).map_err(value_error)?;
        Ok((s.transform.to_rows(), s.residual, s.unitary))
    }

    fn to_json(&self) -> PyResult<String> {
        core::frame_file::format_frame(&self.inner).map_err(file_error)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(core::frame_file::parse_frame(text).map_err(file_error)?.into())
    }

    fn write(&self, path: &str) -> PyResult<()> {
        core::write_frame(&self.inner, path).map_err(file_error)
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        Ok(core::read_frame(path).map_err(file_error)?.into())
    }

    fn __eq__(&self, other: &PyFrame) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Frame(dim={}, block_sizes={:?})",
            self.inner.dim(),
            self.inner.block_sizes()
        )
    }
}

#[pyfunction]
fn coordinate_frame(n: usize) -> PyResult<PyFrame> {
    Ok(core::coordinate_frame(n).map_err(value_error)?.into())
}

#[pyfunction]
fn roots_of_unity_frame(n: usize, block_sizes: Vec<usize>) -> PyResult<PyFrame> {
    Ok(core::roots_of_unity_frame(n, &block_sizes).map_err(value_error)?.into())
}

#[pyfunction]
fn cyclic_projection_frame() -> PyFrame {
    core::cyclic_projection_frame().into()
}

#[pyfunction]
#[pyo3(signature = (n, block_sizes, seed = 0))]
fn random_parseval(n: usize, block_sizes: Vec<usize>, seed: u64) -> PyResult<PyFrame> {
    Ok(core::random_parseval(n, &block_sizes, seed)
        .map_err(value_error)?
        .into())
}

#[pyfunction]
fn optimal_one_erasure_frame(n: usize, block_sizes: Vec<usize>) -> PyResult<PyFrame> {
    Ok(core::optimal_one_erasure_frame(n, &block_sizes)
        .map_err(value_error)?
        .into())
}

/// Frame with frame operator `s` (identity when omitted) and every diagonal
/// entry of `V_j V_j*` equal to `alphas[j]`.
#[pyfunction]
#[pyo3(signature = (n, block_sizes, alphas, s = None, tol = core::DEFAULT_TOL))]
fn construct_with_frame_operator(
    n: usize,
    block_sizes: Vec<usize>,
    alphas: Vec<f64>,
    s: Option<Rows>,
    tol: f64,
) -> PyResult<PyFrame> {
    let mut spec = core::ConstructionSpec::new(n, block_sizes, alphas);
    if let Some(s) = s {
        spec = spec.with_frame_operator(matrix(s)?);
    }
    Ok(core::construct_with_frame_operator(&spec, tol)
        .map_err(value_error)?
        .into())
}

/// Eigenvalues (descending) and eigenvectors (as columns) of a Hermitian matrix.
#[pyfunction]
#[pyo3(signature = (a, tol = 1e-12))]
fn hermitian_eig(a: Rows, tol: f64) -> PyResult<(Vec<f64>, Rows)> {
    let e = core::hermitian_eig(&matrix(a)?, tol).map_err(value_error)?;
    Ok((e.values, e.vectors.to_rows()))
}

#[pyfunction]
#[pyo3(signature = (lam, targets, tol = 1e-10))]
fn schur_horn_unitary(lam: Vec<f64>, targets: Vec<f64>, tol: f64) -> PyResult<Rows> {
    Ok(core::schur_horn_unitary(&lam, &targets, tol)
        .map_err(value_error)?
        .to_rows())
}

#[pyfunction]
fn haar_random_unitary(dim: usize, seed: u64) -> PyResult<Rows> {
    Ok(core::haar_random_unitary(dim, seed).map_err(value_error)?.to_rows())
}

#[pymodule]
fn opvframe(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFrame>()?;
    m.add("DEFAULT_TOL", core::DEFAULT_TOL)?;
    m.add_function(wrap_pyfunction!(coordinate_frame, m)?)?;
    m.add_function(wrap_pyfunction!(roots_of_unity_frame, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_projection_frame, m)?)?;
    m.add_function(wrap_pyfunction!(random_parseval, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_one_erasure_frame, m)?)?;
    m.add_function(wrap_pyfunction!(construct_with_frame_operator, m)?)?;
    m.add_function(wrap_pyfunction!(hermitian_eig, m)?)?;
    m.add_function(wrap_pyfunction!(schur_horn_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(haar_random_unitary, m)?)?;
    Ok(())
}
