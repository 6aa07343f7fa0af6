//! Finite operator-valued frames: the block model, analysis / frame /
//! Grammian operators, frame bounds and classification.

use crate::error::{FrameError, Result};
use crate::linalg::{self, EIG_TOL};
use crate::matrix::{pairwise_sum, ComplexMatrix};

/// Default relative tolerance for classification decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An ordered family of blocks `V_j : C^n → C^{l_j}`, each stored as an
/// `l_j × n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OpvFrame {
    dim: usize,
    blocks: Vec<ComplexMatrix>,
}

impl OpvFrame {
    pub fn new(blocks: Vec<ComplexMatrix>) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| FrameError::InvalidDimension("a frame needs at least one block".into()))?;
        let dim = first.cols();
        if let Some((j, b)) = blocks.iter().enumerate().find(|(_, b)| b.cols() != dim) {
            return Err(FrameError::ShapeMismatch(format!(
                "block {j} has {} columns, expected {dim}",
                b.cols()
            )));
        }
        Ok(Self { dim, blocks })
    }

    /// Slices an `l × n` analysis operator into consecutive row blocks.
    pub fn from_analysis(theta: &ComplexMatrix, block_sizes: &[usize]) -> Result<Self> {
        let total: usize = block_sizes.iter().sum();
        if block_sizes.is_empty() || block_sizes.contains(&0) {
            return Err(FrameError::InvalidDimension(
                "block sizes must be positive and non-empty".into(),
            ));
        }
        if total != theta.rows() {
            return Err(FrameError::ShapeMismatch(format!(
                "block sizes sum to {total} but the operator has {} rows",
                theta.rows()
            )));
        }
        let mut offset = 0;
        let blocks = block_sizes
            .iter()
            .map(|&size| {
                let b = theta.row_block(offset, size);
                offset += size;
                b
            })
            .collect();
        Self::new(blocks)
    }

    /// Domain dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn block(&self, j: usize) -> &ComplexMatrix {
        &self.blocks[j]
    }

    pub fn into_blocks(self) -> Vec<ComplexMatrix> {
        self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(ComplexMatrix::rows).collect()
    }

    /// `l = Σ l_j`.
    pub fn total_rows(&self) -> usize {
        self.blocks.iter().map(ComplexMatrix::rows).sum()
    }

    /// Row offset of block `j` inside the analysis operator.
    pub fn block_offset(&self, j: usize) -> usize {
        self.blocks[..j].iter().map(ComplexMatrix::rows).sum()
    }

    pub fn same_signature(&self, other: &Self) -> bool {
        self.dim == other.dim && self.block_sizes() == other.block_sizes()
    }

    /// Applies `V_j ↦ f(V_j)` to every block.
    pub fn map_blocks(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Result<Self> {
        Self::new(self.blocks.iter().map(f).collect())
    }

    /// Blocks right-multiplied by `t`.
    pub fn right_multiply(&self, t: &ComplexMatrix) -> Result<Self> {
        if t.rows() != self.dim {
            return Err(FrameError::ShapeMismatch(format!(
                "cannot right-multiply blocks with {} columns by a {}x{} matrix",
                self.dim,
                t.rows(),
                t.cols()
            )));
        }
        self.map_blocks(|b| b * t)
    }

    /// Keeps the first `count` columns of every block.
    pub fn leading_columns(&self, count: usize) -> Result<Self> {
        if count == 0 || count > self.dim {
            return Err(FrameError::InvalidDimension(format!(
                "cannot keep {count} of {} columns",
                self.dim
            )));
        }
        self.map_blocks(|b| b.column_block(0, count))
    }

    pub fn block_frobenius_norms(&self) -> Vec<f64> {
        self.blocks.iter().map(ComplexMatrix::frobenius_norm).collect()
    }

    /// `Σ_j ‖V_j‖_F²`.
    pub fn total_energy(&self) -> f64 {
        let squares: Vec<f64> = self.blocks.iter().map(ComplexMatrix::frobenius_norm_sqr).collect();
        pairwise_sum(&squares)
    }
}

/// `θ = [V_1; …; V_m]`, an `l × n` matrix.
pub fn analysis_operator(frame: &OpvFrame) -> ComplexMatrix {
    ComplexMatrix::vstack(frame.blocks()).expect("blocks share a column count")
}

/// `S = Σ_j V_j* V_j`, accumulated block by block.
pub fn frame_operator(frame: &OpvFrame) -> ComplexMatrix {
    let n = frame.dim();
    frame
        .blocks()
        .iter()
        .fold(ComplexMatrix::zeros(n, n), |acc, b| &acc + &b.adjoint_mul(b))
}

/// `G = θ θ*`, an `l × l` matrix.
pub fn grammian(frame: &OpvFrame) -> ComplexMatrix {
    let theta = analysis_operator(frame);
    &theta * &theta.adjoint()
}

/// Optimal frame bounds `(A, B)`: the extreme eigenvalues of `S`.
pub fn frame_bounds(frame: &OpvFrame, tol: f64) -> Result<(f64, f64)> {
    let eig = linalg::eig(&frame_operator(frame), tol)?;
    Ok((eig.min(), eig.max()))
}

/// `A > tol·B` with `B > 0`.
pub(crate) fn bounds_give_frame(lower: f64, upper: f64, tol: f64) -> bool {
    upper > 0.0 && lower > tol * upper
}

/// `‖S − I‖_F`.
pub(crate) fn parseval_defect(frame: &OpvFrame) -> f64 {
    frame_operator(frame).distance_to_identity()
}

pub(crate) fn is_parseval(frame: &OpvFrame, tol: f64) -> bool {
    parseval_defect(frame) <= tol * (frame.dim() as f64).sqrt()
}

pub(crate) fn require_parseval(frame: &OpvFrame, tol: f64) -> Result<()> {
    let defect = parseval_defect(frame);
    if defect <= tol * (frame.dim() as f64).sqrt() {
        Ok(())
    } else {
        Err(FrameError::NotParseval { defect })
    }
}

/// Classification of a frame. All thresholds are relative to the frame's
/// own scale except the Parseval / orthonormal ones, which compare to `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameReport {
    pub dim: usize,
    pub num_blocks: usize,
    pub total_rows: usize,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub is_bessel: bool,
    pub is_frame: bool,
    pub is_tight: bool,
    pub is_parseval: bool,
    pub is_riesz: bool,
    pub is_orthonormal: bool,
    pub is_equal_norm: bool,
    pub block_frobenius_norms: Vec<f64>,
    /// Mean block norm `c`.
    pub mean_norm: f64,
    pub trace_identity_residual: f64,
    pub tol: f64,
}

pub fn classify(frame: &OpvFrame, tol: f64) -> Result<FrameReport> {
    let n = frame.dim();
    let l = frame.total_rows();
    let s = frame_operator(frame);
    let eig = linalg::eig(&s, tol)?;
    let (lower, upper) = (eig.min(), eig.max());

    let is_frame = bounds_give_frame(lower, upper, tol);
    let is_parseval = is_frame && s.distance_to_identity() <= tol * (n as f64).sqrt();
    let is_tight = is_frame && (upper - lower <= tol * upper || is_parseval);
    let is_riesz = is_frame && l == n && blocks_full_row_rank(frame, tol)?;
    let is_orthonormal = is_parseval && is_riesz;

    let norms = frame.block_frobenius_norms();
    let mean_norm = norms.iter().sum::<f64>() / norms.len() as f64;
    let is_equal_norm = norms.iter().all(|x| (x - mean_norm).abs() <= tol * (1.0 + mean_norm));

    let trace_g = grammian(frame).trace().re;
    let trace_identity_residual = (trace_g - frame.total_energy()).abs();

    Ok(FrameReport {
        dim: n,
        num_blocks: frame.num_blocks(),
        total_rows: l,
        lower_bound: lower,
        upper_bound: upper,
        is_bessel: true,
        is_frame,
        is_tight,
        is_parseval,
        is_riesz,
        is_orthonormal,
        is_equal_norm,
        block_frobenius_norms: norms,
        mean_norm,
        trace_identity_residual,
        tol,
    })
}

fn blocks_full_row_rank(frame: &OpvFrame, tol: f64) -> Result<bool> {
    for b in frame.blocks() {
        if linalg::numerical_rank(b, tol)? != b.rows() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parseval together with `V_i V_j* = δ_ij I` for every pair of blocks.
/// Agrees with [`FrameReport::is_orthonormal`].
pub fn cross_gram_orthonormality(frame: &OpvFrame, tol: f64) -> bool {
    if !is_parseval(frame, tol) {
        return false;
    }
    let blocks = frame.blocks();
    for (i, vi) in blocks.iter().enumerate() {
        for (j, vj) in blocks.iter().enumerate() {
            let cross = vi * &vj.adjoint();
            let defect = if i == j {
                cross.distance_to_identity()
            } else {
                cross.frobenius_norm()
            };
            if defect > tol {
                return false;
            }
        }
    }
    true
}

/// Eigenvalues of the Grammian, descending.
pub fn grammian_spectrum(frame: &OpvFrame) -> Result<Vec<f64>> {
    Ok(linalg::eig(&grammian(frame), EIG_TOL)?.values)
}
