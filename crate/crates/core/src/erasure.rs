//! Block erasures: robustness to `k` lost blocks, the reconstruction error
//! operator of a single lost block, and the worst-case measure `d₁`.
//!
//! Block indices are 0-based throughout.

use crate::error::{FrameError, Result};
use crate::frame::{analysis_operator, is_parseval, require_parseval, OpvFrame};
use crate::linalg;
use crate::matrix::{ComplexMatrix, ZERO};

const MAX_BLOCKS: usize = 24;
const MAX_SUBSETS: u128 = 2_000_000;

/// Outcome of the `k`-erasure test.
#[derive(Debug, Clone, PartialEq)]
pub struct Robustness {
    pub robust: bool,
    /// Erased index sets that leave a non-frame, in lexicographic order.
    pub failing_subsets: Vec<Vec<usize>>,
}

fn binomial(m: usize, k: usize) -> u128 {
    let k = k.min(m - k);
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}

/// Calls `visit` on every `k`-subset of `0..m` in lexicographic order.
fn for_each_subset(m: usize, k: usize, mut visit: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx)?;
        // Rightmost position that can still advance.
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < m - k + p) else {
            return Ok(());
        };
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

/// Checks that every family left after erasing `k` blocks is still a frame,
/// judged as `λ_min(S_rest) > tol·λ_max(S)` against the full frame operator.
pub fn robust_to_k(frame: &OpvFrame, k: usize, tol: f64) -> Result<Robustness> {
    let m = frame.num_blocks();
    if k >= m {
        return Err(FrameError::KTooLarge { k, blocks: m });
    }
    let subsets = binomial(m, k);
    if m > MAX_BLOCKS || subsets > MAX_SUBSETS {
        return Err(FrameError::EnumerationTooLarge { blocks: m, subsets });
    }
    let n = frame.dim();
    let parts: Vec<ComplexMatrix> = frame.blocks().iter().map(|b| b.adjoint_mul(b)).collect();
    let total = parts.iter().fold(ComplexMatrix::zeros(n, n), |acc, p| &acc + p);
    let threshold = tol * linalg::eig(&total, tol)?.max();

    let mut failing = Vec::new();
    let mut erased = vec![false; m];
    for_each_subset(m, k, |subset| {
        erased.iter_mut().for_each(|e| *e = false);
        subset.iter().for_each(|&j| erased[j] = true);
        let rest = parts
            .iter()
            .zip(&erased)
            .filter(|(_, &gone)| !gone)
            .fold(ComplexMatrix::zeros(n, n), |acc, (p, _)| &acc + p);
        let lower = linalg::eig(&rest, tol)?.min();
        if lower.is_nan() || lower <= threshold {
            failing.push(subset.to_vec());
        }
        Ok(())
    })?;
    Ok(Robustness {
        robust: failing.is_empty(),
        failing_subsets: failing,
    })
}

/// Reconstruction error `θ* D_i θ` left by losing block `i` when decoding
/// with `θ*`.
#[derive(Debug, Clone)]
pub struct ErasedError {
    pub operator: ComplexMatrix,
    pub frobenius_norm: f64,
    /// Trace norm of the (positive) operator; equals `‖V_i‖_F²`.
    pub trace_norm: f64,
    /// Whether the input was Parseval; the error formula assumes it.
    pub parseval_input: bool,
}

pub fn erased_error_operator(frame: &OpvFrame, index: usize, tol: f64) -> Result<ErasedError> {
    let m = frame.num_blocks();
    if index >= m {
        return Err(FrameError::IndexOutOfRange { index, blocks: m });
    }
    // D_i θ: keep only the rows of block i.
    let mut kept = analysis_operator(frame);
    let start = frame.block_offset(index);
    let end = start + frame.block(index).rows();
    for r in (0..kept.rows()).filter(|r| !(start..end).contains(r)) {
        for c in 0..kept.cols() {
            kept[(r, c)] = ZERO;
        }
    }
    let operator = analysis_operator(frame).adjoint_mul(&kept);
    Ok(ErasedError {
        frobenius_norm: operator.frobenius_norm(),
        trace_norm: operator.trace().re,
        operator,
        parseval_input: is_parseval(frame, tol),
    })
}

/// Worst single-block erasure error of a Parseval frame, `max_j ‖V_j‖_F²`.
pub fn d1(frame: &OpvFrame, tol: f64) -> Result<f64> {
    require_parseval(frame, tol)?;
    Ok(block_energies(frame).into_iter().fold(0.0, f64::max))
}

fn block_energies(frame: &OpvFrame) -> Vec<f64> {
    frame.blocks().iter().map(ComplexMatrix::frobenius_norm_sqr).collect()
}

/// Erasure summary of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct ErasureReport {
    pub k: usize,
    pub robust: bool,
    pub failing_subsets: Vec<Vec<usize>>,
    /// Trace norms of `θ* D_j θ`, i.e. `‖V_j‖_F²`.
    pub per_block_error_norms: Vec<f64>,
    /// `None` unless the input is Parseval.
    pub d1: Option<f64>,
    pub is_parseval_input: bool,
    pub is_d1_optimal: bool,
    pub tol: f64,
}

/// Robustness to `k` erasures plus the `d₁` verdict when it applies.
pub fn erasure_report(frame: &OpvFrame, k: usize, tol: f64) -> Result<ErasureReport> {
    let robustness = robust_to_k(frame, k, tol)?;
    let energies = block_energies(frame);
    let is_parseval_input = is_parseval(frame, tol);
    let (d1, is_d1_optimal) = if is_parseval_input {
        let d1 = energies.iter().copied().fold(0.0, f64::max);
        (Some(d1), d1_optimal(frame, d1, tol))
    } else {
        (None, false)
    };
    Ok(ErasureReport {
        k,
        robust: robustness.robust,
        failing_subsets: robustness.failing_subsets,
        per_block_error_norms: energies,
        d1,
        is_parseval_input,
        is_d1_optimal,
        tol,
    })
}

fn d1_optimal(frame: &OpvFrame, d1: f64, tol: f64) -> bool {
    let optimum = frame.dim() as f64 / frame.num_blocks() as f64;
    let norms = frame.block_frobenius_norms();
    let mean = norms.iter().sum::<f64>() / norms.len() as f64;
    let equal_norm = norms.iter().all(|x| (x - mean).abs() <= tol * (1.0 + mean));
    equal_norm && (d1 - optimum).abs() <= tol * (1.0 + optimum)
}

/// `d₁` optimality verdict for a Parseval frame, with its 1-erasure
/// robustness (0 erasures for a single-block frame).
pub fn check_d1_optimal(frame: &OpvFrame, tol: f64) -> Result<ErasureReport> {
    require_parseval(frame, tol)?;
    erasure_report(frame, 1.min(frame.num_blocks() - 1), tol)
}
