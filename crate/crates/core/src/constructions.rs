//! Frame generators: harmonic (roots of unity), coordinate, cyclic
//! projections, random Parseval, prescribed frame operator and optimal
//! 1-erasure frames.

use std::f64::consts::TAU;

use crate::error::{FrameError, Result};
use crate::frame::{OpvFrame, DEFAULT_TOL};
use crate::linalg::{self, haar_random_unitary, schur_horn_unitary};
use crate::matrix::{Complex64, ComplexMatrix};

fn check_sizes(block_sizes: &[usize]) -> Result<usize> {
    if block_sizes.is_empty() || block_sizes.contains(&0) {
        return Err(FrameError::InvalidDimension(
            "block sizes must be non-empty and positive".into(),
        ));
    }
    Ok(block_sizes.iter().sum())
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(FrameError::InvalidDimension("dimension must be at least 1".into()));
    }
    Ok(())
}

/// `exp(2πi·k/l)`, reducing the exponent mod `l` first.
pub fn root_of_unity(k: usize, l: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (k % l) as f64 / l as f64)
}

/// Harmonic equal-norm Parseval frame. With `l = Σ l_j`, column `k` uses the
/// root `c_k = exp(2πi·k/l)` (`k = 0..n`) and global row `i` holds
/// `c_k^i / √l`; rows are dealt out to blocks in order.
pub fn roots_of_unity_frame(n: usize, block_sizes: &[usize]) -> Result<OpvFrame> {
    check_dim(n)?;
    let l = check_sizes(block_sizes)?;
    if l < n {
        return Err(FrameError::InsufficientRows { total_rows: l, dim: n });
    }
    let scale = 1.0 / (l as f64).sqrt();
    let mut theta = ComplexMatrix::zeros(l, n);
    for i in 0..l {
        for k in 0..n {
            theta[(i, k)] = root_of_unity(k * i, l) * scale;
        }
    }
    OpvFrame::from_analysis(&theta, block_sizes)
}

/// The standard basis split into `n` rank-one blocks `e_j*`.
pub fn coordinate_frame(n: usize) -> Result<OpvFrame> {
    check_dim(n)?;
    OpvFrame::from_analysis(&ComplexMatrix::identity(n), &vec![1; n])
}

/// Five `2×5` blocks on `C^5`, block `j` selecting coordinates `j` and
/// `j+1 (mod 5)`. Frame operator `2I`.
pub fn cyclic_projection_frame() -> OpvFrame {
    const N: usize = 5;
    let blocks = (0..N)
        .map(|j| {
            let mut b = ComplexMatrix::zeros(2, N);
            b[(0, j)] = Complex64::new(1.0, 0.0);
            b[(1, (j + 1) % N)] = Complex64::new(1.0, 0.0);
            b
        })
        .collect();
    OpvFrame::new(blocks).expect("fixed shapes")
}

/// First `n` columns of a seeded Haar unitary of size `l`, sliced into blocks.
pub fn random_parseval(n: usize, block_sizes: &[usize], seed: u64) -> Result<OpvFrame> {
    check_dim(n)?;
    let l = check_sizes(block_sizes)?;
    if l < n {
        return Err(FrameError::InsufficientRows { total_rows: l, dim: n });
    }
    let u = haar_random_unitary(l, seed)?;
    OpvFrame::from_analysis(&u.column_block(0, n), block_sizes)
}

/// Inputs for [`construct_with_frame_operator`].
#[derive(Debug, Clone)]
pub struct ConstructionSpec {
    pub dim: usize,
    pub block_sizes: Vec<usize>,
    /// Target value of every diagonal entry of `V_j V_j*`, one per block.
    pub alphas: Vec<f64>,
    /// Desired frame operator; `None` means `I`.
    pub frame_operator: Option<ComplexMatrix>,
}

impl ConstructionSpec {
    pub fn new(dim: usize, block_sizes: Vec<usize>, alphas: Vec<f64>) -> Self {
        Self {
            dim,
            block_sizes,
            alphas,
            frame_operator: None,
        }
    }

    pub fn with_frame_operator(mut self, s: ComplexMatrix) -> Self {
        self.frame_operator = Some(s);
        self
    }

    /// `(α_1 repeated l_1 times, …, α_m repeated l_m times)`.
    pub fn row_targets(&self) -> Vec<f64> {
        self.block_sizes
            .iter()
            .zip(&self.alphas)
            .flat_map(|(&size, &alpha)| std::iter::repeat_n(alpha, size))
            .collect()
    }
}

/// Builds `{V_j}` with `Σ V_j* V_j = S` and `diag(V_j V_j*) = (α_j, …, α_j)`.
///
/// With `S = U Λ U*` and `D` the `l×n` matrix carrying `√λ_k` on its leading
/// diagonal, `F = W D U*` satisfies `F*F = S` for any unitary `W`, while
/// `F F* = W diag(λ, 0, …, 0) W*`. Choosing `W` from the prescribed-diagonal
/// rotation chain fixes the row norms of `F` to the targets.
pub fn construct_with_frame_operator(spec: &ConstructionSpec, tol: f64) -> Result<OpvFrame> {
    let n = spec.dim;
    check_dim(n)?;
    let l = check_sizes(&spec.block_sizes)?;
    if spec.alphas.len() != spec.block_sizes.len() {
        return Err(FrameError::LengthMismatch {
            left: spec.block_sizes.len(),
            right: spec.alphas.len(),
        });
    }
    if let Some(a) = spec.alphas.iter().find(|a| !a.is_finite() || **a < 0.0) {
        return Err(FrameError::InvalidArgument(format!(
            "α = {a} must be finite and non-negative"
        )));
    }
    if l < n {
        return Err(FrameError::InsufficientRows { total_rows: l, dim: n });
    }
    let s = spec
        .frame_operator
        .clone()
        .unwrap_or_else(|| ComplexMatrix::identity(n));
    if s.shape() != (n, n) {
        return Err(FrameError::ShapeMismatch(format!(
            "frame operator is {}x{}, expected {n}x{n}",
            s.rows(),
            s.cols()
        )));
    }

    let eig = linalg::eig(&s, tol)?;
    let (min, max) = (eig.min(), eig.max());
    if min < -tol * max.abs().max(1.0) {
        return Err(FrameError::SingularOrIndefinite { min, max });
    }
    let spectrum: Vec<f64> = eig.values.iter().map(|&x| x.max(0.0)).collect();
    let trace: f64 = spectrum.iter().sum();
    let weighted: f64 = spec
        .block_sizes
        .iter()
        .zip(&spec.alphas)
        .map(|(&size, &alpha)| size as f64 * alpha)
        .sum();
    if (weighted - trace).abs() > tol * (1.0 + trace.abs()) {
        return Err(FrameError::TraceMismatch { weighted, trace });
    }

    let mut padded = spectrum.clone();
    padded.resize(l, 0.0);
    let w = schur_horn_unitary(&padded, &spec.row_targets(), tol)?;

    // W D: column k of W scaled by √λ_k.
    let mut wd = w.column_block(0, n);
    for (k, &lambda) in spectrum.iter().enumerate() {
        let root = lambda.sqrt();
        for i in 0..l {
            wd[(i, k)] *= root;
        }
    }
    let f = &wd * &eig.vectors.adjoint();
    OpvFrame::from_analysis(&f, &spec.block_sizes)
}

/// Equal-norm Parseval frame with `‖V_j‖_F = √(n/m)`, which minimizes the
/// worst single-block erasure error. Uses `α_j = n / (m·l_j)` and `S = I`.
pub fn optimal_one_erasure_frame(n: usize, block_sizes: &[usize]) -> Result<OpvFrame> {
    check_dim(n)?;
    let l = check_sizes(block_sizes)?;
    if l < n {
        return Err(FrameError::InsufficientRows { total_rows: l, dim: n });
    }
    let m = block_sizes.len() as f64;
    let alphas = block_sizes.iter().map(|&size| n as f64 / (m * size as f64)).collect();
    let spec = ConstructionSpec::new(n, block_sizes.to_vec(), alphas);
    construct_with_frame_operator(&spec, DEFAULT_TOL).map_err(|e| match e {
        FrameError::MajorizationViolated { index } => FrameError::Infeasible { index },
        other => other,
    })
}
