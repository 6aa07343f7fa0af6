//! Dense complex linear-algebra kernels: Hermitian eigendecomposition,
//! Householder unitary completion, inverse square roots, prescribed-diagonal
//! rotations and Haar-random unitaries.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{FrameError, Result};
use crate::matrix::{Complex64, ComplexMatrix, ONE, ZERO};

/// Convergence tolerance used when the library calls the eigensolver on its
/// own behalf.
pub const EIG_TOL: f64 = 1e-12;

/// Sweep cap for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 64;

/// Eigenvalues in non-increasing order with the matching unitary matrix of
/// eigenvectors (column `k` belongs to `values[k]`).
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Rebuilds `V · diag(f(λ)) · V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (k, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            for i in 0..n {
                scaled[(i, k)] *= w;
            }
        }
        (&scaled * &self.vectors.adjoint()).symmetrized()
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        *self.values.last().unwrap()
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations on `(A + A*)/2`. `tol` bounds both the accepted asymmetry and
/// the final off-diagonal Frobenius mass, each relative to `‖A‖_F`.
pub fn hermitian_eig(a: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition> {
    hermitian_eig_with(a, tol, tol)
}

/// Library-internal entry point: asymmetry is judged against `symmetry_tol`
/// while the iteration always runs to [`EIG_TOL`] or tighter.
pub(crate) fn eig(a: &ComplexMatrix, symmetry_tol: f64) -> Result<EigenDecomposition> {
    hermitian_eig_with(a, symmetry_tol.max(EIG_TOL), EIG_TOL)
}

fn hermitian_eig_with(a: &ComplexMatrix, symmetry_tol: f64, convergence_tol: f64) -> Result<EigenDecomposition> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(FrameError::NotSquare { rows, cols });
    }
    let n = rows;
    let scale = a.frobenius_norm();
    let defect = a.hermitian_defect();
    if defect > symmetry_tol * scale {
        return Err(FrameError::NotHermitian {
            defect,
            bound: symmetry_tol * scale,
        });
    }

    let mut m = a.symmetrized();
    let mut v = ComplexMatrix::identity(n);
    let threshold = convergence_tol * scale;
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(FrameError::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, k)] = v[(i, src)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilates `m[p][q]` with the unitary `U = diag(1, e^{-iφ}) · R(c, s)`,
/// updating `m ← U* m U` and `v ← v U`.
fn jacobi_rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = m[(p, q)];
    let beta = b.norm();
    if beta == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let phase = (b / beta).conj();
    let theta = (aqq - app) / (2.0 * beta);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        // |θ| overflowed: the coupling is negligible at this scale.
        0.5 / theta
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let u = [
        [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
        [phase * -s, phase * c],
    ];
    let n = m.rows();
    for k in 0..n {
        let x = m[(k, p)];
        let y = m[(k, q)];
        m[(k, p)] = x * u[0][0] + y * u[1][0];
        m[(k, q)] = x * u[0][1] + y * u[1][1];
        let x = v[(k, p)];
        let y = v[(k, q)];
        v[(k, p)] = x * u[0][0] + y * u[1][0];
        v[(k, q)] = x * u[0][1] + y * u[1][1];
    }
    for k in 0..n {
        let x = m[(p, k)];
        let y = m[(q, k)];
        m[(p, k)] = u[0][0].conj() * x + u[1][0].conj() * y;
        m[(q, k)] = u[0][1].conj() * x + u[1][1].conj() * y;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = Complex64::new(app - t * beta, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * beta, 0.0);
}

struct Householder {
    /// Full `l×l` unitary `H_0 H_1 ⋯ H_{n-1}`.
    q: ComplexMatrix,
    /// Upper-triangular `l×n` factor.
    r: ComplexMatrix,
}

/// Householder QR of a tall matrix. `min_pivot` aborts with the failing
/// column index when a column has no mass left below the diagonal.
fn householder_qr(a: &ComplexMatrix, min_pivot: f64) -> std::result::Result<Householder, usize> {
    let (l, n) = a.shape();
    assert!(l >= n);
    let mut r = a.clone();
    let mut reflectors: Vec<(usize, Vec<Complex64>)> = Vec::with_capacity(n);
    for k in 0..n {
        let x: Vec<Complex64> = (k..l).map(|i| r[(i, k)]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < min_pivot {
            return Err(k);
        }
        if norm == 0.0 {
            continue;
        }
        let phase = if x[0] == ZERO { ONE } else { x[0] / x[0].norm() };
        let alpha = -phase * norm;
        let mut w = x;
        w[0] -= alpha;
        let wnorm2: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        if wnorm2 == 0.0 {
            continue;
        }
        apply_reflector_left(&mut r, k, &w, wnorm2, k);
        reflectors.push((k, w));
    }
    let mut q = ComplexMatrix::identity(l);
    for (k, w) in reflectors.iter().rev() {
        let wnorm2: f64 = w.iter().map(|z| z.norm_sqr()).sum();
        apply_reflector_left(&mut q, *k, w, wnorm2, 0);
    }
    Ok(Householder { q, r })
}

/// `θ S^{-1}` for a full-column-rank `θ`, where `S = θ*θ`. Uses `θ = QR`, so
/// the result is `Q R^{-*}` and only `cond(θ)` enters the error.
pub(crate) fn canonical_dual_analysis(theta: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (l, n) = theta.shape();
    if l < n {
        return Err(FrameError::InvalidDimension(format!(
            "{l}×{n} analysis operator has fewer rows than columns"
        )));
    }
    let qr = householder_qr(theta, 0.0).map_err(|column| FrameError::DegenerateComplement { column })?;
    let mut r_inv = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        for i in (0..=j).rev() {
            let mut acc = if i == j { ONE } else { ZERO };
            for k in i + 1..=j {
                acc -= qr.r[(i, k)] * r_inv[(k, j)];
            }
            if qr.r[(i, i)] == ZERO {
                return Err(FrameError::SingularOrIndefinite {
                    min: 0.0,
                    max: theta.frobenius_norm(),
                });
            }
            r_inv[(i, j)] = acc / qr.r[(i, i)];
        }
    }
    Ok(&qr.q.column_block(0, n) * &r_inv.adjoint())
}

/// `A ← (I − 2ww*/‖w‖²) A` acting on rows `offset..`, columns `first_col..`.
fn apply_reflector_left(a: &mut ComplexMatrix, offset: usize, w: &[Complex64], wnorm2: f64, first_col: usize) {
    for j in first_col..a.cols() {
        let mut dot = ZERO;
        for (i, wi) in w.iter().enumerate() {
            dot += wi.conj() * a[(offset + i, j)];
        }
        let f = dot * (2.0 / wnorm2);
        for (i, wi) in w.iter().enumerate() {
            a[(offset + i, j)] -= wi * f;
        }
    }
}

/// Extends an `l×n` matrix with orthonormal columns to an `l×l` unitary.
/// The first `n` columns of the result are `q` itself, copied verbatim.
pub fn unitary_complete(q: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let (l, n) = q.shape();
    if l < n {
        return Err(FrameError::InvalidDimension(format!(
            "cannot complete {l}x{n}: fewer rows than columns"
        )));
    }
    let defect = q.isometry_defect();
    if defect > tol {
        return Err(FrameError::NotIsometry { defect });
    }
    if l == n {
        return Ok(q.clone());
    }
    let qr = householder_qr(q, 0.5).map_err(|column| FrameError::DegenerateComplement { column })?;
    let complement = qr.q.column_block(n, l - n);
    q.hstack(&complement)
}

/// `S^{-1/2}` for a Hermitian positive definite `S`.
pub fn inv_sqrt_psd(s: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let eig = eig(s, tol)?;
    let (min, max) = (eig.min(), eig.max());
    if min.is_nan() || min <= tol * max {
        return Err(FrameError::SingularOrIndefinite { min, max });
    }
    Ok(eig.reconstruct_with(|lambda| lambda.powf(-0.5)))
}

/// Returns the 1-based prefix length `k` at which `dominated` fails to be
/// majorized by `dominant`, after sorting both in non-increasing order.
/// Prefix sums may exceed by `tol·(1 + Σ|dominant|)`; the totals must agree
/// within `tol·(1 + |Σ dominant|)`, otherwise `k = m` is reported.
pub fn majorization_violation(dominant: &[f64], dominated: &[f64], tol: f64) -> Result<Option<usize>> {
    if dominant.len() != dominated.len() {
        return Err(FrameError::LengthMismatch {
            left: dominant.len(),
            right: dominated.len(),
        });
    }
    let m = dominant.len();
    let big = sorted_descending(dominant);
    let small = sorted_descending(dominated);
    let slack = tol * (1.0 + big.iter().map(|x| x.abs()).sum::<f64>());
    let (mut sum_big, mut sum_small) = (0.0, 0.0);
    for k in 0..m {
        sum_big += big[k];
        sum_small += small[k];
        if k + 1 < m && sum_small > sum_big + slack {
            return Ok(Some(k + 1));
        }
    }
    if (sum_small - sum_big).abs() > tol * (1.0 + sum_big.abs()) {
        return Ok(Some(m));
    }
    Ok(None)
}

fn sorted_descending(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn descending_order(xs: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&i, &j| xs[j].total_cmp(&xs[i]));
    idx
}

/// Real orthogonal `O` with `diag(O · diag(lambda) · Oᵀ) = targets`, built
/// from at most `m − 1` Givens rotations. Each rotation mixes two adjacent
/// (in sorted order) still-free diagonal values that straddle the largest
/// unassigned target, pinning one of them to it exactly.
pub fn schur_horn_unitary(lambda: &[f64], targets: &[f64], tol: f64) -> Result<ComplexMatrix> {
    if let Some(index) = majorization_violation(lambda, targets, tol)? {
        return Err(FrameError::MajorizationViolated { index });
    }
    let m = lambda.len();
    if m == 0 {
        return Err(FrameError::EmptyMatrix);
    }
    let lambda_order = descending_order(lambda);
    let target_order = descending_order(targets);

    // Working basis: position r starts with value lambda[lambda_order[r]].
    let mut values: Vec<f64> = lambda_order.iter().map(|&i| lambda[i]).collect();
    let mut o = vec![vec![0.0f64; m]; m];
    for (r, row) in o.iter_mut().enumerate() {
        row[r] = 1.0;
    }
    let mut free: Vec<usize> = (0..m).collect();
    let mut assigned = vec![usize::MAX; m];

    for &target_index in &target_order {
        let t = targets[target_index];
        if free.len() == 1 {
            assigned[free[0]] = target_index;
            break;
        }
        free.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
        let j = (0..free.len() - 1)
            .find(|&j| values[free[j + 1]] <= t)
            .unwrap_or(free.len() - 2);
        let (a, b) = (free[j], free[j + 1]);
        let (va, vb) = (values[a], values[b]);
        let gap = va - vb;
        let c2 = if gap > 0.0 {
            ((t - vb) / gap).clamp(0.0, 1.0)
        } else {
            1.0
        };
        let (c, s) = (c2.sqrt(), (1.0 - c2).sqrt());
        // O ← G O with G = [[c, s], [−s, c]] on rows (a, b).
        let mut row_b = std::mem::take(&mut o[b]);
        for (x, y) in o[a].iter_mut().zip(row_b.iter_mut()) {
            (*x, *y) = (c * *x + s * *y, -s * *x + c * *y);
        }
        o[b] = row_b;
        values[b] = va + vb - t;
        values[a] = t;
        assigned[a] = target_index;
        free.remove(j);
    }

    let mut out = ComplexMatrix::zeros(m, m);
    for (pos, &target_index) in assigned.iter().enumerate() {
        for (r, &src) in lambda_order.iter().enumerate() {
            out[(target_index, src)] = Complex64::new(o[pos][r], 0.0);
        }
    }
    Ok(out)
}

/// Haar-distributed `dim×dim` unitary, a deterministic function of
/// `(dim, seed)`.
pub fn haar_random_unitary(dim: usize, seed: u64) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(FrameError::InvalidDimension("dimension must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gaussian_matrix(dim, dim, &mut rng);
    let qr = householder_qr(&g, 0.0).expect("no pivot threshold");
    let mut q = qr.q;
    for k in 0..dim {
        let r = qr.r[(k, k)];
        let phase = if r == ZERO { ONE } else { r / r.norm() };
        for i in 0..dim {
            q[(i, k)] *= phase;
        }
    }
    Ok(q)
}

/// I.i.d. standard complex Gaussian entries (`E|z|² = 1`).
pub(crate) fn gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let data = (0..rows * cols)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    ComplexMatrix::from_vec(rows, cols, data).expect("shape is consistent")
}

/// Number of singular values of `a` above `tol` times the largest one.
pub fn numerical_rank(a: &ComplexMatrix, tol: f64) -> Result<usize> {
    let gram = if a.rows() <= a.cols() {
        a * &a.adjoint()
    } else {
        a.adjoint_mul(a)
    };
    let eig = eig(&gram, EIG_TOL)?;
    let top = eig.max().max(0.0).sqrt();
    if top == 0.0 {
        return Ok(0);
    }
    Ok(eig.values.iter().filter(|&&v| v.max(0.0).sqrt() > tol * top).count())
}
