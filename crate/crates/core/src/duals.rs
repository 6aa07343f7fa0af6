//! Canonical Parseval transform, dilation, projection compression, dual
//! frames and similarity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{FrameError, Result};
use crate::frame::{
    analysis_operator, bounds_give_frame, frame_operator, is_parseval, parseval_defect, require_parseval, OpvFrame,
};
use crate::linalg::{self, unitary_complete};
use crate::matrix::ComplexMatrix;

/// Condition-number guard for inverting a frame operator.
const MAX_CONDITION: f64 = 1e12;

/// A frame together with a dual: `Σ W_j* V_j = I` up to `residual`.
#[derive(Debug, Clone)]
pub struct DualPair {
    pub frame: OpvFrame,
    pub dual: OpvFrame,
    /// `‖θ_W* θ_V − I‖_F`.
    pub residual: f64,
}

impl DualPair {
    fn new(frame: OpvFrame, dual: OpvFrame) -> Self {
        let residual = duality_residual(&frame, &dual);
        Self { frame, dual, residual }
    }
}

/// `‖θ_W* θ_V − I‖_F`; the two frames must share a signature.
pub fn duality_residual(frame: &OpvFrame, dual: &OpvFrame) -> f64 {
    analysis_operator(dual)
        .adjoint_mul(&analysis_operator(frame))
        .distance_to_identity()
}

fn require_frame(frame: &OpvFrame, tol: f64) -> Result<linalg::EigenDecomposition> {
    let eig = linalg::eig(&frame_operator(frame), tol)?;
    let (lower, upper) = (eig.min(), eig.max());
    if bounds_give_frame(lower, upper, tol) {
        Ok(eig)
    } else {
        Err(FrameError::NotAFrame { lower, upper })
    }
}

/// `{V_j S^{-1/2}}`, the Parseval frame canonically associated with `F`.
pub fn canonical_parseval(frame: &OpvFrame, tol: f64) -> Result<OpvFrame> {
    let eig = require_frame(frame, tol)?;
    let inv_sqrt = eig.reconstruct_with(|lambda| lambda.powf(-0.5));
    frame.right_multiply(&inv_sqrt)
}

/// Extends a Parseval frame on `C^n` to an orthonormal frame on `C^l` whose
/// blocks are `[V_j, V_j']`.
pub fn dilate(frame: &OpvFrame, tol: f64) -> Result<OpvFrame> {
    require_parseval(frame, tol)?;
    let theta = analysis_operator(frame);
    let unitary = unitary_complete(&theta, tol * (frame.dim() as f64).sqrt())?;
    OpvFrame::from_analysis(&unitary, &frame.block_sizes())
}

/// `{V_j P}` for an orthogonal projection `P`.
pub fn compress_by_projection(frame: &OpvFrame, projection: &ComplexMatrix, tol: f64) -> Result<OpvFrame> {
    let n = frame.dim();
    if projection.shape() != (n, n) {
        return Err(FrameError::ShapeMismatch(format!(
            "projection is {}x{}, expected {n}x{n}",
            projection.rows(),
            projection.cols()
        )));
    }
    let idempotency = (&(projection * projection) - projection).frobenius_norm();
    let symmetry = projection.hermitian_defect();
    if idempotency > tol || symmetry > tol {
        return Err(FrameError::NotAProjection { idempotency, symmetry });
    }
    frame.right_multiply(projection)
}

/// Canonical dual `W_j = V_j S^{-1}`.
pub fn canonical_dual(frame: &OpvFrame, tol: f64) -> Result<DualPair> {
    require_frame(frame, tol)?;
    let dual_theta = linalg::canonical_dual_analysis(&analysis_operator(frame))?;
    let dual = OpvFrame::from_analysis(&dual_theta, &frame.block_sizes())?;
    let pair = DualPair::new(frame.clone(), dual);
    if pair.residual > 10.0 * tol {
        return Err(FrameError::TheoremViolation(format!(
            "canonical dual residual {:.3e} exceeds {:.3e}",
            pair.residual,
            10.0 * tol
        )));
    }
    Ok(pair)
}

/// `θ† = (θ S^{-1})*`, the left inverse of the analysis operator.
pub fn pseudo_inverse(frame: &OpvFrame, tol: f64) -> Result<ComplexMatrix> {
    require_frame(frame, tol)?;
    let pinv = linalg::canonical_dual_analysis(&analysis_operator(frame))?.adjoint();
    let defect = (&pinv * &analysis_operator(frame)).distance_to_identity();
    if defect > 10.0 * tol {
        return Err(FrameError::TheoremViolation(format!(
            "θ†θ deviates from I by {defect:.3e}"
        )));
    }
    Ok(pinv)
}

/// A dual that is itself a tight frame with bound `bound`.
#[derive(Debug, Clone)]
pub struct TightDual {
    pub pair: DualPair,
    pub bound: f64,
}

/// Tight dual `θ_V + c·E` where `E` is an isometry into `range(θ_V)^⊥`
/// taken from the first `n` complement columns of the unitary completion.
/// The dual has frame bound `1 + c²`.
pub fn tight_dual(frame: &OpvFrame, c: f64, tol: f64) -> Result<TightDual> {
    if !c.is_finite() || c < 0.0 {
        return Err(FrameError::InvalidArgument(format!(
            "scale c = {c} must be finite and ≥ 0"
        )));
    }
    require_parseval(frame, tol)?;
    let (n, l) = (frame.dim(), frame.total_rows());
    if l < 2 * n {
        return Err(FrameError::InsufficientCodomain { total_rows: l, dim: n });
    }
    let theta = analysis_operator(frame);
    let unitary = unitary_complete(&theta, tol * (n as f64).sqrt())?;
    let complement = unitary.column_block(n, n);
    let dual_theta = &theta + &complement.scale(c);
    let dual = OpvFrame::from_analysis(&dual_theta, &frame.block_sizes())?;
    let candidate = TightDual {
        pair: DualPair::new(frame.clone(), dual),
        bound: 1.0 + c * c,
    };
    verify_tight_dual(candidate, tol)?.ok_or_else(|| {
        FrameError::TheoremViolation(format!("constructed dual with c = {c} is not tight with bound 1 + c²"))
    })
}

/// Checks duality and tightness of a candidate; `Ok(None)` when it is not a
/// tight dual. Every accepted bound must be at least 1.
fn verify_tight_dual(candidate: TightDual, tol: f64) -> Result<Option<TightDual>> {
    if candidate.pair.residual > 10.0 * tol {
        return Ok(None);
    }
    let eig = linalg::eig(&frame_operator(&candidate.pair.dual), tol)?;
    let (lower, upper) = (eig.min(), eig.max());
    if upper - lower > 10.0 * tol * upper.max(1.0) {
        return Ok(None);
    }
    let bound = eig.values.iter().sum::<f64>() / eig.values.len() as f64;
    if bound < 1.0 - tol {
        return Err(FrameError::TheoremViolation(format!(
            "tight dual with bound {bound} < 1"
        )));
    }
    Ok(Some(TightDual { bound, ..candidate }))
}

/// Randomized search for tight duals of a Parseval frame. Every dual has the
/// form `θ_V + Z` with `Z* θ_V = 0`; each trial draws a Gaussian `Z` in the
/// complement of `range(θ_V)`, normalizes it to a partial isometry, scales it
/// by a random `c` and keeps the candidate only if it verifies as a tight
/// dual. Trial 0 is `c = 0`, the frame itself.
pub fn search_tight_duals(frame: &OpvFrame, trials: usize, seed: u64, tol: f64) -> Result<Vec<TightDual>> {
    require_parseval(frame, tol)?;
    let theta = analysis_operator(frame);
    let (l, n) = theta.shape();
    let complement_projector = &ComplexMatrix::identity(l) - &(&theta * &theta.adjoint());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = Vec::new();
    for trial in 0..trials {
        let z = if trial == 0 {
            ComplexMatrix::zeros(l, n)
        } else {
            let y = linalg::gaussian_matrix(l, n, &mut rng);
            let z = &complement_projector * &y;
            let c: f64 = rng.random_range(0.1..2.0);
            partial_isometry(&z)?.scale(c)
        };
        let dual = OpvFrame::from_analysis(&(&theta + &z), &frame.block_sizes())?;
        let candidate = TightDual {
            pair: DualPair::new(frame.clone(), dual),
            bound: f64::NAN,
        };
        if let Some(accepted) = verify_tight_dual(candidate, tol)? {
            found.push(accepted);
        }
    }
    Ok(found)
}

/// `Z (Z*Z)^{+1/2}`: the polar factor of `Z`, restricted to its numerical range.
fn partial_isometry(z: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = linalg::eig(&z.adjoint_mul(z), linalg::EIG_TOL)?;
    let cutoff = 1e-9 * eig.max().max(0.0);
    let root = eig.reconstruct_with(|lambda| if lambda > cutoff { lambda.powf(-0.5) } else { 0.0 });
    Ok(z * &root)
}

/// Returns `true` iff `candidate` is a Parseval dual of the Parseval frame
/// `frame`. A Parseval dual must coincide with the frame itself; a candidate
/// that passes both tests yet differs beyond what the measured defects allow
/// raises [`FrameError::TheoremViolation`].
pub fn parseval_dual_is_unique(frame: &OpvFrame, candidate: &OpvFrame, tol: f64) -> Result<bool> {
    require_parseval(frame, tol)?;
    if !frame.same_signature(candidate) {
        return Ok(false);
    }
    let residual = duality_residual(frame, candidate);
    if !is_parseval(candidate, tol) || residual > tol {
        return Ok(false);
    }
    // ‖θ_W − θ_V‖_F² = tr(S_W − I) + tr(S_V − I) − 2 Re tr(θ_W*θ_V − I), and
    // |tr X| ≤ √n ‖X‖_F.
    let root_n = (frame.dim() as f64).sqrt();
    let implied = (root_n * (parseval_defect(candidate) + parseval_defect(frame) + 2.0 * residual)).sqrt();
    let allowed = 10.0 * tol + implied;
    let distance = (&analysis_operator(candidate) - &analysis_operator(frame)).frobenius_norm();
    if distance > allowed {
        return Err(FrameError::TheoremViolation(format!(
            "Parseval dual differs from the frame by {distance:.3e} (allowed {allowed:.3e})"
        )));
    }
    Ok(true)
}

/// Right transporter between two frames: `G_j = F_j T`.
#[derive(Debug, Clone)]
pub struct Similarity {
    pub transform: ComplexMatrix,
    /// `max_j ‖G_j − F_j T‖_F`.
    pub residual: f64,
    pub unitary: bool,
}

/// Finds `T` with `G_j = F_j T` for all `j`, via `T = S_F^{-1} θ_F* θ_G`.
pub fn similarity_transform(from: &OpvFrame, to: &OpvFrame, tol: f64) -> Result<Similarity> {
    if !from.same_signature(to) {
        return Err(FrameError::SignatureMismatch(format!(
            "n = {} with sizes {:?} vs n = {} with sizes {:?}",
            from.dim(),
            from.block_sizes(),
            to.dim(),
            to.block_sizes()
        )));
    }
    let eig = linalg::eig(&frame_operator(from), tol)?;
    let (lower, upper) = (eig.min(), eig.max());
    if !(upper > 0.0 && lower * MAX_CONDITION > upper) {
        return Err(FrameError::NotAFrame { lower, upper });
    }
    require_frame(to, tol)?;
    let inverse = eig.reconstruct_with(f64::recip);
    let transform = &inverse * &analysis_operator(from).adjoint_mul(&analysis_operator(to));
    let residual = from
        .blocks()
        .iter()
        .zip(to.blocks())
        .map(|(f, g)| (g - &(f * &transform)).frobenius_norm())
        .fold(0.0, f64::max);
    if residual > tol * (1.0 + transform.frobenius_norm()) {
        return Err(FrameError::NotSimilar { residual });
    }
    let unitary = transform.isometry_defect() <= tol;
    Ok(Similarity {
        transform,
        residual,
        unitary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{classify, frame_bounds, DEFAULT_TOL};

    fn real_frame(rows: &[&[f64]], sizes: &[usize]) -> OpvFrame {
        OpvFrame::from_analysis(&ComplexMatrix::from_real_rows(rows).unwrap(), sizes).unwrap()
    }

    fn two_by_one() -> OpvFrame {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        real_frame(&[&[h], &[h]], &[1, 1])
    }

    #[test]
    fn canonical_parseval_of_diagonal_frame() {
        let f = real_frame(&[&[2.0, 0.0], &[0.0, 1.0]], &[1, 1]);
        let p = canonical_parseval(&f, DEFAULT_TOL).unwrap();
        assert!(analysis_operator(&p).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
        assert!(classify(&p, DEFAULT_TOL).unwrap().is_orthonormal);
    }

    #[test]
    fn canonical_parseval_rejects_non_frames() {
        let f = real_frame(&[&[1.0, 0.0]], &[1]);
        assert!(matches!(
            canonical_parseval(&f, DEFAULT_TOL),
            Err(FrameError::NotAFrame { .. })
        ));
    }

    #[test]
    fn dilate_two_by_one() {
        let f = OpvFrame::new(vec![ComplexMatrix::from_real_rows(&[
            &[std::f64::consts::FRAC_1_SQRT_2],
            &[std::f64::consts::FRAC_1_SQRT_2],
        ])
        .unwrap()])
        .unwrap();
        let d = dilate(&f, DEFAULT_TOL).unwrap();
        assert_eq!(d.dim(), 2);
        assert!(classify(&d, DEFAULT_TOL).unwrap().is_orthonormal);
        assert_eq!(d.leading_columns(1).unwrap(), f);
    }

    #[test]
    fn dilate_requires_parseval() {
        let f = real_frame(&[&[2.0, 0.0], &[0.0, 1.0]], &[1, 1]);
        assert!(matches!(dilate(&f, DEFAULT_TOL), Err(FrameError::NotParseval { .. })));
    }

    #[test]
    fn projection_checks() {
        let f = real_frame(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]], &[1, 1, 1]);
        let same = compress_by_projection(&f, &ComplexMatrix::identity(3), DEFAULT_TOL).unwrap();
        assert_eq!(same, f);
        let zero = compress_by_projection(&f, &ComplexMatrix::zeros(3, 3), DEFAULT_TOL).unwrap();
        assert_eq!(frame_operator(&zero), ComplexMatrix::zeros(3, 3));
        let p = ComplexMatrix::from_diag(&[1.0, 1.0, 0.0]);
        let c = compress_by_projection(&f, &p, DEFAULT_TOL).unwrap();
        assert_eq!(frame_operator(&c), p);
        let not_p = ComplexMatrix::from_diag(&[2.0, 1.0, 0.0]);
        assert!(matches!(
            compress_by_projection(&f, &not_p, DEFAULT_TOL),
            Err(FrameError::NotAProjection { .. })
        ));
    }

    #[test]
    fn canonical_dual_examples() {
        let f = real_frame(&[&[2.0, 0.0], &[0.0, 1.0]], &[1, 1]);
        let pair = canonical_dual(&f, DEFAULT_TOL).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, 1.0]]).unwrap();
        assert!(analysis_operator(&pair.dual).max_abs_diff(&expected) < 1e-12);
        assert!(pair.residual < 1e-12);
        let pinv = pseudo_inverse(&f, DEFAULT_TOL).unwrap();
        assert!((&pinv * &analysis_operator(&f)).distance_to_identity() < 1e-12);

        let p = two_by_one();
        let pair = canonical_dual(&p, DEFAULT_TOL).unwrap();
        assert!(analysis_operator(&pair.dual).max_abs_diff(&analysis_operator(&p)) < 1e-12);
    }

    #[test]
    fn tight_dual_two_by_one() {
        let f = two_by_one();
        let t = tight_dual(&f, 1.0, DEFAULT_TOL).unwrap();
        assert!((t.bound - 2.0).abs() < 1e-12);
        assert!(t.pair.residual < 1e-12);
        // W = dual − V is orthogonal to V and has entries of modulus 1/√2.
        let w = &analysis_operator(&t.pair.dual) - &analysis_operator(&f);
        assert!(analysis_operator(&f).adjoint_mul(&w).frobenius_norm() < 1e-12);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(w.as_slice().iter().all(|z| (z.norm() - h).abs() < 1e-12));
        let (a, b) = frame_bounds(&t.pair.dual, DEFAULT_TOL).unwrap();
        assert!((a - 2.0).abs() < 1e-12 && (b - 2.0).abs() < 1e-12);
    }

    #[test]
    fn tight_dual_zero_scale_is_identity() {
        let f = two_by_one();
        let t = tight_dual(&f, 0.0, DEFAULT_TOL).unwrap();
        assert_eq!(t.pair.dual, f);
        assert!((t.bound - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tight_dual_needs_room() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // Parseval on C^2 with l = 3.
        let f = real_frame(&[&[1.0, 0.0], &[0.0, h], &[0.0, h]], &[1, 1, 1]);
        assert_eq!(
            tight_dual(&f, 1.0, DEFAULT_TOL).unwrap_err(),
            FrameError::InsufficientCodomain { total_rows: 3, dim: 2 }
        );
        assert!(matches!(
            tight_dual(&f, -1.0, DEFAULT_TOL),
            Err(FrameError::InvalidArgument(_))
        ));
    }

    #[test]
    fn parseval_dual_uniqueness() {
        let f = two_by_one();
        assert!(parseval_dual_is_unique(&f, &f, DEFAULT_TOL).unwrap());
        let scaled = f.map_blocks(|b| b.scale(2.0)).unwrap();
        let dual = canonical_dual(&scaled, DEFAULT_TOL).unwrap().dual;
        assert!(!parseval_dual_is_unique(&f, &dual, DEFAULT_TOL).unwrap());
        let tight = tight_dual(&f, 1.0, DEFAULT_TOL).unwrap().pair.dual;
        assert!(!parseval_dual_is_unique(&f, &tight, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn similarity_examples() {
        let f = real_frame(&[&[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]], &[2, 1]);
        let s = similarity_transform(&f, &f, DEFAULT_TOL).unwrap();
        assert!(s.transform.distance_to_identity() < 1e-12 && s.unitary);

        let t = ComplexMatrix::from_diag(&[2.0, 1.0]);
        let g = f.right_multiply(&t).unwrap();
        let s = similarity_transform(&f, &g, DEFAULT_TOL).unwrap();
        assert!(s.transform.max_abs_diff(&t) < 1e-12);
        assert!(!s.unitary);

        let other = real_frame(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 1.0]], &[2, 1]);
        assert!(matches!(
            similarity_transform(&f, &other, DEFAULT_TOL),
            Err(FrameError::NotSimilar { .. })
        ));
        let wrong = real_frame(&[&[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]], &[1, 2]);
        assert!(matches!(
            similarity_transform(&f, &wrong, DEFAULT_TOL),
            Err(FrameError::SignatureMismatch(_))
        ));
    }
}
