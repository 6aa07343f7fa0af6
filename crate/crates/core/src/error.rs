use thiserror::Error;

pub type Result<T, E = FrameError> = std::result::Result<T, E>;

/// Every failure the library can report. Messages name the violated
/// precondition so the CLI can print them verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: ‖A − A*‖_F = {defect:.3e} exceeds {bound:.3e}")]
    NotHermitian { defect: f64, bound: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    #[error("columns are not orthonormal: ‖Q*Q − I‖_F = {defect:.3e}")]
    NotIsometry { defect: f64 },
    #[error("orthogonal complement is numerically degenerate at column {column}")]
    DegenerateComplement { column: usize },
    #[error("matrix is singular or indefinite: λ_min = {min:.3e}, λ_max = {max:.3e}")]
    SingularOrIndefinite { min: f64, max: f64 },
    #[error("sequences have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("majorization fails at prefix k = {index}")]
    MajorizationViolated { index: usize },

    #[error("family is not a frame: lower bound {lower:.3e}, upper bound {upper:.3e}")]
    NotAFrame { lower: f64, upper: f64 },
    #[error("frame is not Parseval: ‖S − I‖_F = {defect:.3e}")]
    NotParseval { defect: f64 },
    #[error("matrix is not an orthogonal projection: ‖P² − P‖_F = {idempotency:.3e}, ‖P − P*‖_F = {symmetry:.3e}")]
    NotAProjection { idempotency: f64, symmetry: f64 },
    #[error("tight duals beyond the frame itself need l ≥ 2n (l = {total_rows}, n = {dim})")]
    InsufficientCodomain { total_rows: usize, dim: usize },
    #[error("numerical check of a structural identity failed: {0}")]
    TheoremViolation(String),
    #[error("frames are not similar: residual {residual:.3e}")]
    NotSimilar { residual: f64 },
    #[error("frame signatures differ: {0}")]
    SignatureMismatch(String),

    #[error("total rows l = {total_rows} is smaller than the dimension n = {dim}")]
    InsufficientRows { total_rows: usize, dim: usize },
    #[error("Σ l_j α_j = {weighted:.6e} does not match trace(S) = {trace:.6e}")]
    TraceMismatch { weighted: f64, trace: f64 },
    #[error("no frame with these block sizes and norms exists (majorization fails at k = {index})")]
    Infeasible { index: usize },

    #[error("k = {k} erasures requested but the frame has only {blocks} blocks")]
    KTooLarge { k: usize, blocks: usize },
    #[error("refusing to enumerate {subsets} subsets (m = {blocks}); limits are m ≤ 24 and C(m,k) ≤ 2e6")]
    EnumerationTooLarge { blocks: usize, subsets: u128 },
    #[error("block index {index} out of range for {blocks} blocks")]
    IndexOutOfRange { index: usize, blocks: usize },
}
