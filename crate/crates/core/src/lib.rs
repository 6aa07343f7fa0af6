//! Finite operator-valued frames.
//!
//! A frame here is an ordered family of matrices `V_j` of shape `l_j × n`
//! whose frame operator `S = Σ V_j* V_j` is positive definite. The crate
//! builds such families, classifies them (tight, Parseval, Riesz,
//! orthonormal, equal-norm), computes duals and dilations, and measures
//! robustness against the loss of whole blocks.
//!
//! ```
//! use opvframe_core::{classify, roots_of_unity_frame, DEFAULT_TOL};
//!
//! let frame = roots_of_unity_frame(2, &[2, 2]).unwrap();
//! let report = classify(&frame, DEFAULT_TOL).unwrap();
//! assert!(report.is_parseval && report.is_equal_norm);
//! ```

pub mod cli;
pub mod constructions;
pub mod duals;
pub mod erasure;
pub mod error;
pub mod frame;
pub mod frame_file;
pub mod linalg;
pub mod matrix;

pub use constructions::{
    construct_with_frame_operator, coordinate_frame, cyclic_projection_frame, optimal_one_erasure_frame,
    random_parseval, roots_of_unity_frame, ConstructionSpec,
};
pub use duals::{
    canonical_dual, canonical_parseval, compress_by_projection, dilate, duality_residual, parseval_dual_is_unique,
    pseudo_inverse, search_tight_duals, similarity_transform, tight_dual, DualPair, Similarity, TightDual,
};
pub use erasure::{
    check_d1_optimal, d1, erased_error_operator, erasure_report, robust_to_k, ErasedError, ErasureReport, Robustness,
};
pub use error::{FrameError, Result};
pub use frame::{
    analysis_operator, classify, cross_gram_orthonormality, frame_bounds, frame_operator, grammian, grammian_spectrum,
    FrameReport, OpvFrame, DEFAULT_TOL,
};
pub use frame_file::{read_frame, write_frame, FileError};
pub use linalg::{
    haar_random_unitary, hermitian_eig, inv_sqrt_psd, majorization_violation, numerical_rank, schur_horn_unitary,
    unitary_complete, EigenDecomposition,
};
pub use matrix::{Complex64, ComplexMatrix};
