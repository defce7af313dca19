//! Quaternion algebras and split matrix algebras: reduced norms, the
//! reduced norm of the Dieudonne determinant, and the identities relating
//! them to norms from `A (x) K`.

mod algebra;
mod closed_form;
mod file;
mod ndet;
mod quaternion;
mod transfer;

use thiserror::Error;

pub use algebra::{DivisionStatus, QuaternionAlgebra};
pub use closed_form::{
    default_candidates, quaternion_closed_form, quaternion_direct, quaternion_gamma_sweep,
    random_matrix_instances, random_quaternion_instances, sharp3, split3_closed_form,
    split3_direct, split_cubic_gamma_sweep, Candidate, MatrixInstance, ProbeOutcome,
    QuaternionInstance,
};
pub use file::{QuatFile, DIVISION_SEARCH_HEIGHT};
pub use ndet::{ndet, ndet_unchecked, split_embedding, split_image, PivotOrder};
pub use quaternion::Quaternion;
pub use transfer::{delta_over_k, rho_of_delta, verify_reduced_norm_transfer};

use crate::exactalg::AlgError;
use crate::extfields::ExtError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CsaError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error("algebra parameters must be nonzero")]
    ZeroParameter,
    #[error("algebra is not certified to be a division algebra")]
    NotCertified,
    #[error("a column contains only zero divisors")]
    NotDivision,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed algebra file: {0}")]
    File(String),
}
