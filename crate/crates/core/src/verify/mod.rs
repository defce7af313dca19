//! End-to-end norm-principle checks: exhaustive finite-field runs, bounded
//! rational witness search and the quadratic/cubic transfer oracles.

mod finite;
mod pfister;
mod roundness;
mod witness;

pub use finite::{snp_bruteforce, CompositionClass, FiniteField, SnpOutcome};
pub use pfister::{
    quartic_pfister_transfer, sextic_pfister_transfer, CubeReading, PairingReading, PfisterSign,
    ProductTermReading, QuarticConvention, QuarticOutcome, SexticOutcome, SexticReading,
    SlotReading, Symbolic,
};
pub use roundness::{roundness_witness, verify_roundness};
pub use witness::{bounded_witness_search, WitnessSearch};

use thiserror::Error;

use crate::exactalg::AlgError;
use crate::extfields::ExtError;
use crate::forms::FormError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error("form is not declared to permit composition (or a power or product of such)")]
    NotCompositionType,
    #[error("point is not invertible in the algebra")]
    NotInvertible,
    #[error("{0}")]
    Usage(String),
}
