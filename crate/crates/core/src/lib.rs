//! Norm forms of field extensions and quaternion algebras, and exact
//! verification of norm-principle identities.

pub mod cli;
pub mod csa;
pub mod exactalg;
pub mod extfields;
pub mod forms;
pub mod report;
pub mod verify;

pub use report::{Mode, VerifyReport};
