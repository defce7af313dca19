use super::VerifyError;
use crate::exactalg::{Matrix, Scalar};
use crate::forms::{isometry_witness_check, AlgebraStructure, Form};
use crate::report::VerifyReport;

/// Matrix of left multiplication by `x0`, which carries `phi` onto
/// `phi(x0) * phi` when `phi` permits composition on `alg`.
pub fn roundness_witness<C: Scalar>(
    phi: &Form<C>,
    alg: &AlgebraStructure<C>,
    x0: &[C],
) -> Result<Matrix<C>, VerifyError> {
    let m = alg.left_mul_matrix(x0)?;
    if phi.value(x0)?.is_zero() || m.rank() < m.rows() {
        return Err(VerifyError::NotInvertible);
    }
    Ok(m)
}

/// Build the witness for `x0` and check `phi(M v) = phi(x0) phi(v)`.
pub fn verify_roundness<C: Scalar>(
    phi: &Form<C>,
    alg: &AlgebraStructure<C>,
    x0: &[C],
) -> Result<(VerifyReport, Matrix<C>), VerifyError> {
    let m = roundness_witness(phi, alg, x0)?;
    let factor = phi.value(x0)?;
    let scaled = phi.scale(&factor)?;
    let mut r = isometry_witness_check(&scaled, phi, &m)?;
    r.identity = "roundness".into();
    let point: Vec<String> = x0.iter().map(|c| c.to_string()).collect();
    let r = r
        .anchor("roundness")
        .param("x0", format!("({})", point.join(", ")))
        .param("factor", factor);
    Ok((r, m))
}
