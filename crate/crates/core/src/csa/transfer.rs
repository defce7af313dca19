use super::{ndet, CsaError, Quaternion, QuaternionAlgebra};
use crate::exactalg::{ExtElem, Matrix, Rational, Ring};
use crate::extfields::SimpleExt;
use crate::report::{Mode, VerifyReport};

/// `rho(Delta) = sum_i alpha_i rho(w_i)` for `Delta = sum_i alpha_i w_i` in
/// `A (x) K`, with `w_i = beta^{i-1}` the power basis of `K` and `rho(w_i)`
/// its rational regular representation.
pub fn rho_of_delta(
    k: &SimpleExt<Rational>,
    delta: &[Quaternion<Rational>],
) -> Result<Matrix<Quaternion<Rational>>, CsaError> {
    let n = k.degree();
    if delta.len() != n {
        return Err(CsaError::Dimension(format!(
            "{} coordinates for a degree-{n} extension",
            delta.len()
        )));
    }
    let ctx = k.ctx()?;
    let zero = delta[0].zero_like();
    let mut out = Matrix::filled(n, n, zero);
    let mut w = ctx.one();
    for alpha in delta {
        let rw = w.regular_rep();
        for r in 0..n {
            for c in 0..n {
                let v = out.get(r, c).add(&alpha.scale(rw.get(r, c)));
                out.set(r, c, v);
            }
        }
        w = w.mul(&ctx.generator());
    }
    Ok(out)
}

/// `Delta` as a quaternion with coordinates in `K`.
pub fn delta_over_k(
    alg: &QuaternionAlgebra,
    k: &SimpleExt<Rational>,
    delta: &[Quaternion<Rational>],
) -> Result<Quaternion<ExtElem<Rational>>, CsaError> {
    let ctx = k.ctx()?;
    if delta.len() != k.degree() {
        return Err(CsaError::Dimension(
            "one quaternion per basis element".into(),
        ));
    }
    let coord = |l: usize| ctx.element(delta.iter().map(|q| q.coords()[l].clone()).collect());
    Ok(Quaternion::new(
        ctx.from_base(alg.a()),
        ctx.from_base(alg.b()),
        [coord(0)?, coord(1)?, coord(2)?, coord(3)?],
    ))
}

fn show(delta: &[Quaternion<Rational>]) -> String {
    let v: Vec<String> = delta.iter().map(ToString::to_string).collect();
    format!("[{}]", v.join(", "))
}

/// `N_{K/F}(Nrd_{A (x) K}(Delta)) = Nrd(det rho(Delta))`.
pub fn verify_reduced_norm_transfer(
    alg: &QuaternionAlgebra,
    k: &SimpleExt<Rational>,
    delta: &[Quaternion<Rational>],
) -> Result<VerifyReport, CsaError> {
    let lhs = delta_over_k(alg, k, delta)?.nrd().norm();
    let rhs = ndet(alg, &rho_of_delta(k, delta)?)?;
    let minpoly: Vec<String> = k
        .constant_minpoly()?
        .iter()
        .map(ToString::to_string)
        .collect();
    let mut r = VerifyReport::new("reduced-norm-transfer", Mode::Exact)
        .anchor("reduced-norm-transfer")
        .param("a", alg.a())
        .param("b", alg.b())
        .param("k_minpoly", format!("[{}]", minpoly.join(", ")))
        .param("delta", show(delta))
        .param("lhs", &lhs)
        .param("rhs", &rhs);
    if lhs != rhs {
        r.fail([
            ("lhs".to_string(), lhs.to_string()),
            ("rhs".to_string(), rhs.to_string()),
        ]);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn sqrt2() -> SimpleExt<Rational> {
        SimpleExt::new(vec![q(-2), q(0), q(1)], "r").unwrap()
    }

    #[test]
    fn i_plus_j_sqrt2() {
        let a = QuaternionAlgebra::new(q(-1), q(-1)).unwrap();
        let delta = [a.int([0, 1, 0, 0]), a.int([0, 0, 1, 0])];
        let rho = rho_of_delta(&sqrt2(), &delta).unwrap();
        assert_eq!(
            rho.to_rows(),
            vec![
                vec![a.int([0, 1, 0, 0]), a.int([0, 0, 2, 0])],
                vec![a.int([0, 0, 1, 0]), a.int([0, 1, 0, 0])]
            ]
        );
        // Nrd(i + j sqrt2) = 1 + 2 = 3, norm 9
        let r = verify_reduced_norm_transfer(&a, &sqrt2(), &delta).unwrap();
        assert!(r.pass);
        assert_eq!(r.parameters["lhs"], "9");
    }

    #[test]
    fn scalar_delta() {
        let a = QuaternionAlgebra::new(q(-1), q(-1)).unwrap();
        let delta = [a.int([3, 0, 0, 0]), a.int([1, 0, 0, 0])];
        // Delta = 3 + sqrt2 in K: N(Delta)^2 = 7^2
        let r = verify_reduced_norm_transfer(&a, &sqrt2(), &delta).unwrap();
        assert!(r.pass);
        assert_eq!(r.parameters["rhs"], "49");
        let rho = rho_of_delta(&sqrt2(), &[a.int([5, 0, 0, 0]), a.int([0, 0, 0, 0])]).unwrap();
        assert_eq!(
            rho,
            Matrix::identity(2, &a.int([1, 0, 0, 0])).scale_left(&a.int([5, 0, 0, 0]))
        );
    }

    #[test]
    fn length_mismatch() {
        let a = QuaternionAlgebra::new(q(-1), q(-1)).unwrap();
        assert!(rho_of_delta(&sqrt2(), &[a.int([1, 0, 0, 0])]).is_err());
    }
}
