use super::{ExtError, SimpleExt};
use crate::exactalg::{ExtCtx, ExtElem, Rational, Ring};
use crate::report::{Mode, VerifyReport};

/// Both sides of `N_{K/F}(phi_K(z)) = phi(a)` for one `z`, with `phi` the
/// norm form of `F(alpha)/F` and `a` the coordinates of
/// `N_{K(alpha)/F(alpha)}(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitivityInstance {
    pub lhs: Rational,
    pub rhs: Rational,
    pub witness: Vec<Rational>,
}

fn fmt_vec(v: &[Rational]) -> String {
    let s: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", s.join(", "))
}

/// Checks the norm identity for `z = sum_i z[i] alpha^i` with `z[i]` given by
/// coordinates in `K`.
///
/// The left side goes `K(alpha) -> K -> F`; the right side regroups `z` as
/// an element of `F(alpha)(beta)` with `K = F(beta)`, takes its norm down to
/// `F(alpha)` and evaluates the norm form of `F(alpha)` on the coordinates.
pub fn verify_norm_transitivity(
    alpha: &SimpleExt<Rational>,
    k: &SimpleExt<Rational>,
    z: &[Vec<Rational>],
) -> Result<(VerifyReport, TransitivityInstance), ExtError> {
    let kdesc = k.descriptor()?;
    if !alpha.is_disjoint_from(&kdesc)? {
        return Err(ExtError::NotDisjoint(kdesc.to_string()));
    }
    let d = alpha.degree();
    let m = k.degree();
    if z.len() != d || z.iter().any(|c| c.len() != m) {
        return Err(crate::exactalg::AlgError::Arity {
            expected: d * m,
            got: z.iter().map(Vec::len).sum(),
        }
        .into());
    }
    if z.iter().flatten().all(Ring::is_zero) {
        return Err(ExtError::ZeroElement);
    }

    let kctx = k.ctx()?;
    let over_k = ExtCtx::new(
        alpha
            .constant_minpoly()?
            .iter()
            .map(|c| kctx.from_base(c))
            .collect(),
        alpha.generator_name(),
    )?;
    let zk = over_k.element(
        z.iter()
            .map(|c| kctx.element(c.clone()))
            .collect::<Result<Vec<_>, _>>()?,
    )?;
    let lhs = zk.norm().norm();

    let fa = alpha.ctx()?;
    let over_fa = ExtCtx::new(
        k.constant_minpoly()?
            .iter()
            .map(|c| fa.from_base(c))
            .collect(),
        k.generator_name(),
    )?;
    let regrouped: Vec<ExtElem<Rational>> = (0..m)
        .map(|j| fa.element(z.iter().map(|c| c[j].clone()).collect()))
        .collect::<Result<_, _>>()?;
    let a = over_fa.element(regrouped)?.norm().into_coords();
    let rhs = alpha.norm_form()?.value(&a)?;

    let mut report = VerifyReport::new("norm-transitivity", Mode::Exact)
        .anchor("norm-transitivity")
        .param("alpha_minpoly", fmt_vec(&alpha.constant_minpoly()?))
        .param("k_minpoly", fmt_vec(&k.constant_minpoly()?))
        .param(
            "z",
            format!(
                "[{}]",
                z.iter().map(|c| fmt_vec(c)).collect::<Vec<_>>().join(", ")
            ),
        )
        .param("lhs", &lhs)
        .param("rhs", &rhs);
    report.add_witness("a", fmt_vec(&a));
    if lhs != rhs {
        report.fail([
            ("lhs".to_string(), lhs.to_string()),
            ("rhs".to_string(), rhs.to_string()),
        ]);
    }
    Ok((
        report,
        TransitivityInstance {
            lhs,
            rhs,
            witness: a,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn cbrt2() -> SimpleExt<Rational> {
        SimpleExt::new(vec![q(-2), q(0), q(0), q(1)], "alpha").unwrap()
    }

    fn gaussian() -> SimpleExt<Rational> {
        SimpleExt::new(vec![q(1), q(0), q(1)], "i").unwrap()
    }

    #[test]
    fn unit_element() {
        let z = vec![vec![q(1), q(0)], vec![q(0), q(0)], vec![q(0), q(0)]];
        let (r, inst) = verify_norm_transitivity(&cbrt2(), &gaussian(), &z).unwrap();
        assert!(r.pass);
        assert_eq!(inst.witness, vec![q(1), q(0), q(0)]);
        assert_eq!(inst.lhs, q(1));
    }

    #[test]
    fn rational_element() {
        // z = 3: N_{K(alpha)/K}(3) = 27, N_{K/Q}(27) = 729 = 3^6
        let z = vec![vec![q(3), q(0)], vec![q(0), q(0)], vec![q(0), q(0)]];
        let (r, inst) = verify_norm_transitivity(&cbrt2(), &gaussian(), &z).unwrap();
        assert!(r.pass);
        assert_eq!(inst.lhs, q(729));
        assert_eq!(inst.witness, vec![q(9), q(0), q(0)]);
    }

    #[test]
    fn i_plus_alpha() {
        // N_{K(alpha)/K}(i + alpha) = i^3 + 2 = 2 - i, whose norm to Q is 5
        let z = vec![vec![q(0), q(1)], vec![q(1), q(0)], vec![q(0), q(0)]];
        let (r, inst) = verify_norm_transitivity(&cbrt2(), &gaussian(), &z).unwrap();
        assert!(r.pass);
        assert_eq!(inst.lhs, q(5));
        assert_eq!(inst.rhs, q(5));
    }

    #[test]
    fn non_disjoint_is_reported() {
        let sqrt2 = SimpleExt::new(vec![q(-2), q(0), q(1)], "r").unwrap();
        let sqrt8 = SimpleExt::new(vec![q(-8), q(0), q(1)], "s").unwrap();
        let z = vec![vec![q(1), q(0)], vec![q(0), q(0)]];
        assert!(matches!(
            verify_norm_transitivity(&sqrt2, &sqrt8, &z),
            Err(ExtError::NotDisjoint(_))
        ));
        let zero = vec![vec![q(0), q(0)]; 3];
        assert_eq!(
            verify_norm_transitivity(&cbrt2(), &gaussian(), &zero).unwrap_err(),
            ExtError::ZeroElement
        );
    }
}
