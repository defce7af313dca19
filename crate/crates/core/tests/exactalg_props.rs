use proptest::prelude::*;

use snp_core::exactalg::{identity_test, Fp, IdentityMode, Matrix, Rational, Ring, SparsePoly};

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..8).prop_map(|(n, d)| Rational::new(n, d))
}

fn fp(p: u64) -> impl Strategy<Value = Fp> {
    (0..p).prop_map(move |v| Fp::from_u64(v, p))
}

fn poly() -> impl Strategy<Value = SparsePoly<Rational>> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6), 0..6).prop_map(|terms| {
        SparsePoly::from_terms(
            snp_core::exactalg::var_list(&["x", "y", "z"]),
            &Rational::zero(),
            terms
                .into_iter()
                .map(|((a, b, c), k)| (vec![a, b, c], Rational::from_int(k))),
        )
        .unwrap()
    })
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-6i64..7, n * n).prop_map(move |v| {
        Matrix::from_rows(
            v.chunks(n)
                .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    })
}

fn ring_axioms<R: Ring>(a: &R, b: &R, c: &R) {
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.add(&b.add(c)), a.add(b).add(c));
    assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(a.add(&a.zero_like()), a.clone());
    assert_eq!(a.mul(&a.one_like()), a.clone());
    assert!(a.sub(a).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rationals_form_a_ring(a in rational(), b in rational(), c in rational()) {
        ring_axioms(&a, &b, &c);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn prime_field_is_a_ring(a in fp(13), b in fp(13), c in fp(13)) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn polynomials_form_a_ring(a in poly(), b in poly(), c in poly()) {
        ring_axioms(&a, &b, &c);
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3), b in matrix(3)) {
        prop_assert_eq!(a.mul(&b).det().unwrap(), a.det().unwrap().mul(&b.det().unwrap()));
    }

    #[test]
    fn determinant_algorithms_agree(a in matrix(4)) {
        prop_assert_eq!(a.det_expansion(), a.det_bareiss().unwrap());
    }

    #[test]
    fn exact_and_probabilistic_tests_agree(a in poly(), b in poly(), equal in any::<bool>(), seed in any::<u64>()) {
        let rhs = if equal { a.add(&b).sub(&b) } else { b.clone() };
        let exact = identity_test(&a, &rhs, IdentityMode::Exact).unwrap();
        let prob = identity_test(&a, &rhs, IdentityMode::default_probabilistic(seed)).unwrap();
        prop_assert_eq!(exact.pass, prob.pass);
        prop_assert!(exact.is_well_formed() && prob.is_well_formed());
    }
}
