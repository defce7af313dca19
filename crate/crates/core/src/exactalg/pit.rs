use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp::is_prime_u64;
use super::{AlgError, Field, FieldDescriptor, Fp, Rational, Ring, SparsePoly};
use crate::report::{FailureBound, Mode, VerifyReport};

/// How `identity_test` decides `p == q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityMode {
    Exact,
    Probabilistic { prime: u64, trials: u32, seed: u64 },
}

impl IdentityMode {
    pub fn default_probabilistic(seed: u64) -> Self {
        IdentityMode::Probabilistic {
            prime: super::MERSENNE_61,
            trials: 3,
            seed,
        }
    }
}

/// Coefficients that can be reduced into a prime field.
pub trait ModPrime: Ring {
    fn to_fp(&self, p: u64) -> Option<Fp>;
}

impl ModPrime for Rational {
    fn to_fp(&self, p: u64) -> Option<Fp> {
        self.mod_prime(p).map(|v| Fp::from_u64(v, p))
    }
}

impl ModPrime for Fp {
    fn to_fp(&self, p: u64) -> Option<Fp> {
        (self.modulus() == p).then_some(*self)
    }
}

/// Coefficient fields forms are defined over: `Q` or a prime field.
pub trait Scalar: Field + ModPrime + std::fmt::Display {
    fn characteristic(&self) -> u64;
    fn descriptor(&self) -> FieldDescriptor;
    /// Image of a rational in this field, `None` if the denominator vanishes.
    fn from_rational(&self, r: &Rational) -> Option<Self>;
    /// A rational lifting `self` (the residue itself for prime fields).
    fn to_rational(&self) -> Rational;
}

impl Scalar for Rational {
    fn characteristic(&self) -> u64 {
        0
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn from_rational(&self, r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

impl Scalar for Fp {
    fn characteristic(&self) -> u64 {
        self.modulus()
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::PrimeField { p: self.modulus() }
    }
    fn from_rational(&self, r: &Rational) -> Option<Self> {
        r.to_fp(self.modulus())
    }
    fn to_rational(&self) -> Rational {
        Rational::from_int(self.value() as i64)
    }
}

pub fn total_degree_bound_failure(degree: u32, prime: u64, trials: u32) -> FailureBound {
    FailureBound::new(degree, prime, trials)
}

/// Decide `p == q`.
///
/// Exact mode compares canonical forms and reports the leading monomial of
/// `p - q` on failure. Probabilistic mode evaluates `p - q` at seeded
/// uniform points modulo `prime` (Schwartz-Zippel) and records the bound
/// `(deg/prime)^trials`.
pub fn identity_test<C: ModPrime + std::fmt::Display>(
    p: &SparsePoly<C>,
    q: &SparsePoly<C>,
    mode: IdentityMode,
) -> Result<VerifyReport, AlgError> {
    if !p.coeff_sample().compatible(q.coeff_sample()) {
        return Err(AlgError::FieldMismatch);
    }
    let diff = Ring::sub(p, q);
    match mode {
        IdentityMode::Exact => {
            let mut r = VerifyReport::new("polynomial-identity", Mode::Exact);
            if let Some((m, c)) = diff.leading() {
                let mono: Vec<String> = m.exps().iter().map(u32::to_string).collect();
                r.fail([
                    ("monomial".to_string(), format!("[{}]", mono.join(","))),
                    ("coefficient".to_string(), c.to_string()),
                ]);
            }
            Ok(r)
        }
        IdentityMode::Probabilistic {
            prime,
            trials,
            seed,
        } => {
            if !is_prime_u64(prime) {
                return Err(AlgError::NotPrime(prime));
            }
            let degree = p.total_degree().max(q.total_degree());
            if prime <= degree as u64 {
                return Err(AlgError::PrimeTooSmall { prime, degree });
            }
            let reduced = diff.try_map_coeffs(&Fp::new(0, prime), |c| {
                c.to_fp(prime)
                    .ok_or_else(|| AlgError::Unreducible(c.to_string(), prime))
            })?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut r =
                VerifyReport::new("polynomial-identity", Mode::Probabilistic { prime, trials })
                    .with_seed(seed);
            r.failure_bound = Some(FailureBound::new(degree, prime, trials));
            let sample = Fp::new(0, prime);
            for t in 0..trials {
                let point: Vec<Fp> = (0..reduced.nvars())
                    .map(|_| Fp::from_u64(rng.gen_range(0..prime), prime))
                    .collect();
                let v = reduced.eval_with_sample(&sample, &point);
                if !v.is_zero() {
                    let pt: Vec<String> = point.iter().map(|x| x.value().to_string()).collect();
                    r.fail([
                        ("trial".to_string(), t.to_string()),
                        ("point".to_string(), format!("[{}]", pt.join(","))),
                        ("value".to_string(), v.value().to_string()),
                    ]);
                    break;
                }
            }
            Ok(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::MERSENNE_61;

    fn xy() -> Vec<SparsePoly<Rational>> {
        SparsePoly::variables(&["x", "y"], &Rational::zero())
    }

    #[test]
    fn square_of_sum_exact() {
        let v = xy();
        let (x, y) = (&v[0], &v[1]);
        let s = x + y;
        let lhs = &s * &s;
        let rhs = &(&(x * x) + &(x * y).scale(&Rational::from_int(2))) + &(y * y);
        let r = identity_test(&lhs, &rhs, IdentityMode::Exact).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn distinct_variables_fail_with_monomial() {
        let v = xy();
        let r = identity_test(&v[0], &v[1], IdentityMode::Exact).unwrap();
        assert!(!r.pass);
        assert_eq!(r.witness["monomial"], "[1,0]");
        assert!(r.is_well_formed());
    }

    #[test]
    fn probabilistic_bound_for_degree_ten() {
        let v = xy();
        let p = v[0].pow_usize(10);
        let r = identity_test(
            &p,
            &v[1].pow_usize(10),
            IdentityMode::default_probabilistic(5),
        )
        .unwrap();
        assert!(!r.pass);
        let b = r.failure_bound.unwrap();
        assert_eq!(b.degree, 10);
        assert!(b.below_pow2(160));
        let same = identity_test(&p, &p, IdentityMode::default_probabilistic(5)).unwrap();
        assert!(same.pass);
    }

    #[test]
    fn prime_must_exceed_degree() {
        let v = xy();
        let p = v[0].pow_usize(10);
        let mode = IdentityMode::Probabilistic {
            prime: 7,
            trials: 1,
            seed: 0,
        };
        assert_eq!(
            identity_test(&p, &p, mode),
            Err(AlgError::PrimeTooSmall {
                prime: 7,
                degree: 10
            })
        );
        let mode = IdentityMode::Probabilistic {
            prime: MERSENNE_61 + 2,
            trials: 1,
            seed: 0,
        };
        assert!(identity_test(&p, &p, mode).is_err());
    }
}
