use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::fp::is_prime_u64;
use super::{AlgError, Fp, Rational, Ring, UniPoly};

/// Which field a form or extension lives over.
///
/// Extension minimal polynomials are stored with coefficients in the prime
/// field (rationals or residues), which covers every tower used here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldDescriptor {
    Rationals,
    PrimeField {
        p: u64,
    },
    SimpleExtension {
        base: Box<FieldDescriptor>,
        minpoly: Vec<Rational>,
    },
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField { p } => write!(f, "GF({p})"),
            FieldDescriptor::SimpleExtension { base, minpoly } => {
                let m: Vec<String> = minpoly.iter().map(ToString::to_string).collect();
                write!(f, "{base}[x]/({})", m.join(","))
            }
        }
    }
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self, AlgError> {
        let d = FieldDescriptor::PrimeField { p };
        d.validate()?;
        Ok(d)
    }

    pub fn extension(base: FieldDescriptor, minpoly: Vec<Rational>) -> Result<Self, AlgError> {
        let d = FieldDescriptor::SimpleExtension {
            base: Box::new(base),
            minpoly,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::PrimeField { p } => *p,
            FieldDescriptor::SimpleExtension { base, .. } => base.characteristic(),
        }
    }

    /// `[self : prime field]`.
    pub fn absolute_degree(&self) -> usize {
        match self {
            FieldDescriptor::Rationals | FieldDescriptor::PrimeField { .. } => 1,
            FieldDescriptor::SimpleExtension { base, minpoly } => {
                base.absolute_degree() * (minpoly.len() - 1)
            }
        }
    }

    /// Characteristic 0 or exceeding `d`.
    pub fn allows_degree(&self, d: u32) -> bool {
        let c = self.characteristic();
        c == 0 || c > d as u64
    }

    pub fn validate(&self) -> Result<(), AlgError> {
        match self {
            FieldDescriptor::Rationals => Ok(()),
            FieldDescriptor::PrimeField { p } => {
                if is_prime_u64(*p) {
                    Ok(())
                } else {
                    Err(AlgError::NotPrime(*p))
                }
            }
            FieldDescriptor::SimpleExtension { base, minpoly } => {
                base.validate()?;
                if minpoly.len() < 3 {
                    return Err(AlgError::BadMinpoly("degree must be at least 2".into()));
                }
                if !minpoly.last().unwrap().is_one() {
                    return Err(AlgError::BadMinpoly("not monic".into()));
                }
                if !is_irreducible_over(minpoly, base)? {
                    return Err(AlgError::BadMinpoly(format!(
                        "{} is reducible over {base}",
                        poly_string(minpoly)
                    )));
                }
                Ok(())
            }
        }
    }
}

fn poly_string(c: &[Rational]) -> String {
    let v: Vec<String> = c.iter().map(ToString::to_string).collect();
    format!("[{}]", v.join(", "))
}

/// Irreducibility of a prime-field-coefficient polynomial over `base`.
pub fn is_irreducible_over(f: &[Rational], base: &FieldDescriptor) -> Result<bool, AlgError> {
    match base {
        FieldDescriptor::Rationals => is_irreducible_over_q(f),
        FieldDescriptor::PrimeField { p } => {
            let coeffs = reduce_coeffs(f, *p)?;
            Ok(is_irreducible_over_fp(&coeffs, *p))
        }
        FieldDescriptor::SimpleExtension {
            base: inner,
            minpoly,
        } => match inner.as_ref() {
            FieldDescriptor::PrimeField { p } => {
                // irreducible of degree n over F_q stays irreducible over
                // F_{q^k} iff gcd(n, k) = 1
                let coeffs = reduce_coeffs(f, *p)?;
                let n = f.len() - 1;
                let k = minpoly.len() - 1;
                Ok(is_irreducible_over_fp(&coeffs, *p) && n.gcd(&k) == 1)
            }
            FieldDescriptor::Rationals => irreducible_over_number_field(f, minpoly),
            _ => Err(AlgError::Unsupported(
                "irreducibility over towers of depth > 2".into(),
            )),
        },
    }
}

fn reduce_coeffs(f: &[Rational], p: u64) -> Result<Vec<Fp>, AlgError> {
    f.iter()
        .map(|c| {
            c.mod_prime(p)
                .map(|v| Fp::from_u64(v, p))
                .ok_or_else(|| AlgError::Unreducible(c.to_string(), p))
        })
        .collect()
}

/// `f` (rational coefficients) over `Q[y]/(g)`.
///
/// Decided by degree coprimality, or for quadratic `f` by whether its
/// discriminant becomes a square in a quadratic `Q(y)`.
fn irreducible_over_number_field(f: &[Rational], g: &[Rational]) -> Result<bool, AlgError> {
    if !is_irreducible_over_q(f)? {
        return Ok(false);
    }
    let n = f.len() - 1;
    let k = g.len() - 1;
    if n.gcd(&k) == 1 {
        return Ok(true);
    }
    if n == 2 && k == 2 {
        let disc = |c: &[Rational]| {
            let b = &c[1];
            let a = &c[2];
            &(b * b) - &(&Rational::from_int(4) * &(a * &c[0]))
        };
        let prod = &disc(f) * &disc(g);
        return Ok(!prod.is_square());
    }
    Err(AlgError::Unsupported(format!(
        "irreducibility of a degree-{n} polynomial over a degree-{k} number field"
    )))
}

/// Rabin's irreducibility test over `F_p`.
pub fn is_irreducible_over_fp(f: &[Fp], p: u64) -> bool {
    let sample = Fp::new(0, p);
    let f = UniPoly::new(f.to_vec(), &sample);
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let x = UniPoly::x(&sample);
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![x.rem(&f)];
    for k in 1..=n {
        let next = frob[k - 1].pow_mod(p as u128, &f);
        frob.push(next);
    }
    if frob[n] != x.rem(&f) {
        return false;
    }
    prime_divisors(n as u64).into_iter().all(|r| {
        let h = frob[n / r as usize].sub(&x);
        h.gcd(&f).degree() == Some(0)
    })
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility over Q for degree <= 5: rational root test, then a
/// Kronecker search for quadratic factors.
pub fn is_irreducible_over_q(f: &[Rational]) -> Result<bool, AlgError> {
    let f = trim(f);
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    if n > 5 {
        return Err(AlgError::Unsupported(format!(
            "irreducibility over Q for degree {n} > 5"
        )));
    }
    let ints = primitive_integer(&f);
    if ints[0].is_zero() {
        return Ok(false);
    }
    if has_rational_root(&ints)? {
        return Ok(false);
    }
    if n <= 3 {
        return Ok(true);
    }
    Ok(!has_quadratic_factor(&ints)?)
}

fn trim(f: &[Rational]) -> Vec<Rational> {
    let mut v = f.to_vec();
    while v.last().is_some_and(Ring::is_zero) {
        v.pop();
    }
    v
}

fn primitive_integer(f: &[Rational]) -> Vec<BigInt> {
    let l = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, AlgError> {
    let m = n
        .abs()
        .to_u128()
        .filter(|&m| m < (1u128 << 80))
        .ok_or_else(|| AlgError::Unsupported("coefficient too large to factor".into()))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u128 = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small.into_iter().map(BigInt::from).collect())
}

fn eval_int(f: &[BigInt], x: &Rational) -> Rational {
    f.iter().rev().fold(Rational::zero(), |acc, c| {
        &(&acc * x) + &Rational::from_bigint(c.clone())
    })
}

fn has_rational_root(f: &[BigInt]) -> Result<bool, AlgError> {
    let lead = f.last().unwrap();
    for p in divisors(&f[0])? {
        for q in divisors(lead)? {
            for s in [1, -1] {
                let x = Rational(num_rational::BigRational::new(&p * s, q.clone()));
                if eval_int(f, &x).is_zero() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn has_quadratic_factor(f: &[BigInt]) -> Result<bool, AlgError> {
    let fq: Vec<Rational> = f.iter().cloned().map(Rational::from_bigint).collect();
    let sample = Rational::zero();
    let fu = UniPoly::new(fq.clone(), &sample);
    let at = |t: i64| eval_int(f, &Rational::from_int(t)).numer().clone();
    let (v0, v1, v2) = (at(0), at(1), at(-1));
    let d0s = divisors(&v0)?;
    let d1s = divisors(&v1)?;
    let d2s = divisors(&v2)?;
    let two = BigInt::from(2);
    for d0 in &d0s {
        for d1 in &d1s {
            for s1 in [1, -1] {
                let d1: BigInt = d1 * s1;
                for d2 in &d2s {
                    for s2 in [1, -1] {
                        let d2: BigInt = d2 * s2;
                        let sum = &d1 + &d2;
                        let diff = &d1 - &d2;
                        if sum.is_odd() || diff.is_odd() {
                            continue;
                        }
                        let g2 = &sum / &two - d0;
                        if g2.is_zero() {
                            continue;
                        }
                        let g1 = &diff / &two;
                        let g = UniPoly::new(
                            vec![
                                Rational::from_bigint(d0.clone()),
                                Rational::from_bigint(g1),
                                Rational::from_bigint(g2),
                            ],
                            &sample,
                        );
                        if fu.rem(&g).is_zero() {
                            return Ok(true);
                        }
                    }
                }
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn over_rationals() {
        assert!(is_irreducible_over_q(&qs(&[-2, 0, 0, 1])).unwrap());
        assert!(is_irreducible_over_q(&qs(&[-1, -1, 0, 1])).unwrap());
        assert!(!is_irreducible_over_q(&qs(&[-8, 0, 0, 1])).unwrap());
        assert!(is_irreducible_over_q(&qs(&[1, 0, 1])).unwrap());
        // (x^2 + 1)(x^2 + 2) has no rational root but is reducible
        assert!(!is_irreducible_over_q(&qs(&[2, 0, 3, 0, 1])).unwrap());
        // x^4 + 1 is irreducible over Q
        assert!(is_irreducible_over_q(&qs(&[1, 0, 0, 0, 1])).unwrap());
        // (x^2 - 2)(x^3 - 3): degree 5, reducible without rational roots
        assert!(!is_irreducible_over_q(&qs(&[6, 0, -3, -2, 0, 1])).unwrap());
        assert!(is_irreducible_over_q(&qs(&[-2, 0, 0, 0, 0, 1])).unwrap());
        assert!(is_irreducible_over_q(&qs(&[0, 0, 0, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn over_prime_fields() {
        let f = |v: &[i64], p| v.iter().map(|&x| Fp::new(x, p)).collect::<Vec<_>>();
        assert!(is_irreducible_over_fp(&f(&[1, 0, 1], 7), 7));
        assert!(!is_irreducible_over_fp(&f(&[1, 0, 1], 5), 5));
        assert!(
            is_irreducible_over_fp(&f(&[2, 1, 0, 1], 5), 5) == {
                // brute force: no root in F_5 for a cubic means irreducible
                (0..5).all(|x| (x * x * x + x + 2) % 5 != 0)
            }
        );
        // x^4 + 1 factors over every F_p
        assert!(!is_irreducible_over_fp(&f(&[1, 0, 0, 0, 1], 7), 7));
    }

    #[test]
    fn descriptors() {
        assert!(FieldDescriptor::prime(9).is_err());
        let q = FieldDescriptor::Rationals;
        let qi = FieldDescriptor::extension(q.clone(), qs(&[1, 0, 1])).unwrap();
        assert_eq!(qi.absolute_degree(), 2);
        assert!(FieldDescriptor::extension(qi.clone(), qs(&[-2, 0, 0, 1])).is_ok());
        // x^2 + 1 splits over Q(i)
        assert!(FieldDescriptor::extension(qi.clone(), qs(&[1, 0, 1])).is_err());
        // x^2 + 4 also splits over Q(i): disc -16, times disc(x^2+1) = 64
        assert!(FieldDescriptor::extension(qi, qs(&[4, 0, 1])).is_err());
        assert!(FieldDescriptor::extension(q.clone(), qs(&[1, 2, 1])).is_err());
        assert!(FieldDescriptor::extension(q, qs(&[2, 1])).is_err());
        let f7 = FieldDescriptor::prime(7).unwrap();
        let f49 = FieldDescriptor::extension(f7, qs(&[1, 0, 1])).unwrap();
        assert_eq!(f49.characteristic(), 7);
        assert!(FieldDescriptor::extension(f49.clone(), qs(&[1, 0, 1])).is_err());
        assert!(FieldDescriptor::extension(f49, qs(&[-2, 0, 0, 1])).is_ok());
    }
}
