use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{CsaError, Quaternion};
use crate::exactalg::{var_list, Rational, Ring, SparsePoly};
use crate::forms::{AlgebraStructure, Form};

/// What is known about `(a, b)` being a division algebra over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum DivisionStatus {
    /// `a, b < 0`: the norm form is positive definite.
    PositiveDefinite,
    /// Asserted by the caller.
    Declared,
    /// No nonzero zero of the norm form with coordinates bounded by `height`.
    SearchedTo {
        height: u64,
    },
    /// The norm form has the nonzero zero `witness`.
    Split {
        witness: [i64; 4],
    },
    Unknown,
}

/// The quaternion algebra `(a, b)_Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionAlgebra {
    a: Rational,
    b: Rational,
    status: DivisionStatus,
}

impl QuaternionAlgebra {
    pub fn new(a: Rational, b: Rational) -> Result<Self, CsaError> {
        if a.is_zero() || b.is_zero() {
            return Err(CsaError::ZeroParameter);
        }
        let status = if a.is_negative() && b.is_negative() {
            DivisionStatus::PositiveDefinite
        } else {
            DivisionStatus::Unknown
        };
        Ok(QuaternionAlgebra { a, b, status })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn status(&self) -> &DivisionStatus {
        &self.status
    }

    pub fn declare_division(mut self) -> Self {
        if !matches!(self.status, DivisionStatus::Split { .. }) {
            self.status = DivisionStatus::Declared;
        }
        self
    }

    pub fn is_certified_division(&self) -> bool {
        matches!(
            self.status,
            DivisionStatus::PositiveDefinite
                | DivisionStatus::Declared
                | DivisionStatus::SearchedTo { .. }
        )
    }

    /// Look for an integer zero `t^2 = a x^2 + b y^2 - ab z^2` with
    /// `|x|, |y|, |z| <= height`, after clearing denominators of `a`, `b`
    /// (which changes neither the zeros' existence nor the algebra).
    pub fn certify_by_search(mut self, height: u64) -> Self {
        if self.status == DivisionStatus::PositiveDefinite {
            return self;
        }
        let sq_free = |r: &Rational| r.numer() * r.denom();
        let (a, b) = (sq_free(&self.a), sq_free(&self.b));
        let small = |n: &BigInt| i128::try_from(n).ok().filter(|v| v.abs() < 1 << 40);
        let h = height as i64;
        let zero_at = |x: i64, y: i64, z: i64| -> Option<i64> {
            let t = match (small(&a), small(&b)) {
                (Some(a), Some(b)) => {
                    let (x, y, z) = (x as i128, y as i128, z as i128);
                    let rhs = a * x * x + b * y * y - a * b * z * z;
                    let t = if rhs < 0 { return None } else { rhs.sqrt() };
                    (t * t == rhs).then(|| BigInt::from(t))?
                }
                _ => {
                    let rhs: BigInt = &a * (x * x) + &b * (y * y) - &a * &b * (z * z);
                    if rhs.is_negative() {
                        return None;
                    }
                    let t = rhs.sqrt();
                    (&t * &t == rhs).then_some(t)?
                }
            };
            Some(i64::try_from(t).unwrap_or(i64::MAX))
        };
        for x in -h..=h {
            for y in -h..=h {
                for z in -h..=h {
                    if x == 0 && y == 0 && z == 0 {
                        continue;
                    }
                    if let Some(t) = zero_at(x, y, z) {
                        self.status = DivisionStatus::Split {
                            witness: [t, x, y, z],
                        };
                        return self;
                    }
                }
            }
        }
        self.status = DivisionStatus::SearchedTo { height };
        self
    }

    pub fn elem(&self, coords: [Rational; 4]) -> Quaternion<Rational> {
        Quaternion::new(self.a.clone(), self.b.clone(), coords)
    }

    pub fn int(&self, coords: [i64; 4]) -> Quaternion<Rational> {
        self.elem(coords.map(Rational::from_int))
    }

    /// `<1, -a, -b, ab>` in `t, x, y, z`.
    pub fn nrd_form(&self) -> Form<Rational> {
        let vars = var_list(&["t", "x", "y", "z"]);
        let v: Vec<SparsePoly<Rational>> = (0..4)
            .map(|i| SparsePoly::var_in(vars.clone(), i, &Rational::zero()))
            .collect();
        let lift = |r: &Rational| SparsePoly::constant_in(vars.clone(), r.clone());
        let x = Quaternion::new(
            lift(&self.a),
            lift(&self.b),
            [0, 1, 2, 3].map(|i| v[i].clone()),
        );
        Form::new(x.nrd(), 4, 2).expect("reduced norm is a quadratic form")
    }

    pub fn structure(&self) -> AlgebraStructure<Rational> {
        let vars = var_list::<&str>(&[]);
        AlgebraStructure::quaternion(
            &SparsePoly::constant_in(vars.clone(), self.a.clone()),
            &SparsePoly::constant_in(vars, self.b.clone()),
        )
        .expect("quaternion table")
    }
}
