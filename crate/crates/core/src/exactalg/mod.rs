//! Exact coefficient arithmetic.
//!
//! Everything in the crate is built on the [`Ring`] trait. Elements carry
//! whatever context they need (a prime modulus, a minimal polynomial, a
//! variable list), so `zero_like`/`one_like` take a sample element instead of
//! a separate ring object.

mod ext;
mod field;
mod fp;
mod matrix;
mod pit;
mod poly;
mod rational;
mod univariate;

use std::fmt;

pub use ext::{ExtCtx, ExtElem};
pub use field::{
    is_irreducible_over, is_irreducible_over_fp, is_irreducible_over_q, FieldDescriptor,
};
pub use fp::{is_prime_u64, Fp, MERSENNE_61};
pub use matrix::Matrix;
pub use pit::{identity_test, total_degree_bound_failure, IdentityMode, ModPrime, Scalar};
pub use poly::{var_list, Monomial, PolyOp, SparsePoly};
pub use rational::Rational;
pub use univariate::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("coefficient fields differ")]
    FieldMismatch,
    #[error("arity mismatch: expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("prime {prime} does not exceed total degree {degree}")]
    PrimeTooSmall { prime: u64, degree: u32 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("minimal polynomial rejected: {0}")]
    BadMinpoly(String),
    #[error("cannot reduce {0} modulo {1}")]
    Unreducible(String, u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Commutative (or, for quaternions, associative) ring with unit.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;

    /// False when the two elements live in visibly different structures
    /// (different primes, different minimal polynomials).
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Rings where division is possible whenever the quotient exists.
pub trait ExactDiv: Ring {
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl<F: Field> ExactDiv for F {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div(rhs)
    }
}

/// `Self` contains an embedded copy of the coefficient ring `C`.
pub trait Algebra<C>: Ring {
    fn from_base(&self, c: &C) -> Self;
}

impl<R: Ring> Algebra<R> for R {
    fn from_base(&self, c: &R) -> Self {
        c.clone()
    }
}

/// Sum of a slice of ring elements; `sample` fixes the ring for the empty sum.
pub fn sum<R: Ring>(sample: &R, items: impl IntoIterator<Item = R>) -> R {
    items
        .into_iter()
        .fold(sample.zero_like(), |acc, x| acc.add(&x))
}

/// Implements the std operator traits for a [`Ring`] type by delegation.
macro_rules! ring_ops {
    ($t:ident $(<$g:ident : $b:path>)?) => {
        impl$(<$g: $b>)? std::ops::Add for $t$(<$g>)? {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                $crate::exactalg::Ring::add(&self, &rhs)
            }
        }
        impl<'a $(, $g: $b)?> std::ops::Add<&'a $t$(<$g>)?> for &'a $t$(<$g>)? {
            type Output = $t$(<$g>)?;
            fn add(self, rhs: Self) -> $t$(<$g>)? {
                $crate::exactalg::Ring::add(self, rhs)
            }
        }
        impl$(<$g: $b>)? std::ops::Sub for $t$(<$g>)? {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                $crate::exactalg::Ring::sub(&self, &rhs)
            }
        }
        impl<'a $(, $g: $b)?> std::ops::Sub<&'a $t$(<$g>)?> for &'a $t$(<$g>)? {
            type Output = $t$(<$g>)?;
            fn sub(self, rhs: Self) -> $t$(<$g>)? {
                $crate::exactalg::Ring::sub(self, rhs)
            }
        }
        impl$(<$g: $b>)? std::ops::Mul for $t$(<$g>)? {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                $crate::exactalg::Ring::mul(&self, &rhs)
            }
        }
        impl<'a $(, $g: $b)?> std::ops::Mul<&'a $t$(<$g>)?> for &'a $t$(<$g>)? {
            type Output = $t$(<$g>)?;
            fn mul(self, rhs: Self) -> $t$(<$g>)? {
                $crate::exactalg::Ring::mul(self, rhs)
            }
        }
        impl$(<$g: $b>)? std::ops::Neg for $t$(<$g>)? {
            type Output = Self;
            fn neg(self) -> Self {
                $crate::exactalg::Ring::neg(&self)
            }
        }
    };
}
pub(crate) use ring_ops;
