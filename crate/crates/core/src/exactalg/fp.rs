use std::fmt;

use super::{ring_ops, Field, Ring};

/// The Mersenne prime 2^61 - 1, default modulus for probabilistic checks.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    // extended Euclid, works for any modulus
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Residue modulo a prime. The modulus travels with the value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        Fp {
            value: (value as i128).rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn from_u64(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Signed representative in `(-p/2, p/2]`.
    pub fn signed(&self) -> i64 {
        if self.value > self.modulus / 2 {
            -((self.modulus - self.value) as i64)
        } else {
            self.value as i64
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp {
            value: 0,
            modulus: self.modulus,
        }
    }
    fn one_like(&self) -> Self {
        Fp::from_u64(1, self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u128 + rhs.value as u128;
        Fp {
            value: (s % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.modulus - (rhs.value - self.value)
        };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
    fn from_int_like(&self, n: i64) -> Self {
        Fp::new(n, self.modulus)
    }
    fn compatible(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
    fn pow(&self, e: u64) -> Self {
        Fp {
            value: pow_mod(self.value, e, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        inv_mod(self.value, self.modulus).map(|v| Fp {
            value: v,
            modulus: self.modulus,
        })
    }
}

ring_ops!(Fp);
