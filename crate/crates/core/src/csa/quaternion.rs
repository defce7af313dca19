use std::fmt;

use crate::exactalg::{ring_ops, Field, Ring};

/// `t + x i + y j + z k` in the algebra `(a, b)`: `i^2 = a`, `j^2 = b`,
/// `k = ij = -ji`. The parameters travel with the element.
#[derive(Clone, PartialEq)]
pub struct Quaternion<R: Ring> {
    a: R,
    b: R,
    c: [R; 4],
}

impl<R: Ring> fmt::Debug for Quaternion<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quaternion{:?}", self.c)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Quaternion<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.c[0], self.c[1], self.c[2], self.c[3]
        )
    }
}

impl<R: Ring> Quaternion<R> {
    pub fn new(a: R, b: R, coords: [R; 4]) -> Self {
        Quaternion { a, b, c: coords }
    }

    pub fn scalar(a: &R, b: &R, t: R) -> Self {
        let z = t.zero_like();
        Quaternion::new(a.clone(), b.clone(), [t, z.clone(), z.clone(), z])
    }

    /// Same algebra, new coordinates.
    pub fn with_coords(&self, coords: [R; 4]) -> Self {
        Quaternion::new(self.a.clone(), self.b.clone(), coords)
    }

    pub fn coords(&self) -> &[R; 4] {
        &self.c
    }

    pub fn params(&self) -> (&R, &R) {
        (&self.a, &self.b)
    }

    pub fn conj(&self) -> Self {
        let [t, x, y, z] = &self.c;
        self.with_coords([t.clone(), x.neg(), y.neg(), z.neg()])
    }

    /// `t^2 - a x^2 - b y^2 + ab z^2`.
    pub fn nrd(&self) -> R {
        let [t, x, y, z] = &self.c;
        let ab = self.a.mul(&self.b);
        t.mul(t)
            .sub(&self.a.mul(&x.mul(x)))
            .sub(&self.b.mul(&y.mul(y)))
            .add(&ab.mul(&z.mul(z)))
    }

    pub fn scale(&self, s: &R) -> Self {
        self.with_coords(self.c.clone().map(|x| s.mul(&x)))
    }

    pub fn is_scalar(&self) -> bool {
        self.c[1..].iter().all(Ring::is_zero)
    }
}

impl<R: Ring> Ring for Quaternion<R> {
    fn zero_like(&self) -> Self {
        Quaternion::scalar(&self.a, &self.b, self.a.zero_like())
    }
    fn one_like(&self) -> Self {
        Quaternion::scalar(&self.a, &self.b, self.a.one_like())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(&rhs.c) {
            *x = x.add(y);
        }
        self.with_coords(c)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(&rhs.c) {
            *x = x.sub(y);
        }
        self.with_coords(c)
    }
    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.a, &self.b);
        let ab = a.mul(b);
        let [t1, x1, y1, z1] = &self.c;
        let [t2, x2, y2, z2] = &rhs.c;
        let t = t1
            .mul(t2)
            .add(&a.mul(&x1.mul(x2)))
            .add(&b.mul(&y1.mul(y2)))
            .sub(&ab.mul(&z1.mul(z2)));
        let x = t1
            .mul(x2)
            .add(&x1.mul(t2))
            .sub(&b.mul(&y1.mul(z2)))
            .add(&b.mul(&z1.mul(y2)));
        let y = t1
            .mul(y2)
            .add(&y1.mul(t2))
            .add(&a.mul(&x1.mul(z2)))
            .sub(&a.mul(&z1.mul(x2)));
        let z = t1
            .mul(z2)
            .add(&z1.mul(t2))
            .add(&x1.mul(y2))
            .sub(&y1.mul(x2));
        self.with_coords([t, x, y, z])
    }
    fn neg(&self) -> Self {
        self.with_coords(self.c.clone().map(|x| x.neg()))
    }
    fn from_int_like(&self, n: i64) -> Self {
        Quaternion::scalar(&self.a, &self.b, self.a.from_int_like(n))
    }
    fn compatible(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl<F: Field> Field for Quaternion<F> {
    /// `conj(q) / Nrd(q)`; `None` when the reduced norm vanishes.
    fn inv(&self) -> Option<Self> {
        let n = self.nrd().inv()?;
        Some(self.conj().scale(&n))
    }
}

ring_ops!(Quaternion<R: Ring>);
