use std::fmt;
use std::sync::Arc;

use super::{ring_ops, AlgError, Algebra, Field, Matrix, Ring, SparsePoly};

/// Quotient ring `R[x]/(m(x))` for a monic `m`.
#[derive(Clone, PartialEq)]
pub struct ExtCtx<R: Ring> {
    /// Monic minimal polynomial, coefficients from low to high degree.
    minpoly: Vec<R>,
    generator: String,
}

impl<R: Ring> fmt::Debug for ExtCtx<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtCtx({}: {:?})", self.generator, self.minpoly)
    }
}

impl<R: Ring> ExtCtx<R> {
    pub fn new(minpoly: Vec<R>, generator: &str) -> Result<Arc<Self>, AlgError> {
        let d = minpoly.len().saturating_sub(1);
        if d < 1 {
            return Err(AlgError::BadMinpoly("degree must be at least 1".into()));
        }
        if !minpoly[d].is_one() {
            return Err(AlgError::BadMinpoly("not monic".into()));
        }
        Ok(Arc::new(ExtCtx {
            minpoly,
            generator: generator.to_string(),
        }))
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[R] {
        &self.minpoly
    }

    pub fn generator_name(&self) -> &str {
        &self.generator
    }

    fn sample(&self) -> &R {
        &self.minpoly[0]
    }

    pub fn zero(self: &Arc<Self>) -> ExtElem<R> {
        ExtElem {
            coords: vec![self.sample().zero_like(); self.degree()],
            ctx: self.clone(),
        }
    }

    pub fn one(self: &Arc<Self>) -> ExtElem<R> {
        self.from_base(&self.sample().one_like())
    }

    pub fn from_base(self: &Arc<Self>, c: &R) -> ExtElem<R> {
        let mut e = self.zero();
        e.coords[0] = c.clone();
        e
    }

    /// The class of `x`.
    pub fn generator(self: &Arc<Self>) -> ExtElem<R> {
        let mut e = self.zero();
        if self.degree() == 1 {
            e.coords[0] = self.minpoly[0].neg();
        } else {
            e.coords[1] = self.sample().one_like();
        }
        e
    }

    /// Element with the given power-basis coordinates (padded with zeros).
    pub fn element(self: &Arc<Self>, coords: Vec<R>) -> Result<ExtElem<R>, AlgError> {
        if coords.len() > self.degree() {
            return Err(AlgError::Arity {
                expected: self.degree(),
                got: coords.len(),
            });
        }
        let mut e = self.zero();
        for (i, c) in coords.into_iter().enumerate() {
            e.coords[i] = c;
        }
        Ok(e)
    }

    /// Reduce an arbitrary-length coefficient vector modulo the minpoly.
    pub fn reduce(self: &Arc<Self>, mut v: Vec<R>) -> ExtElem<R> {
        let d = self.degree();
        for k in (d..v.len()).rev() {
            let t = std::mem::replace(&mut v[k], self.sample().zero_like());
            if t.is_zero() {
                continue;
            }
            for i in 0..d {
                let m = &self.minpoly[i];
                if !m.is_zero() {
                    v[k - d + i] = v[k - d + i].sub(&t.mul(m));
                }
            }
        }
        v.resize(d, self.sample().zero_like());
        ExtElem {
            coords: v,
            ctx: self.clone(),
        }
    }

    /// Multiplication matrix of `x` (the companion matrix of the minpoly).
    pub fn companion(self: &Arc<Self>) -> Matrix<R> {
        self.generator().regular_rep()
    }
}

/// Element of `R[x]/(m(x))` in the power basis `1, x, ..., x^{d-1}`.
#[derive(Clone)]
pub struct ExtElem<R: Ring> {
    ctx: Arc<ExtCtx<R>>,
    coords: Vec<R>,
}

impl<R: Ring> PartialEq for ExtElem<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx)
    }
}

impl<R: Ring> fmt::Debug for ExtElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for ExtElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{}*{}", bracket(c), self.ctx.generator),
                _ => format!("{}*{}^{}", bracket(c), self.ctx.generator, i),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn bracket<R: fmt::Display>(c: &R) -> String {
    let s = c.to_string();
    if s.contains(['+', ' ']) || s[1..].contains('-') {
        format!("({s})")
    } else {
        s
    }
}

impl<R: Ring> ExtElem<R> {
    pub fn ctx(&self) -> &Arc<ExtCtx<R>> {
        &self.ctx
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<R> {
        self.coords
    }

    /// True when only the constant coordinate may be nonzero.
    pub fn is_base(&self) -> bool {
        self.coords[1..].iter().all(Ring::is_zero)
    }

    pub fn base_part(&self) -> &R {
        &self.coords[0]
    }

    /// Matrix of multiplication by `self` in the power basis; column `j` holds
    /// the coordinates of `self * x^j`.
    pub fn regular_rep(&self) -> Matrix<R> {
        let d = self.ctx.degree();
        let sample = self.ctx.sample().zero_like();
        let mut m = Matrix::filled(d, d, sample);
        let mut col = self.clone();
        let x = self.ctx.generator();
        for j in 0..d {
            for i in 0..d {
                m.set(i, j, col.coords[i].clone());
            }
            if j + 1 < d {
                col = Ring::mul(&col, &x);
            }
        }
        m
    }

    /// Norm to the coefficient ring: the determinant of the regular
    /// representation (division-free expansion).
    pub fn norm(&self) -> R {
        self.regular_rep().det_expansion()
    }

    pub fn trace(&self) -> R {
        self.regular_rep().trace()
    }

    /// The nontrivial automorphism `s -> -s` of `R[s]/(s^2 - e)`.
    pub fn conj_quadratic(&self) -> Result<Self, AlgError> {
        if self.ctx.degree() != 2 || !self.ctx.minpoly[1].is_zero() {
            return Err(AlgError::Unsupported(
                "conjugation needs a minimal polynomial x^2 - e".into(),
            ));
        }
        Ok(ExtElem {
            ctx: self.ctx.clone(),
            coords: vec![self.coords[0].clone(), self.coords[1].neg()],
        })
    }
}

impl<R: Ring> Ring for ExtElem<R> {
    fn zero_like(&self) -> Self {
        self.ctx.zero()
    }
    fn one_like(&self) -> Self {
        self.ctx.one()
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        ExtElem {
            ctx: self.ctx.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        ExtElem {
            ctx: self.ctx.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let d = self.ctx.degree();
        let z = self.ctx.sample().zero_like();
        let mut prod = vec![z; 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&a.mul(b));
            }
        }
        self.ctx.reduce(prod)
    }
    fn neg(&self) -> Self {
        ExtElem {
            ctx: self.ctx.clone(),
            coords: self.coords.iter().map(Ring::neg).collect(),
        }
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.ctx.from_base(&self.ctx.sample().from_int_like(n))
    }
    fn compatible(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }
}

impl<F: Field> Field for ExtElem<F> {
    /// Inverse by solving `rho(a) y = e_0`; `None` for zero divisors.
    fn inv(&self) -> Option<Self> {
        let m = self.regular_rep();
        let mut rhs = vec![self.ctx.sample().zero_like(); self.ctx.degree()];
        rhs[0] = self.ctx.sample().one_like();
        let y = m.solve(&rhs).ok()?;
        Some(ExtElem {
            ctx: self.ctx.clone(),
            coords: y,
        })
    }
}

impl<R: Ring> Algebra<R> for ExtElem<R> {
    fn from_base(&self, c: &R) -> Self {
        self.ctx.from_base(c)
    }
}

impl<C: Ring> Algebra<ExtElem<C>> for ExtElem<SparsePoly<C>> {
    /// Embeds `F'` into `F'[vars]`-coordinates by constant polynomials.
    fn from_base(&self, c: &ExtElem<C>) -> Self {
        let sample = self.ctx.sample();
        let coords = c
            .coords
            .iter()
            .map(|x| SparsePoly::constant_in(sample.vars().clone(), x.clone()))
            .collect();
        ExtElem {
            ctx: self.ctx.clone(),
            coords,
        }
    }
}

impl<C: Ring> Algebra<C> for ExtElem<SparsePoly<C>> {
    fn from_base(&self, c: &C) -> Self {
        let sample = self.ctx.sample();
        self.ctx
            .from_base(&SparsePoly::constant_in(sample.vars().clone(), c.clone()))
    }
}

ring_ops!(ExtElem<R: Ring>);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn cube_root_two() -> Arc<ExtCtx<Rational>> {
        ExtCtx::new(vec![q(-2), q(0), q(0), q(1)], "a").unwrap()
    }

    #[test]
    fn defining_relation() {
        let k = cube_root_two();
        let a = k.generator();
        let a2 = &a * &a;
        assert_eq!(&a * &a2, k.from_base(&q(2)));
    }

    #[test]
    fn sum_of_cubes_factorisation() {
        // (1 + a)(1 - a + a^2) = 1 + a^3 = 3
        let k = cube_root_two();
        let x = k.element(vec![q(1), q(1)]).unwrap();
        let y = k.element(vec![q(1), q(-1), q(1)]).unwrap();
        assert_eq!(&x * &y, k.from_base(&q(3)));
    }

    #[test]
    fn inverse() {
        let k = cube_root_two();
        let x = k.element(vec![q(3), q(-1), q(2)]).unwrap();
        let xi = x.inv().unwrap();
        assert!((&x * &xi).is_one());
        assert!(k.zero().inv().is_none());
    }

    #[test]
    fn norms() {
        let k = cube_root_two();
        assert_eq!(k.generator().norm(), q(2));
        assert_eq!(k.from_base(&q(5)).norm(), q(125));
        assert_eq!(k.element(vec![q(1), q(1)]).unwrap().norm(), q(3));
    }

    #[test]
    fn quadratic_conjugation() {
        let k = ExtCtx::new(vec![q(-5), q(0), q(1)], "s").unwrap();
        let x = k.element(vec![q(2), q(3)]).unwrap();
        let n = &x * &x.conj_quadratic().unwrap();
        assert!(n.is_base());
        assert_eq!(*n.base_part(), q(4 - 45));
        assert_eq!(x.norm(), q(4 - 45));
        assert!(cube_root_two().one().conj_quadratic().is_err());
    }

    #[test]
    fn rejects_non_monic() {
        assert!(ExtCtx::new(vec![q(1), q(2)], "x").is_err());
        assert!(ExtCtx::new(vec![q(1)], "x").is_err());
    }
}
