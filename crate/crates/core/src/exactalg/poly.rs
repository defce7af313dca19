use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{ring_ops, AlgError, Algebra, ExactDiv, Field, Ring};

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = exp;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse multivariate polynomial over a coefficient ring `C`.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex monomials and never
/// store a zero coefficient, so two polynomials over the same variable list
/// are equal iff their term maps are equal.
#[derive(Clone)]
pub struct SparsePoly<C: Ring> {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, C>,
    zero: C,
}

impl<C: Ring> PartialEq for SparsePoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl<C: Ring> fmt::Debug for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SparsePoly")
            .field("vars", &self.vars)
            .field("terms", &self.terms)
            .finish()
    }
}

pub fn var_list<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

impl<C: Ring> SparsePoly<C> {
    pub fn zero<S: AsRef<str>>(vars: &[S], sample: &C) -> Self {
        SparsePoly {
            vars: var_list(vars),
            terms: BTreeMap::new(),
            zero: sample.zero_like(),
        }
    }

    pub fn zero_in(vars: Arc<[String]>, sample: &C) -> Self {
        SparsePoly {
            vars,
            terms: BTreeMap::new(),
            zero: sample.zero_like(),
        }
    }

    pub fn constant_in(vars: Arc<[String]>, c: C) -> Self {
        let mut p = Self::zero_in(vars, &c);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    /// All variables of a fresh polynomial ring, in order.
    pub fn variables<S: AsRef<str>>(names: &[S], sample: &C) -> Vec<Self> {
        let vars = var_list(names);
        (0..names.len())
            .map(|i| Self::var_in(vars.clone(), i, sample))
            .collect()
    }

    pub fn var_in(vars: Arc<[String]>, idx: usize, sample: &C) -> Self {
        let n = vars.len();
        let mut p = Self::zero_in(vars, sample);
        p.terms.insert(Monomial::var(n, idx, 1), sample.one_like());
        p
    }

    pub fn from_terms(
        vars: Arc<[String]>,
        sample: &C,
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Result<Self, AlgError> {
        let n = vars.len();
        let mut p = Self::zero_in(vars, sample);
        for (e, c) in terms {
            if e.len() != n {
                return Err(AlgError::Arity {
                    expected: n,
                    got: e.len(),
                });
            }
            if !c.compatible(sample) {
                return Err(AlgError::FieldMismatch);
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn coeff_sample(&self) -> &C {
        &self.zero
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> C {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&vec![0; self.nvars()])
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// True when every term has degree exactly `d` in the variables `range`.
    pub fn is_homogeneous_in(&self, range: std::ops::Range<usize>, d: u32) -> bool {
        self.terms
            .keys()
            .all(|m| m.0[range.clone()].iter().sum::<u32>() == d)
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Re-express over `vars`, which must contain every variable that occurs.
    pub fn with_vars(&self, vars: Arc<[String]>) -> Result<Self, AlgError> {
        if vars == self.vars {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let n = vars.len();
        let mut out = Self::zero_in(vars, &self.zero);
        for (m, c) in &self.terms {
            let mut e = vec![0; n];
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = x,
                    None => {
                        return Err(AlgError::Dimension(format!(
                            "variable {} missing from target ring",
                            self.vars[i]
                        )))
                    }
                }
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Same terms over a new list of variable names of equal length.
    pub fn rename(&self, vars: Arc<[String]>) -> Result<Self, AlgError> {
        if vars.len() != self.vars.len() {
            return Err(AlgError::Arity {
                expected: self.vars.len(),
                got: vars.len(),
            });
        }
        Ok(SparsePoly {
            vars,
            terms: self.terms.clone(),
            zero: self.zero.clone(),
        })
    }

    fn union_vars(&self, other: &Self) -> Arc<[String]> {
        let mut v: Vec<String> = self.vars.to_vec();
        for w in other.vars.iter() {
            if !v.contains(w) {
                v.push(w.clone());
            }
        }
        v.into()
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let u = self.union_vars(other);
        (
            self.with_vars(u.clone()).expect("union contains all"),
            other.with_vars(u).expect("union contains all"),
        )
    }

    /// Addition/subtraction/multiplication with field checking.
    pub fn try_op(&self, other: &Self, op: PolyOp) -> Result<Self, AlgError> {
        if !self.zero.compatible(&other.zero) {
            return Err(AlgError::FieldMismatch);
        }
        Ok(match op {
            PolyOp::Add => Ring::add(self, other),
            PolyOp::Sub => Ring::sub(self, other),
            PolyOp::Mul => Ring::mul(self, other),
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero_in(self.vars.clone(), &self.zero);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul(c));
        }
        out
    }

    pub fn map_coeffs<D: Ring>(&self, sample: &D, f: impl Fn(&C) -> D) -> SparsePoly<D> {
        let mut out = SparsePoly::zero_in(self.vars.clone(), sample);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs<D: Ring, E>(
        &self,
        sample: &D,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<SparsePoly<D>, E> {
        let mut out = SparsePoly::zero_in(self.vars.clone(), sample);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Evaluate at `point`, whose entries may lie in any algebra over `C`.
    pub fn eval<T: Algebra<C>>(&self, point: &[T]) -> Result<T, AlgError> {
        if point.len() != self.nvars() {
            return Err(AlgError::Arity {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let sample = match point.first() {
            Some(p) => p.clone(),
            None => {
                // no variables: the polynomial is a constant
                return Err(AlgError::Arity {
                    expected: 1,
                    got: 0,
                });
            }
        };
        Ok(self.eval_with_sample(&sample, point))
    }

    /// Like [`eval`](Self::eval) but also handles zero-variable rings.
    pub fn eval_with_sample<T: Algebra<C>>(&self, sample: &T, point: &[T]) -> T {
        let n = self.nvars();
        let mut powers: Vec<Vec<T>> = (0..n).map(|_| vec![sample.one_like()]).collect();
        let mut acc = sample.zero_like();
        for (m, c) in &self.terms {
            let mut t = sample.from_base(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap().mul(&point[i]);
                    pw.push(next);
                }
                t = t.mul(&pw[e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute the constant `value` for variable `idx`; the variable stays
    /// in the list with exponent zero everywhere.
    pub fn specialize(&self, idx: usize, value: &C) -> Self {
        let mut out = Self::zero_in(self.vars.clone(), &self.zero);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[idx], 0);
            out.add_term(Monomial(e), c.mul(&value.pow(k as u64)));
        }
        out
    }

    pub fn specialize_named(&self, name: &str, value: &C) -> Result<Self, AlgError> {
        let idx = self
            .var_index(name)
            .ok_or_else(|| AlgError::Dimension(format!("no variable {name}")))?;
        Ok(self.specialize(idx, value))
    }

    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero_in(self.vars.clone(), &self.zero);
        for (m, c) in &self.terms {
            let k = m.0[idx];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[idx] -= 1;
            out.add_term(Monomial(e), c.mul(&c.from_int_like(k as i64)));
        }
        out
    }

    pub fn pow_usize(&self, e: u32) -> Self {
        Ring::pow(self, e as u64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl<C: Ring> Ring for SparsePoly<C> {
    fn zero_like(&self) -> Self {
        Self::zero_in(self.vars.clone(), &self.zero)
    }

    fn one_like(&self) -> Self {
        Self::constant_in(self.vars.clone(), self.zero.one_like())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.vars != rhs.vars {
            let (a, b) = self.aligned(rhs);
            return Ring::add(&a, &b);
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        if self.vars != rhs.vars {
            let (a, b) = self.aligned(rhs);
            return Ring::sub(&a, &b);
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.vars != rhs.vars {
            let (a, b) = self.aligned(rhs);
            return Ring::mul(&a, &b);
        }
        let mut out = Self::zero_in(self.vars.clone(), &self.zero);
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return out;
        }
        let mut acc: std::collections::HashMap<Monomial, C> =
            std::collections::HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        let s = o.get().add(&c);
                        *o.get_mut() = s;
                    }
                }
            }
        }
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out
    }

    fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    fn from_int_like(&self, n: i64) -> Self {
        Self::constant_in(self.vars.clone(), self.zero.from_int_like(n))
    }

    fn compatible(&self, other: &Self) -> bool {
        self.zero.compatible(&other.zero)
    }
}

impl<C: Ring> Algebra<C> for SparsePoly<C> {
    fn from_base(&self, c: &C) -> Self {
        Self::constant_in(self.vars.clone(), c.clone())
    }
}

impl<C: Field> ExactDiv for SparsePoly<C> {
    /// Multivariate division by leading terms; `None` unless the remainder
    /// vanishes.
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if self.vars != rhs.vars {
            let (a, b) = self.aligned(rhs);
            return a.div_exact(&b);
        }
        let (lm, lc) = rhs.leading()?;
        let (lm, lc_inv) = (lm.clone(), lc.inv()?);
        let mut rem = self.clone();
        let mut quot = self.zero_like();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c.mul(&lc_inv);
            let mut term = self.zero_like();
            term.terms.insert(qm, qc);
            rem = Ring::sub(&rem, &Ring::mul(&term, rhs));
            quot = Ring::add(&quot, &term);
        }
        Some(quot)
    }
}

impl<C: Ring + fmt::Display> fmt::Display for SparsePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-', ' ']) => (true, rest.to_string()),
                _ => (false, cs),
            };
            let body = if body.contains(['+', ' ']) {
                format!("({body})")
            } else {
                body
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], e)
                        }
                    })
                    .collect();
            if mono.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", body, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

ring_ops!(SparsePoly<C: Ring>);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Fp, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn xyz() -> Vec<SparsePoly<Rational>> {
        SparsePoly::variables(&["x", "y", "z"], &q(0))
    }

    #[test]
    fn difference_of_squares() {
        let v = xyz();
        let (x, y) = (&v[0], &v[1]);
        let lhs = &(x + y) * &(x - y);
        let rhs = &(x * x) - &(y * y);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "x^2 - y^2");
    }

    #[test]
    fn annihilator_and_disjoint_union() {
        let v = xyz();
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let p = &(x * x) * x + (&(y * y) * y).scale(&q(2));
        assert!(Ring::mul(&p, &p.zero_like()).is_zero());
        let r = (&(z * z) * z).scale(&q(4)) - (&(x * y) * z).scale(&q(6));
        let s = &p + &r;
        assert_eq!(s.num_terms(), 4);
        assert_eq!(s.to_string(), "x^3 - 6*x*y*z + 2*y^3 + 4*z^3");
    }

    #[test]
    fn evaluation() {
        let v = xyz();
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let p = &(x * x) * x + (&(y * y) * y).scale(&q(2)) + (&(z * z) * z).scale(&q(4))
            - (&(x * y) * z).scale(&q(6));
        assert_eq!(p.eval(&[q(1), q(1), q(1)]).unwrap(), q(1));
        assert_eq!(p.eval(&[q(0), q(0), q(0)]).unwrap(), p.constant_term());
        assert!(matches!(
            p.eval(&[q(1)]),
            Err(AlgError::Arity {
                expected: 3,
                got: 1
            })
        ));
    }

    #[test]
    fn auto_alignment_by_name() {
        let a = SparsePoly::variables(&["x", "y"], &q(0));
        let b = SparsePoly::variables(&["y", "w"], &q(0));
        let s = &a[1] - &b[0];
        assert!(s.is_zero());
        let t = &a[0] * &b[1];
        assert_eq!(t.nvars(), 3);
        assert_eq!(t.to_string(), "x*w");
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = SparsePoly::variables(&["x"], &Fp::new(0, 5));
        let b = SparsePoly::variables(&["x"], &Fp::new(0, 7));
        assert_eq!(
            a[0].try_op(&b[0], PolyOp::Add),
            Err(AlgError::FieldMismatch)
        );
    }

    #[test]
    fn exact_division() {
        let v = xyz();
        let (x, y) = (&v[0], &v[1]);
        let f = &(x * x) - &(y * y);
        assert_eq!(f.div_exact(&(x + y)).unwrap(), x - y);
        assert!(f.div_exact(&(x + &x.from_int_like(1))).is_none());
    }

    #[test]
    fn specialization_and_derivative() {
        let v = xyz();
        let (x, y) = (&v[0], &v[1]);
        let f = &(x * x) * y;
        assert_eq!(f.specialize(1, &q(3)), (x * x).scale(&q(3)));
        assert_eq!(f.derivative(0), (x * y).scale(&q(2)));
    }
}
