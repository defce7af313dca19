use super::{Field, Ring};

/// Dense univariate polynomial over a field, coefficients low to high.
/// Only what irreducibility testing needs.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<F: Field> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>, sample: &F) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        UniPoly {
            coeffs,
            zero: sample.zero_like(),
        }
    }

    pub fn x(sample: &F) -> Self {
        Self::new(vec![sample.zero_like(), sample.one_like()], sample)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(self.zero.clone(), |acc, c| acc.mul(x).add(c))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                Self::new(
                    self.coeffs.iter().map(|c| c.mul(&inv)).collect(),
                    &self.zero,
                )
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&self.zero);
                let b = o.coeffs.get(i).unwrap_or(&self.zero);
                a.add(b)
            })
            .collect();
        Self::new(v, &self.zero)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&self.zero);
                let b = o.coeffs.get(i).unwrap_or(&self.zero);
                a.sub(b)
            })
            .collect();
        Self::new(v, &self.zero)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(vec![], &self.zero);
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v, &self.zero)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().unwrap().inv().expect("field");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.zero.clone(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem[k].mul(&inv);
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k - dd + i] = rem[k - dd + i].sub(&c.mul(dc));
                }
            }
            quot[k - dd] = c;
            rem.pop();
        }
        (Self::new(quot, &self.zero), Self::new(rem, &self.zero))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::new(vec![self.zero.one_like()], &self.zero).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&c.from_int_like(i as i64)))
            .collect();
        Self::new(v, &self.zero)
    }
}
