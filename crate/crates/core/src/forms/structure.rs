use std::sync::Arc;

use super::{default_names, Form, FormError};
use crate::exactalg::{
    identity_test, var_list, ExtCtx, IdentityMode, Matrix, Ring, Scalar, SparsePoly,
};
use crate::report::VerifyReport;

/// Bilinear multiplication on `F^n` by structure constants
/// `e_i * e_j = sum_k c[i][j][k] e_k`.
///
/// Constants are polynomials in symbolic parameters (constant polynomials
/// for a concrete algebra).
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraStructure<C: Ring> {
    dim: usize,
    table: Vec<SparsePoly<C>>,
    unit: Option<Vec<C>>,
}

fn no_vars() -> Arc<[String]> {
    var_list::<&str>(&[])
}

impl<C: Scalar> AlgebraStructure<C> {
    /// `table[i][j][k]`; a declared unit is verified.
    pub fn new(
        table: Vec<Vec<Vec<SparsePoly<C>>>>,
        unit: Option<Vec<C>>,
    ) -> Result<Self, FormError> {
        let dim = table.len();
        if dim == 0
            || table
                .iter()
                .any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim))
        {
            return Err(FormError::Dimension(
                "structure constants must be n x n x n".into(),
            ));
        }
        let a = AlgebraStructure {
            dim,
            table: table.into_iter().flatten().flatten().collect(),
            unit: None,
        };
        match unit {
            None => Ok(a),
            Some(u) => a.with_unit(u),
        }
    }

    pub fn from_constants(
        table: Vec<Vec<Vec<C>>>,
        unit: Option<Vec<C>>,
    ) -> Result<Self, FormError> {
        let t = table
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| {
                        c.into_iter()
                            .map(|x| SparsePoly::constant_in(no_vars(), x))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(t, unit)
    }

    fn with_unit(mut self, u: Vec<C>) -> Result<Self, FormError> {
        if u.len() != self.dim {
            return Err(FormError::Dimension("unit length".into()));
        }
        let sample = u[0].clone();
        let up: Vec<SparsePoly<C>> = u
            .iter()
            .map(|x| SparsePoly::constant_in(no_vars(), x.clone()))
            .collect();
        for j in 0..self.dim {
            let mut ej = vec![SparsePoly::zero_in(no_vars(), &sample); self.dim];
            ej[j] = SparsePoly::constant_in(no_vars(), sample.one_like());
            if self.mul(&up, &ej)? != ej || self.mul(&ej, &up)? != ej {
                return Err(FormError::Dimension(format!(
                    "declared unit fails on basis vector {j}"
                )));
            }
        }
        self.unit = Some(u);
        Ok(self)
    }

    /// Multiplication of `R[params][x]/(m)` in the power basis; `m` is monic
    /// with coefficients given as parameter polynomials.
    pub fn of_extension(minpoly: &[SparsePoly<C>]) -> Result<Self, FormError> {
        let ctx = ExtCtx::new(minpoly.to_vec(), "alpha")?;
        let d = ctx.degree();
        let x = ctx.generator();
        let mut pows = vec![ctx.one()];
        for _ in 1..2 * d {
            let next = pows.last().unwrap().mul(&x);
            pows.push(next);
        }
        let table = (0..d)
            .map(|i| (0..d).map(|j| pows[i + j].coords().to_vec()).collect())
            .collect();
        let sample = minpoly[0].coeff_sample().clone();
        let mut unit = vec![sample.zero_like(); d];
        unit[0] = sample.one_like();
        Self::new(table, Some(unit))
    }

    /// `F x ... x F` with componentwise multiplication.
    pub fn componentwise(n: usize, sample: &C) -> Result<Self, FormError> {
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                if i == j && j == k {
                                    sample.one_like()
                                } else {
                                    sample.zero_like()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::from_constants(table, Some(vec![sample.one_like(); n]))
    }

    /// Quaternion algebra `(a, b)` on the basis `1, i, j, k` with `i^2 = a`,
    /// `j^2 = b`, `k = ij = -ji`.
    pub fn quaternion(a: &SparsePoly<C>, b: &SparsePoly<C>) -> Result<Self, FormError> {
        let zero = a.zero_like();
        let one = a.one_like();
        let ab = a.mul(b);
        // entry (i, j) = (coefficient, basis index) of e_i e_j
        let prods: [[(SparsePoly<C>, usize); 4]; 4] = [
            [
                (one.clone(), 0),
                (one.clone(), 1),
                (one.clone(), 2),
                (one.clone(), 3),
            ],
            [
                (one.clone(), 1),
                (a.clone(), 0),
                (one.clone(), 3),
                (a.clone(), 2),
            ],
            [
                (one.clone(), 2),
                (one.neg(), 3),
                (b.clone(), 0),
                (b.neg(), 1),
            ],
            [
                (one.clone(), 3),
                (a.neg(), 2),
                (b.clone(), 1),
                (ab.neg(), 0),
            ],
        ];
        let table = prods
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, k)| {
                        let mut v = vec![zero.clone(); 4];
                        v[*k] = c.clone();
                        v
                    })
                    .collect()
            })
            .collect();
        let s = a.coeff_sample();
        Self::new(
            table,
            Some(vec![
                s.one_like(),
                s.zero_like(),
                s.zero_like(),
                s.zero_like(),
            ]),
        )
    }

    /// `A1 x A2` with componentwise multiplication across the two factors.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, FormError> {
        let n = self.dim + other.dim;
        let zero = self.table[0].zero_like();
        let mut t = vec![vec![vec![zero.clone(); n]; n]; n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    t[i][j][k] = self.constant(i, j, k).clone();
                }
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    t[self.dim + i][self.dim + j][self.dim + k] = other.constant(i, j, k).clone();
                }
            }
        }
        let unit = match (&self.unit, &other.unit) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Self::new(t, unit)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&[C]> {
        self.unit.as_deref()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &SparsePoly<C> {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    fn sample(&self) -> &C {
        self.table[0].coeff_sample()
    }

    /// Product of two coordinate vectors of polynomials.
    pub fn mul(
        &self,
        x: &[SparsePoly<C>],
        y: &[SparsePoly<C>],
    ) -> Result<Vec<SparsePoly<C>>, FormError> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(FormError::Dimension("operand length".into()));
        }
        let zero = SparsePoly::zero_in(no_vars(), self.sample());
        let mut z = vec![zero; self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].mul(&y[j]);
                for (k, zk) in z.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *zk = zk.add(&c.mul(&xy));
                    }
                }
            }
        }
        Ok(z)
    }

    /// Numeric constants; fails on symbolic structure constants.
    fn numeric(&self, i: usize, j: usize, k: usize) -> Result<C, FormError> {
        let c = self.constant(i, j, k);
        if c.is_constant() {
            Ok(c.constant_term())
        } else {
            Err(FormError::HasParameters)
        }
    }

    pub fn mul_values(&self, x: &[C], y: &[C]) -> Result<Vec<C>, FormError> {
        let l = self.left_mul_matrix(x)?;
        if y.len() != self.dim {
            return Err(FormError::Dimension("operand length".into()));
        }
        Ok(l.apply(y))
    }

    /// Matrix of `v -> x v`: entry `(k, j)` is `sum_i c[i][j][k] x_i`.
    pub fn left_mul_matrix(&self, x: &[C]) -> Result<Matrix<C>, FormError> {
        if x.len() != self.dim {
            return Err(FormError::Dimension("operand length".into()));
        }
        let mut m = Matrix::zeros(self.dim, self.dim, self.sample());
        for k in 0..self.dim {
            for j in 0..self.dim {
                let mut s = self.sample().zero_like();
                for (i, xi) in x.iter().enumerate() {
                    s = s.add(&self.numeric(i, j, k)?.mul(xi));
                }
                m.set(k, j, s);
            }
        }
        Ok(m)
    }
}

fn fresh_block<C: Scalar>(
    prefix: &str,
    n: usize,
    taken: &[String],
    sample: &C,
) -> Result<Vec<SparsePoly<C>>, FormError> {
    let names = default_names(prefix, n);
    if names.iter().any(|v| taken.contains(v)) {
        return Err(FormError::Dimension(format!(
            "variable prefix {prefix} clashes with a parameter"
        )));
    }
    Ok(SparsePoly::variables(&names, sample))
}

/// `phi(x y) = phi(x) phi(y)` as an identity in `2n` indeterminates.
pub fn permits_composition_check<C: Scalar>(
    phi: &Form<C>,
    a: &AlgebraStructure<C>,
) -> Result<VerifyReport, FormError> {
    if phi.dim() != a.dim() {
        return Err(FormError::Dimension(format!(
            "form has dimension {}, algebra {}",
            phi.dim(),
            a.dim()
        )));
    }
    let x = fresh_block("l", phi.dim(), phi.params(), phi.sample())?;
    let y = fresh_block("r", phi.dim(), phi.params(), phi.sample())?;
    let lhs = phi.substitute(&a.mul(&x, &y)?)?;
    let rhs = phi.substitute(&x)?.mul(&phi.substitute(&y)?);
    let mut r = identity_test(&lhs, &rhs, IdentityMode::Exact)?
        .param("degree", phi.degree())
        .param("dim", phi.dim())
        .anchor("composition");
    r.identity = "composition".into();
    Ok(r)
}

/// `phi2(M v) = phi1(v)` as a polynomial identity. A singular `M` is an error,
/// not a failed check.
pub fn isometry_witness_check<C: Scalar>(
    phi1: &Form<C>,
    phi2: &Form<C>,
    m: &Matrix<C>,
) -> Result<VerifyReport, FormError> {
    let n = phi1.dim();
    if phi2.dim() != n || m.rows() != n || m.cols() != n {
        return Err(FormError::Dimension("isometry shapes".into()));
    }
    if phi1.degree() != phi2.degree() {
        return Err(FormError::Dimension("forms of different degree".into()));
    }
    if m.rank() < n {
        return Err(FormError::Singular);
    }
    let v = phi1.var_polys();
    let sample = SparsePoly::zero_in(phi1.poly().vars().clone(), phi1.sample());
    let mv: Vec<SparsePoly<C>> = (0..n)
        .map(|i| (0..n).fold(sample.clone(), |acc, j| acc.add(&v[j].scale(m.get(i, j)))))
        .collect();
    let lhs = phi2.substitute(&mv)?;
    let mut r = identity_test(&lhs, phi1.poly(), IdentityMode::Exact)?.anchor("isometry");
    r.identity = "isometry".into();
    Ok(r)
}
