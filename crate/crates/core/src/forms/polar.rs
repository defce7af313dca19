use std::sync::Arc;

use super::{Form, FormError};
use crate::exactalg::{var_list, Matrix, Ring, Scalar, SparsePoly};

/// Symmetric `d`-linear map in `d` blocks of `n` variables `v{k}_{i}`,
/// followed by the parameters of the form it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct MultilinearMap<C: Ring> {
    arity: u32,
    dim: usize,
    poly: SparsePoly<C>,
}

fn block_name(k: u32, i: usize) -> String {
    format!("v{k}_{i}")
}

impl<C: Scalar> MultilinearMap<C> {
    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn poly(&self) -> &SparsePoly<C> {
        &self.poly
    }

    fn nblock(&self) -> usize {
        self.arity as usize * self.dim
    }

    /// Index of variable `i` (0-based) of block `k` (0-based).
    fn idx(&self, k: usize, i: usize) -> usize {
        k * self.dim + i
    }

    /// Every variable has degree at most one and every monomial takes
    /// exactly one variable from each block.
    pub fn is_block_multilinear(&self) -> bool {
        self.poly.terms().all(|(m, _)| {
            (0..self.arity as usize).all(|k| {
                let e = &m.exps()[self.idx(k, 0)..self.idx(k, 0) + self.dim];
                e.iter().all(|&x| x <= 1) && e.iter().sum::<u32>() == 1
            })
        })
    }

    /// Invariance under each adjacent block transposition.
    pub fn is_symmetric(&self) -> bool {
        (0..self.arity as usize - 1).all(|k| self.swapped(k) == self.poly)
    }

    fn swapped(&self, k: usize) -> SparsePoly<C> {
        let mut names: Vec<String> = self.poly.vars().to_vec();
        for i in 0..self.dim {
            names.swap(self.idx(k, i), self.idx(k + 1, i));
        }
        self.poly.rename(names.into()).expect("same length")
    }

    /// `theta(x, ..., x)` expressed in the given variable names.
    pub fn diagonal(&self, names: &[String]) -> Result<SparsePoly<C>, FormError> {
        if names.len() != self.dim {
            return Err(FormError::Dimension("diagonal names".into()));
        }
        let mut vars: Vec<String> = names.to_vec();
        vars.extend(self.poly.vars()[self.nblock()..].iter().cloned());
        let vars: Arc<[String]> = vars.into();
        let sample = SparsePoly::zero_in(vars.clone(), self.poly.coeff_sample());
        let xs: Vec<SparsePoly<C>> = (0..vars.len())
            .map(|i| SparsePoly::var_in(vars.clone(), i, self.poly.coeff_sample()))
            .collect();
        let mut point = Vec::with_capacity(self.poly.nvars());
        for _ in 0..self.arity {
            point.extend(xs[..self.dim].iter().cloned());
        }
        point.extend(xs[self.dim..].iter().cloned());
        Ok(self.poly.eval_with_sample(&sample, &point))
    }

    /// `theta(e_{i_1}, ..., e_{i_d})`: a single coefficient, since theta is
    /// block multilinear.
    pub fn at_basis(&self, indices: &[usize]) -> Result<C, FormError> {
        if self.poly.nvars() > self.nblock() {
            return Err(FormError::HasParameters);
        }
        if indices.len() != self.arity as usize {
            return Err(FormError::Dimension("basis tuple length".into()));
        }
        let mut e = vec![0u32; self.nblock()];
        for (k, &i) in indices.iter().enumerate() {
            e[self.idx(k, i)] = 1;
        }
        Ok(self.poly.coefficient(&e))
    }

    /// Value on `d` vectors of the base field.
    pub fn apply(&self, vectors: &[Vec<C>]) -> Result<C, FormError> {
        if self.poly.nvars() > self.nblock() {
            return Err(FormError::HasParameters);
        }
        if vectors.len() != self.arity as usize || vectors.iter().any(|v| v.len() != self.dim) {
            return Err(FormError::Dimension("argument shape".into()));
        }
        let point: Vec<C> = vectors.iter().flatten().cloned().collect();
        Ok(self.poly.eval_with_sample(self.poly.coeff_sample(), &point))
    }
}

/// The symmetric multilinear form with `theta(v, ..., v) = phi(v)`:
///
/// `theta(v_1..v_d) = 1/d! * sum over nonempty S of (-1)^(d-|S|) phi(sum_{k in S} v_k)`.
pub fn polarize<C: Scalar>(phi: &Form<C>) -> Result<MultilinearMap<C>, FormError> {
    let d = phi.degree();
    let n = phi.dim();
    let sample = phi.sample();
    let fact = (1..=d as i64).fold(sample.one_like(), |acc, k| {
        acc.mul(&sample.from_int_like(k))
    });
    let inv = fact.inv().ok_or(FormError::Characteristic {
        characteristic: sample.characteristic(),
        degree: d,
    })?;
    let mut names: Vec<String> = Vec::with_capacity(d as usize * n + phi.params().len());
    for k in 1..=d {
        for i in 1..=n {
            names.push(block_name(k, i));
        }
    }
    if phi.params().iter().any(|p| names.contains(p)) {
        return Err(FormError::Dimension(
            "parameter name clashes with a block variable".into(),
        ));
    }
    names.extend(phi.params().iter().cloned());
    let vars = var_list(&names);
    let block = |k: usize, i: usize| SparsePoly::var_in(vars.clone(), k * n + i, sample);
    let mut acc = SparsePoly::zero_in(vars.clone(), sample);
    for mask in 1u32..(1 << d) {
        let size = mask.count_ones();
        let point: Vec<SparsePoly<C>> = (0..n)
            .map(|i| {
                (0..d as usize)
                    .filter(|k| mask >> k & 1 == 1)
                    .fold(SparsePoly::zero_in(vars.clone(), sample), |s, k| {
                        s.add(&block(k, i))
                    })
            })
            .collect();
        let value = phi.substitute(&point)?;
        acc = if (d - size).is_multiple_of(2) {
            acc.add(&value)
        } else {
            acc.sub(&value)
        };
    }
    let poly = acc.scale(&inv).with_vars(vars)?;
    Ok(MultilinearMap {
        arity: d,
        dim: n,
        poly,
    })
}

/// Multisets of size `k` drawn from `0..n`, as sorted index vectors.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Basis of the radical `{v : theta(v, e_{i_2}, ..., e_{i_d}) = 0 for all i}`.
///
/// By symmetry only multisets `{i_2..i_d}` are needed. An empty result means
/// `phi` is nondegenerate.
pub fn radical<C: Scalar>(phi: &Form<C>) -> Result<Vec<Vec<C>>, FormError> {
    if phi.has_params() {
        return Err(FormError::HasParameters);
    }
    let theta = polarize(phi)?;
    let n = phi.dim();
    let rows: Vec<Vec<C>> = multisets(n, phi.degree() as usize - 1)
        .into_iter()
        .map(|ms| {
            (0..n)
                .map(|j| {
                    let mut idx = vec![j];
                    idx.extend(&ms);
                    theta.at_basis(&idx)
                })
                .collect::<Result<Vec<C>, FormError>>()
        })
        .collect::<Result<_, _>>()?;
    let m = Matrix::from_rows(rows)?;
    Ok(m.nullspace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Field, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn square_polarizes_to_product() {
        let x = SparsePoly::variables(&["x"], &q(0));
        let f = Form::new(x[0].pow_usize(2), 1, 2).unwrap();
        let t = polarize(&f).unwrap();
        assert_eq!(t.poly().to_string(), "v1_1*v2_1");
    }

    #[test]
    fn diagonal_cubic_in_two_variables() {
        let f = Form::diagonal(&[q(2), q(-5)], 3).unwrap();
        let t = polarize(&f).unwrap();
        assert_eq!(t.poly().to_string(), "2*v1_1*v2_1*v3_1 - 5*v1_2*v2_2*v3_2");
        assert!(t.is_block_multilinear());
        assert!(t.is_symmetric());
    }

    #[test]
    fn restriction_of_x_y_squared() {
        let v = SparsePoly::variables(&["x", "y"], &q(0));
        let f = Form::new(&v[0] * &v[1].pow_usize(2), 2, 3).unwrap();
        let t = polarize(&f).unwrap();
        assert_eq!(t.diagonal(f.var_names()).unwrap(), *f.poly());
        assert_eq!(t.at_basis(&[0, 1, 1]).unwrap(), Rational::new(1, 3));
    }

    #[test]
    fn radicals() {
        assert!(radical(&Form::diagonal(&[q(1), q(2), q(4)], 3).unwrap())
            .unwrap()
            .is_empty());
        let v = SparsePoly::variables(&["x", "y"], &q(0));
        let f = Form::new(v[0].pow_usize(3), 2, 3).unwrap();
        assert_eq!(radical(&f).unwrap(), vec![vec![q(0), q(1)]]);
        let w = SparsePoly::variables(&["x", "y", "z"], &q(0));
        let n = &(&(&w[0].pow_usize(3) + &w[1].pow_usize(3).scale(&q(2)))
            + &w[2].pow_usize(3).scale(&q(4)))
            - &(&(&w[0] * &w[1]) * &w[2]).scale(&q(6));
        assert!(radical(&Form::new(n, 3, 3).unwrap()).unwrap().is_empty());
    }

    /// `d! theta(w_1, ..., w_d) = D_{w_1} ... D_{w_d} phi`.
    fn by_directional_derivatives(phi: &Form<Rational>, ws: &[Vec<Rational>]) -> Rational {
        let mut f = phi.poly().clone();
        for w in ws {
            let mut next = SparsePoly::zero_in(f.vars().clone(), &q(0));
            for (i, wi) in w.iter().enumerate() {
                next = &next + &f.derivative(i).scale(wi);
            }
            f = next;
        }
        let fact: i64 = (1..=ws.len() as i64).product();
        f.eval_with_sample(&q(0), &vec![q(0); phi.dim()])
            .div(&q(fact))
            .unwrap()
    }

    #[test]
    fn alternating_sum_agrees_with_differentiation() {
        let v = SparsePoly::variables(&["x", "y", "z"], &q(0));
        let forms = [
            Form::new(&v[0] * &v[1].pow_usize(2), 3, 3).unwrap(),
            Form::new(
                &(&v[0].pow_usize(4) - &(&v[1] * &v[2].pow_usize(3)).scale(&q(7)))
                    + &(&v[0] * &v[1]).pow_usize(2),
                3,
                4,
            )
            .unwrap(),
            Form::diagonal(&[q(3), Rational::new(-1, 2), q(5)], 5).unwrap(),
        ];
        let pts = [[1, 2, -1], [0, -3, 2], [4, 1, 1], [-2, 0, 5], [1, 1, 1]];
        for phi in &forms {
            let d = phi.degree() as usize;
            let ws: Vec<Vec<Rational>> = pts[..d]
                .iter()
                .map(|p| p.iter().map(|&c| q(c)).collect())
                .collect();
            let theta = polarize(phi).unwrap();
            assert_eq!(
                theta.apply(&ws).unwrap(),
                by_directional_derivatives(phi, &ws),
                "{}",
                phi.poly()
            );
        }
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(4, 0), vec![Vec::<usize>::new()]);
    }
}
