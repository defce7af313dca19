use crate::exactalg::{ExtElem, Matrix, Ring, Scalar};

use super::ExtError;

/// `N_{K/F}(a) = N_{F(a)/F}(a)^{[K : F(a)]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TowerNorm<C: Ring> {
    pub norm: C,
    /// Minimal polynomial of `a` over `F`, low degree first, monic.
    pub minpoly: Vec<C>,
    pub subfield_norm: C,
    /// `[K : F(a)]`
    pub exponent: usize,
    /// `Some(true)` when `d` divides the exponent, so the norm is a `d`-th
    /// power; `None` otherwise.
    pub dth_power: Option<bool>,
}

/// Multiplication by `a` on `K = F(alpha)(beta)` over `F`, in the basis
/// `alpha^i beta^j` with index `j * [F(alpha):F] + i`.
pub fn absolute_matrix<C: Ring>(a: &ExtElem<ExtElem<C>>) -> Matrix<C> {
    let outer = a.regular_rep();
    let n2 = outer.rows();
    let inner_blocks: Vec<Vec<Matrix<C>>> = (0..n2)
        .map(|r| (0..n2).map(|c| outer.get(r, c).regular_rep()).collect())
        .collect();
    let n1 = inner_blocks[0][0].rows();
    let sample = inner_blocks[0][0].sample().zero_like();
    let mut m = Matrix::filled(n1 * n2, n1 * n2, sample);
    for (r, row) in inner_blocks.iter().enumerate() {
        for (c, block) in row.iter().enumerate() {
            for i in 0..n1 {
                for j in 0..n1 {
                    m.set(r * n1 + i, c * n1 + j, block.get(i, j).clone());
                }
            }
        }
    }
    m
}

/// Factored norm from the absolute multiplication matrix of `a` in a basis
/// whose first vector is `1`.
///
/// The minimal polynomial is read off the first linear dependence among
/// `1, a, a^2, ...`.
pub fn norm_tower_factor<C: Scalar>(mult: &Matrix<C>, d: u32) -> Result<TowerNorm<C>, ExtError> {
    let n = mult.rows();
    if !mult.is_square() || n == 0 {
        return Err(crate::exactalg::AlgError::NotSquare {
            rows: mult.rows(),
            cols: mult.cols(),
        }
        .into());
    }
    let sample = mult.sample().zero_like();
    let mut krylov: Vec<Vec<C>> = vec![{
        let mut e = vec![sample.clone(); n];
        e[0] = sample.one_like();
        e
    }];
    let minpoly = loop {
        let next = mult.apply(krylov.last().unwrap());
        krylov.push(next);
        let k = krylov.len() - 1;
        let cols = Matrix::from_rows(
            (0..n)
                .map(|r| krylov.iter().map(|v| v[r].clone()).collect())
                .collect(),
        )?;
        let null = cols.nullspace();
        if let Some(v) = null.first() {
            let lead = v[k].inv().ok_or(ExtError::ZeroElement)?;
            break v.iter().map(|x| x.mul(&lead)).collect::<Vec<C>>();
        }
        if k > n {
            unreachable!("a vector space of dimension n has no n+1 independent vectors");
        }
    };
    let k = minpoly.len() - 1;
    let mut sub = minpoly[0].clone();
    if k % 2 == 1 {
        sub = sub.neg();
    }
    let exponent = n / k;
    let norm = sub.pow(exponent as u64);
    Ok(TowerNorm {
        norm,
        minpoly,
        subfield_norm: sub,
        exponent,
        dth_power: (d > 0 && exponent.is_multiple_of(d as usize)).then_some(true),
    })
}
