use super::{CsaError, Quaternion, QuaternionAlgebra};
use crate::exactalg::{Field, Matrix, Rational, Ring};

/// Which nonzero entry of the current column becomes the pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    First,
    Last,
}

/// `Nrd` of the Dieudonne determinant of a square matrix over a certified
/// quaternion division algebra.
pub fn ndet(
    alg: &QuaternionAlgebra,
    m: &Matrix<Quaternion<Rational>>,
) -> Result<Rational, CsaError> {
    if !alg.is_certified_division() {
        return Err(CsaError::NotCertified);
    }
    ndet_unchecked(m, PivotOrder::First)
}

/// Row reduction to upper triangular form by left transvections and row
/// swaps; the result is `Nrd(-1)^swaps` times the product of the diagonal
/// reduced norms.
///
/// Pivots are invertible entries. Over a split algebra a column can hold
/// only zero divisors, which is reported as [`CsaError::NotDivision`].
pub fn ndet_unchecked<F: Field>(
    m: &Matrix<Quaternion<F>>,
    order: PivotOrder,
) -> Result<F, CsaError> {
    if !m.is_square() {
        return Err(CsaError::Dimension(format!(
            "{}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut rows = m.to_rows();
    let sample = m.sample().clone();
    let minus_one = sample.one_like().neg();
    let zero = sample.nrd().zero_like();
    let mut acc = zero.one_like();
    for col in 0..n {
        if (col..n).all(|r| rows[r][col].is_zero()) {
            return Ok(zero);
        }
        let mut candidates = (col..n).filter_map(|r| rows[r][col].inv().map(|i| (r, i)));
        let pick = match order {
            PivotOrder::First => candidates.next(),
            PivotOrder::Last => candidates.next_back(),
        };
        let (p, inv) = pick.ok_or(CsaError::NotDivision)?;
        if p != col {
            rows.swap(p, col);
            acc = acc.mul(&minus_one.nrd());
        }
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].mul(&inv);
            for c in col..n {
                let v = rows[r][c].sub(&f.mul(&rows[col][c]));
                rows[r][c] = v;
            }
        }
        acc = acc.mul(&rows[col][col].nrd());
    }
    Ok(acc)
}

/// `t + x i + y j + z k -> [[t + x, b (y + z)], [y - z, t - x]]`, the
/// matrix model of the split algebra `(1, b)`.
pub fn split_embedding<F: Field>(q: &Quaternion<F>) -> Result<Matrix<F>, CsaError> {
    let (a, b) = q.params();
    if !a.is_one() {
        return Err(CsaError::Dimension("embedding needs a = 1".into()));
    }
    let [t, x, y, z] = q.coords();
    Ok(Matrix::from_rows(vec![
        vec![t.add(x), b.mul(&y.add(z))],
        vec![y.sub(z), t.sub(x)],
    ])?)
}

/// The `2n x 2n` commutative image of a matrix over `(1, b)`.
pub fn split_image<F: Field>(m: &Matrix<Quaternion<F>>) -> Result<Matrix<F>, CsaError> {
    let n = m.rows();
    let zero = m.sample().nrd().zero_like();
    let mut out = Matrix::filled(2 * m.rows(), 2 * m.cols(), zero);
    for r in 0..n {
        for c in 0..m.cols() {
            let e = split_embedding(m.get(r, c))?;
            for i in 0..2 {
                for j in 0..2 {
                    out.set(2 * r + i, 2 * c + j, e.get(i, j).clone());
                }
            }
        }
    }
    Ok(out)
}
