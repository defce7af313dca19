use std::fmt;

use super::{AlgError, ExactDiv, Field, Ring};

/// Dense row-major matrix over a ring. Entries need not commute; only the
/// determinant routines assume commutativity.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
    zero: R,
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[R]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<R: Ring> Matrix<R> {
    pub fn filled(rows: usize, cols: usize, value: R) -> Self {
        Matrix {
            rows,
            cols,
            zero: value.zero_like(),
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros(rows: usize, cols: usize, sample: &R) -> Self {
        Self::filled(rows, cols, sample.zero_like())
    }

    pub fn identity(n: usize, sample: &R) -> Self {
        let mut m = Self::zeros(n, n, sample);
        for i in 0..n {
            m.set(i, i, sample.one_like());
        }
        m
    }

    pub fn diagonal(entries: &[R]) -> Result<Self, AlgError> {
        let first = entries
            .first()
            .ok_or_else(|| AlgError::Dimension("empty diagonal".into()))?;
        let mut m = Self::zeros(entries.len(), entries.len(), first);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, AlgError> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if r == 0 || c == 0 {
            return Err(AlgError::Dimension("matrix must be nonempty".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgError::Dimension("ragged rows".into()));
        }
        let zero = rows[0][0].zero_like();
        if rows.iter().flatten().any(|x| !x.compatible(&zero)) {
            return Err(AlgError::FieldMismatch);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            zero,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn sample(&self) -> &R {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn map<S: Ring>(&self, sample: &S, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero: sample.zero_like(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, AlgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(AlgError::Dimension("shapes differ".into()));
        }
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&rhs.data) {
            *o = o.add(r);
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("matrix shapes differ")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale_left(&self.zero.from_int_like(-1)))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, AlgError> {
        if self.cols != rhs.rows {
            return Err(AlgError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix shapes incompatible")
    }

    /// `c * M`, with the scalar on the left.
    pub fn scale_left(&self, c: &R) -> Self {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = c.mul(x);
        }
        out
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(self.zero.clone(), |acc, i| acc.add(self.get(i, i)))
    }

    fn require_square(&self) -> Result<(), AlgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(AlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Division-free Laplace expansion, memoised over column subsets
    /// (O(n 2^n) ring operations). Panics on non-square input; see
    /// [`try_det_expansion`](Self::try_det_expansion).
    pub fn det_expansion(&self) -> R {
        self.try_det_expansion()
            .expect("determinant of non-square matrix")
    }

    pub fn try_det_expansion(&self) -> Result<R, AlgError> {
        self.require_square()?;
        let n = self.rows;
        assert!(n <= 20, "expansion determinant limited to n <= 20");
        // partial[S] = signed sum over bijections rows 0..|S| -> S
        let mut partial: Vec<Option<R>> = vec![None; 1 << n];
        partial[0] = Some(self.zero.one_like());
        for mask in 0usize..(1 << n) {
            let Some(val) = partial[mask].take() else {
                continue;
            };
            let row = mask.count_ones() as usize;
            if row == n {
                return Ok(val);
            }
            if val.is_zero() {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let a = self.get(row, j);
                if a.is_zero() {
                    continue;
                }
                // sign: parity of already-used columns to the right of j
                let above = (mask >> (j + 1)).count_ones();
                let term = val.mul(a);
                let term = if above % 2 == 1 { term.neg() } else { term };
                let slot = &mut partial[mask | (1 << j)];
                *slot = Some(match slot.take() {
                    Some(s) => s.add(&term),
                    None => term,
                });
            }
        }
        Ok(self.zero.clone())
    }

    pub fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let mut rows = Vec::with_capacity(self.rows - 1);
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            rows.push(
                (0..self.cols)
                    .filter(|&j| j != skip_col)
                    .map(|j| self.get(i, j).clone())
                    .collect(),
            );
        }
        Matrix::from_rows(rows).expect("minor of a matrix with >= 2 rows and cols")
    }

    /// Classical adjugate (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> Result<Self, AlgError> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1, &self.zero));
        }
        let mut adj = Self::zeros(n, n, &self.zero);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det_expansion();
                let c = if (i + j) % 2 == 1 { c.neg() } else { c };
                adj.set(j, i, c);
            }
        }
        Ok(adj)
    }
}

impl<R: ExactDiv> Matrix<R> {
    /// Fraction-free Bareiss elimination with row pivoting.
    pub fn det_bareiss(&self) -> Result<R, AlgError> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = self.zero.one_like();
        for k in 0..n.saturating_sub(1) {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        negate = !negate;
                    }
                    None => return Ok(self.zero.clone()),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                let lead = m.get(i, k).clone();
                for j in k + 1..n {
                    let num = m.get(i, j).mul(&pivot).sub(&lead.mul(m.get(k, j)));
                    let v = num
                        .div_exact(&prev)
                        .expect("Bareiss quotient must be exact in an integral domain");
                    m.set(i, j, v);
                }
                m.set(i, k, self.zero.clone());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Determinant by Bareiss elimination.
    pub fn det(&self) -> Result<R, AlgError> {
        self.det_bareiss()
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self.get(r, c).inv().expect("nonzero pivot in a field");
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(i, j).sub(&f.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.zero.clone(); self.cols];
                v[f] = self.zero.one_like();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = m.get(r, f).neg();
                }
                v
            })
            .collect()
    }

    /// Unique solution of `M x = b` for square invertible `M`.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>, AlgError> {
        self.require_square()?;
        if b.len() != self.rows {
            return Err(AlgError::Arity {
                expected: self.rows,
                got: b.len(),
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1, &self.zero);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgError::NotInvertible);
        }
        Ok((0..n).map(|i| aug.get(i, n).clone()).collect())
    }

    pub fn inverse(&self) -> Result<Self, AlgError> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, &self.zero);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.zero.one_like());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(AlgError::NotInvertible);
        }
        let mut inv = Self::zeros(n, n, &self.zero);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(self.zero.clone(), |acc, j| {
                    acc.add(&self.get(i, j).mul(&v[j]))
                })
            })
            .collect()
    }
}
