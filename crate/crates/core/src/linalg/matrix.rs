use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::error::LinalgError;
use crate::scalar::Scalar;

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn diagonal(values: &[F]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<F>]) -> Result<Self, LinalgError> {
        let ncols = columns.len();
        let nrows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != nrows) {
            return Err(LinalgError::DimensionMismatch("ragged columns".into()));
        }
        let mut m = Self::zeros(nrows, ncols);
        for (j, c) in columns.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
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

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    /// `self - c I`.
    pub fn shift(&self, c: &F) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] = m[(i, i)].clone() - c.clone();
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix/vector size mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self).expect("square");
        }
        acc
    }

    /// Gauss-Jordan elimination; pivots are taken in column order with the
    /// first nonzero row below the current one.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = F::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, one vector per free column, in
    /// increasing free-column order. Each vector has a one in its free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix[(row, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<F, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        let mut m = self.clone();
        let mut sign = F::one();
        let mut prev = F::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Ok(F::zero());
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[(k, k)].clone() * m[(i, j)].clone()
                        - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = v / prev.clone();
                }
                m[(i, k)] = F::zero();
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * m[(n - 1, n - 1)].clone())
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let r = aug.rref();
        if r.pivots.iter().take(n).copied().ne(0..n) || r.rank < n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r.matrix[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// A solution `x` of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let r = aug.rref();
        if r.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in r.pivots.iter().enumerate() {
            x[p] = r.matrix[(row, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;

    fn index(&self, (i, j): (usize, usize)) -> &F {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Scalar> Mul for &Matrix<F> {
    type Output = Matrix<F>;

    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        self.matmul(rhs).expect("matrix dimensions agree")
    }
}

impl<F: Scalar> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type M = Matrix<BigRational>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_fraction(n, d)
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let r = M::identity(4).rref();
        assert_eq!(r.matrix, M::identity(4));
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);
        assert_eq!(r.rank, 4);
    }

    #[test]
    fn dependent_rows_have_rank_one() {
        let m = M::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(M::identity(3).kernel().is_empty());
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let k = M::from_i64(&[&[1, 1]]).kernel();
        assert_eq!(k, vec![vec![q(-1, 1), q(1, 1)]]);
    }

    #[test]
    fn bareiss_determinant() {
        let m = M::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(m.determinant().unwrap(), q(6, 1));
        let singular = M::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        assert_eq!(singular.determinant().unwrap(), q(0, 1));
        let swap = M::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.determinant().unwrap(), q(-1, 1));
        assert!(M::zeros(2, 3).determinant().is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = M::from_i64(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, M::identity(3));
        assert!(M::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = M::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&[q(3, 1), q(1, 1)]), Some(vec![q(2, 1), q(1, 1)]));
        let singular = M::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(singular.solve(&[q(1, 1), q(3, 1)]), None);
    }
}
