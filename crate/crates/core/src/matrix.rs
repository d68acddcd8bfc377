//! Dense exact matrices: rank, kernel, solving, span tests.
//!
//! Gauss-Jordan elimination is used throughout for prime fields. Ranks over
//! the rationals go through fraction-free (Bareiss) elimination on a
//! denominator-cleared integer matrix, which keeps intermediate entries from
//! blowing up.

use crate::field::{big_rational_abs, Field, FieldError, Scalar};
use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("entry count {got} does not match shape {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize, got: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Row-major exact matrix over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch { rows, cols, got: data.len() });
        }
        for s in &data {
            field.validate(s)?;
        }
        Ok(Matrix { rows, cols, field, data })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds from integer entries, mapping into the field.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let data = entries.iter().map(|v| field.from_i64(*v)).collect();
        Matrix { rows, cols, field, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field tag mismatch in mul");
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|v| f.mul(v, c)).collect();
        Matrix { rows: self.rows, cols: self.cols, field: f, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Matrix { rows: self.rows, cols: self.cols, field: f, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    /// Glues columns: [self | other].
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut out = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Reduced row echelon form together with pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot nonzero");
            for j in col..m.cols {
                let v = f.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), &f.mul(&factor, m.get(row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Exact rank. Rationals take the fraction-free route.
    pub fn rank(&self) -> usize {
        match self.field {
            Field::Prime(_) => self.rref().1.len(),
            Field::Rational => self.bareiss_rank(),
        }
    }

    fn bareiss_rank(&self) -> usize {
        // Clear denominators row by row, then run integer fraction-free elimination.
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut lcm = BigInt::one();
            for j in 0..self.cols {
                let r = self.get(i, j).as_rational().expect("rational entry");
                lcm = num::integer::lcm(lcm, r.denom().clone());
            }
            let row: Vec<BigInt> = (0..self.cols)
                .map(|j| {
                    let r = self.get(i, j).as_rational().unwrap();
                    r.numer() * (&lcm / r.denom())
                })
                .collect();
            m.push(row);
        }
        let rows = self.rows;
        let cols = self.cols;
        let mut prev = BigInt::one();
        let mut rank = 0usize;
        let mut row = 0usize;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            for r in row + 1..rows {
                for c in col + 1..cols {
                    let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                    m[r][c] = num / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[row][col].clone();
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Basis of the right null space, one column vector per basis element.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let pivot_set: Vec<usize> = pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivot_set.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Any particular solution of `self * x = b`, if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let f = self.field;
        let bm = Matrix::from_columns(f, self.rows, &[b.to_vec()]);
        let aug = self.hstack(&bm);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// All solutions at once: one output column per rhs column. None if any is inconsistent.
    pub fn solve_many(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(rhs.rows, self.rows, "rhs shape mismatch");
        let mut cols = Vec::with_capacity(rhs.cols);
        for j in 0..rhs.cols {
            cols.push(self.solve(&rhs.column(j))?);
        }
        Some(Matrix::from_columns(self.field, self.cols, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// True iff `v` lies in the span of `basis`.
pub fn in_span(field: Field, v: &[Scalar], basis: &[Vec<Scalar>]) -> Result<bool, MatrixError> {
    for b in basis {
        if b.len() != v.len() {
            return Err(MatrixError::DimensionMismatch(format!(
                "vector length {} vs basis vector length {}",
                v.len(),
                b.len()
            )));
        }
    }
    if v.iter().all(Scalar::is_zero) {
        return Ok(true);
    }
    let m = Matrix::from_columns(field, v.len(), basis);
    Ok(m.solve(v).is_some())
}

/// Scalar product helper used by witness re-verification.
pub fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        acc = field.add(&acc, &field.mul(x, y));
    }
    acc
}

pub(crate) fn rational_is_integer(r: &BigRational) -> bool {
    big_rational_abs(r).denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> Field {
        Field::Prime(p)
    }

    #[test]
    fn rank_zero_and_identity() {
        let f = Field::default_prime();
        assert_eq!(Matrix::zeros(f, 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(f, 3).rank(), 3);
    }

    #[test]
    fn rank_dependent_rows_mod_5() {
        let m = Matrix::from_i64(fp(5), 2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_sizes() {
        let f = fp(7);
        assert!(Matrix::identity(f, 2).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(f, 2, 2).kernel_basis().len(), 2);
        let m = Matrix::from_i64(f, 1, 2, &[1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (1, -1)
        let v = &k[0];
        assert_eq!(f.add(&v[0], &v[1]), f.zero());
        assert!(!v[0].is_zero());
    }

    #[test]
    fn span_membership() {
        let f = fp(11);
        let e1 = vec![f.one(), f.zero()];
        let e2 = vec![f.zero(), f.one()];
        let e12 = vec![f.one(), f.one()];
        assert!(in_span(f, &[f.zero(), f.zero()], &[e2.clone()]).unwrap());
        assert!(in_span(f, &e1, &[e12.clone(), e2.clone()]).unwrap());
        assert!(!in_span(f, &e1, &[e2.clone()]).unwrap());
        assert!(in_span(f, &e1, &[vec![f.one()]]).is_err());
    }

    #[test]
    fn solve_particular() {
        let f = fp(13);
        let m = Matrix::from_i64(f, 2, 2, &[1, 1, 0, 1]);
        let b = vec![f.from_i64(3), f.from_i64(2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(x, vec![f.from_i64(1), f.from_i64(2)]);
        let singular = Matrix::from_i64(f, 2, 1, &[0, 0]);
        assert!(singular.solve(&[f.one(), f.zero()]).is_none());
    }

    #[test]
    fn bareiss_matches_gauss_rank() {
        let entries: Vec<i64> = vec![2, 4, -2, 1, 3, 7, 5, 0, 3, 7, 3, 0];
        let mq = Matrix::from_i64(Field::Rational, 3, 4, &entries);
        let mp = Matrix::from_i64(Field::default_prime(), 3, 4, &entries);
        assert_eq!(mq.rank(), mp.rank());
        assert_eq!(mq.rank(), mq.transpose().rank());
    }

    #[test]
    fn construction_checks_tags() {
        let bad = Matrix::new(fp(5), 1, 1, vec![Scalar::Fp(7)]);
        assert!(bad.is_err());
        let mixed = Matrix::new(fp(5), 1, 1, vec![Field::Rational.one()]);
        assert!(mixed.is_err());
    }
}
