//! Small dense matrices over [`ExactComplex`] with exact elimination.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::ExactComplex;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactComplex>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ExactComplex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, ExactComplex::one());
        }
        m
    }

    pub fn diagonal(entries: &[ExactComplex]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (k, e) in entries.iter().enumerate() {
            m.set(k, k, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactComplex>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ExactComplex::from_int(x)).collect())
                .collect(),
        )
    }

    /// Block-diagonal sum of square blocks.
    pub fn block_diagonal(blocks: &[Matrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(off + r, off + c, b.get(r, c).clone());
                }
            }
            off += b.rows;
        }
        m
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

    pub fn get(&self, r: usize, c: usize) -> &ExactComplex {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactComplex) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[ExactComplex] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactComplex>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = ExactComplex::zero();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if !a.is_zero() {
                        acc += &(a * rhs.get(k, c));
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[ExactComplex]) -> Result<Vec<ExactComplex>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(ExactComplex::zero(), |acc, (a, x)| &acc + &(a * x))
            })
            .collect())
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("matrix shapes differ".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &ExactComplex) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&ExactComplex::from_int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactComplex::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r..self.cols).all(|c| *self.get(r, c) == -self.get(c, r)))
    }

    /// Exact determinant by fraction-field Gaussian elimination.
    pub fn det(&self) -> Result<ExactComplex> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ExactComplex::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok(ExactComplex::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for r in col + 1..n {
                let factor = a.get(r, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a.get(r, c) - &(&factor * a.get(col, c));
                    a.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Solve `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[ExactComplex]) -> Result<Vec<ExactComplex>> {
        let rhs = Matrix {
            rows: b.len(),
            cols: 1,
            data: b.to_vec(),
        };
        let x = self.solve_matrix(&rhs)?;
        Ok(x.data)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.solve_matrix(&Matrix::identity(self.rows))
    }

    /// Gauss-Jordan elimination on `[self | rhs]`.
    fn solve_matrix(&self, rhs: &Matrix) -> Result<Matrix> {
        if !self.is_square() || rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(
                "solve needs a square system".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(p, col);
            b.swap_rows(p, col);
            let inv = a.get(col, col).inv()?;
            for c in 0..n {
                a.set(col, c, a.get(col, c) * &inv);
            }
            for c in 0..b.cols {
                b.set(col, c, b.get(col, c) * &inv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = a.get(r, c) - &(&factor * a.get(col, c));
                    a.set(r, c, v);
                }
                for c in 0..b.cols {
                    let v = b.get(r, c) - &(&factor * b.get(col, c));
                    b.set(r, c, v);
                }
            }
        }
        Ok(b)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (k, x) in self.row(r).iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{self}")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).unwrap();
        assert_eq!(m.det().unwrap(), ExactComplex::from_int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn singular_is_detected() {
        let m = Matrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(m.det().unwrap(), ExactComplex::zero());
        assert_eq!(m.inverse(), Err(Error::Singular));
    }

    #[test]
    fn needs_pivoting() {
        let m = Matrix::from_ints(&[&[0, -1], &[1, 0]]).unwrap();
        assert_eq!(m.det().unwrap(), ExactComplex::one());
        assert_eq!(m.inverse().unwrap(), m.neg());
    }

    #[test]
    fn antisymmetry() {
        assert!(Matrix::from_ints(&[&[0, 3], &[-3, 0]])
            .unwrap()
            .is_antisymmetric());
        assert!(!Matrix::from_ints(&[&[0, 3], &[3, 0]])
            .unwrap()
            .is_antisymmetric());
        assert!(!Matrix::from_ints(&[&[1, 0], &[0, 0]])
            .unwrap()
            .is_antisymmetric());
    }
}
