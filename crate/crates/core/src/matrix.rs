//! Dense matrices over a [`FieldSpec`] with exact Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{FieldSpec, Scalar};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, size: usize) -> Self {
        let mut m = Matrix::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::IndexOutOfRange("ragged matrix rows".into()));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch);
                }
                data.push(x);
            }
        }
        Ok(Matrix { field, rows: r, cols: c, data })
    }

    /// Builds a matrix from columns of equal length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, v).expect("integer rows")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::IndexOutOfRange(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::IndexOutOfRange("vector length".into()));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    *slot = slot.checked_add(&a.checked_mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::IndexOutOfRange("shape mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    /// The submatrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.field {
            FieldSpec::PrimeField(p) => self.rref_mod(p),
            FieldSpec::Rationals => self.rref_generic(),
        }
    }

    fn rref_generic(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if !m.get(r, j).is_zero() {
                        let v = m.get(i, j) - &(&f * m.get(r, j));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn rref_mod(&self, p: u64) -> (Matrix, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<u64> = self
            .data
            .iter()
            .map(|x| match x {
                Scalar::Residue { value, .. } => *value,
                Scalar::Rational(_) => unreachable!("prime-field matrix"),
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    a.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = pow_mod(a[r * cols + c], p - 2, p);
            for j in c..cols {
                a[r * cols + j] = a[r * cols + j] * inv % p;
            }
            for i in 0..rows {
                let f = a[i * cols + c];
                if i == r || f == 0 {
                    continue;
                }
                for j in c..cols {
                    let x = a[r * cols + j];
                    if x != 0 {
                        a[i * cols + j] = (a[i * cols + j] + (p - f) * x) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let data = a.into_iter().map(|value| Scalar::Residue { value, modulus: p }).collect();
        (Matrix { field: self.field, rows, cols, data }, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix; `DivisionByZero` when singular.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::IndexOutOfRange("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let idx: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(r.submatrix(&idx, &right))
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_and_kernel() {
        for field in [FieldSpec::Rationals, FieldSpec::PrimeField(7)] {
            let m = Matrix::from_i64(field, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
            assert_eq!(m.rank(), 2);
            let ker = m.nullspace();
            assert_eq!(ker.len(), 1);
            assert!(m.mul_vec(&ker[0]).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let q = FieldSpec::Rationals;
        let m = Matrix::from_i64(q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(q, 2));
        let s = Matrix::from_i64(q, &[&[1, 1], &[1, 1]]);
        assert_eq!(s.inverse(), Err(Error::DivisionByZero));
    }

    proptest! {
        #[test]
        fn rank_agrees_across_backends(entries in prop::collection::vec(-3i64..4, 12)) {
            // Small integer entries: ranks over ℚ and 𝔽_32003 agree unless a minor is a multiple of 32003.
            let rows: Vec<&[i64]> = entries.chunks(4).collect();
            let q = Matrix::from_i64(FieldSpec::Rationals, &rows);
            let p = Matrix::from_i64(FieldSpec::PrimeField(32003), &rows);
            prop_assert_eq!(q.rank(), p.rank());
            prop_assert_eq!(q.rank() + q.nullspace().len(), 4);
        }
    }
}
