use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::{ScalarField, ScalarRing};
use crate::{Error, Result};

/// Dense row-major matrix over an arbitrary element type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type IntMatrix = Mat<BigInt>;

impl<E: fmt::Debug + Clone> fmt::Debug for Mat<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<_> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<E: Clone> Mat<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self::from_vec(rows, cols, vec![value; rows * cols])
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

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self::from_vec(self.cols, self.rows, data)
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Mat<T>
    where
        F: FnMut(&E) -> T,
    {
        Mat::from_vec(self.rows, self.cols, self.data.iter().map(f).collect())
    }
}

impl<E: Clone> Mat<E> {
    pub fn zeros<S: ScalarRing<Elem = E>>(ring: &S, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, ring.zero())
    }

    pub fn identity<S: ScalarRing<Elem = E>>(ring: &S, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Matrix unit `E_ij`.
    pub fn unit<S: ScalarRing<Elem = E>>(ring: &S, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        m.set(i, j, ring.one());
        m
    }

    pub fn mul<S: ScalarRing<Elem = E>>(&self, ring: &S, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ring.add(&out.data[idx], &ring.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn add<S: ScalarRing<Elem = E>>(&self, ring: &S, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("matrix sum".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| ring.add(a, b))
            .collect();
        Ok(Self::from_vec(self.rows, self.cols, data))
    }

    pub fn is_zero<S: ScalarRing<Elem = E>>(&self, ring: &S) -> bool {
        self.data.iter().all(|a| ring.is_zero(a))
    }

    /// Reduced row echelon form over a field; returns the pivot columns.
    pub fn rref<S: ScalarField<Elem = E>>(&mut self, field: &S) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !field.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = field.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || field.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), &field.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank<S: ScalarField<Elem = E>>(&self, field: &S) -> usize {
        self.clone().rref(field).len()
    }

    /// Basis of the right null space `{x : self·x = 0}`.
    pub fn kernel<S: ScalarField<Elem = E>>(&self, field: &S) -> Vec<Vec<E>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(m.get(row, f));
                }
                v
            })
            .collect()
    }

    pub fn inverse<S: ScalarField<Elem = E>>(&self, field: &S) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, field.one());
        }
        let pivots = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible(field.name()));
        }
        let mut out = Self::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(out)
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Image of the matrix in another scalar ring.
    pub fn to_ring<S: ScalarRing>(&self, ring: &S) -> Mat<S::Elem> {
        self.map(|a| ring.from_int(a))
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)).div_floor(&prev);
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }
}

/// Exact two-sided inverse of an integer matrix, computed in `field`.
pub fn mat_inverse_over_field<S: ScalarField>(c: &IntMatrix, field: &S) -> Result<Mat<S::Elem>> {
    c.to_ring(field).inverse(field)
}
