use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::scalar::Integers;

/// Smith normal form `d = u·c·v` with unimodular transforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Number of elementary divisors equal to 1.
    pub fn unit_divisors(&self) -> usize {
        self.diagonal().iter().filter(|d| d.is_one()).count()
    }

    /// Recheck every invariant against the input matrix.
    pub fn certify(&self, c: &IntMatrix) -> bool {
        let z = Integers;
        let Ok(ucv) = self.u.mul(&z, c).and_then(|uc| uc.mul(&z, &self.v)) else {
            return false;
        };
        if ucv != self.d || !self.u.det().abs().is_one() || !self.v.det().abs().is_one() {
            return false;
        }
        for i in 0..self.d.rows() {
            for j in 0..self.d.cols() {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        if diag.iter().any(|x| x.is_negative()) {
            return false;
        }
        diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        })
    }
}

fn identity(n: usize) -> IntMatrix {
    IntMatrix::identity(&Integers, n)
}

fn row_axpy(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let v = m.get(target, j) - q * m.get(src, j);
        m.set(target, j, v);
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let v = m.get(i, target) - q * m.get(i, src);
        m.set(i, target, v);
    }
}

/// Smith normal form by repeated minimal-pivot elimination.
///
/// The pivot is the nonzero entry of least absolute value in the remaining
/// block, ties broken in row-major order. `u` and `v` record every row and
/// column operation, so `d = u·c·v` holds by construction.
pub fn snf(c: &IntMatrix) -> SnfResult {
    let (rows, cols) = (c.rows(), c.cols());
    let mut a = c.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    'outer: for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = a.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            for j in 0..cols {
                let x = -a.get(t, j);
                a.set(t, j, x);
            }
            for j in 0..rows {
                let x = -u.get(t, j);
                u.set(t, j, x);
            }
        }
    }
    SnfResult { d: a, u, v }
}
