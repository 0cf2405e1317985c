//! Exact linear algebra over the integers, the rationals, and prime fields.
//!
//! Everything here is arbitrary precision; no floating point is used
//! anywhere in the crate.

mod factor;
mod modp;
mod rational;
mod snf;

pub use factor::{factorize, PrimeFactorization, DEFAULT_FACTOR_BOUND};
pub use modp::{is_prime, kernel_mod_p, rank_mod_p};
pub use rational::{solve_rational, RationalMatrix};
pub use snf::{smith_normal_form, SmithDecomposition};

pub(crate) use modp::Fp;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// The all-one matrix J.
    pub fn all_ones(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: vec![BigInt::one(); n * n],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged rows in matrix literal"
        );
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        Self {
            rows: r,
            cols: c,
            data,
        }
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

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
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

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f)?;
        fmt::Display::fmt(self, f)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntegerMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = !sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev; // exact by the Bareiss identity
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if sign { -det } else { det })
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(m: &IntegerMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot_row) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, pivot_row);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[(i, j)] * &a[(r, c)] - &a[(i, c)] * &a[(r, j)];
                a[(i, j)] = num / &prev;
            }
            a[(i, c)] = BigInt::zero();
        }
        prev = a[(r, c)].clone();
        r += 1;
    }
    r
}

/// Coefficients of det(xI - m), degree-descending and monic, by the
/// Faddeev-LeVerrier recurrence. All divisions are exact over the integers.
pub fn char_poly(m: &IntegerMatrix) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(BigInt::one());
    if n == 0 {
        return Ok(coeffs);
    }
    let mut mk = m.clone();
    for k in 1..=n {
        let ck = -mk.trace() / BigInt::from(k);
        coeffs.push(ck.clone());
        if k < n {
            for i in 0..n {
                mk[(i, i)] += &ck;
            }
            mk = m.mul(&mk);
        }
    }
    Ok(coeffs)
}

/// True when the matrix is unimodular (integral with determinant +-1).
pub fn is_unimodular(m: &IntegerMatrix) -> bool {
    matches!(determinant(m), Ok(d) if d.abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_identity() {
        assert_eq!(
            determinant(&IntegerMatrix::identity(3)).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn determinant_walk_two() {
        // walk matrix of the single-arc graph on 2 vertices
        let m = IntegerMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(determinant(&m).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let m = IntegerMatrix::zeros(2, 3);
        assert!(matches!(determinant(&m), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn determinant_zero_dimensional() {
        assert_eq!(
            determinant(&IntegerMatrix::zeros(0, 0)).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn char_poly_zero_matrix() {
        let coeffs = char_poly(&IntegerMatrix::zeros(4, 4)).unwrap();
        let mut expect = vec![BigInt::zero(); 5];
        expect[0] = BigInt::one();
        assert_eq!(coeffs, expect);
    }

    #[test]
    fn char_poly_rotation() {
        let m = IntegerMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]);
        let coeffs = char_poly(&m).unwrap();
        assert_eq!(coeffs, vec![BigInt::one(), BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn rank_counts_pivots() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&IntegerMatrix::identity(5)), 5);
        assert_eq!(rank(&IntegerMatrix::zeros(3, 4)), 0);
    }

    #[test]
    fn mul_and_transpose() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, IntegerMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose()[(0, 1)], BigInt::from(3));
    }
}
