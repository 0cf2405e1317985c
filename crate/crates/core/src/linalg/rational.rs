//! Exact rational matrices and linear solves.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntegerMatrix;
use crate::error::{Error, Result};

/// Dense matrix of exact rationals; entries are kept in lowest terms with
/// positive denominators by the underlying `BigRational` representation.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> BigRational,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_integer(m: &IntegerMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| {
            BigRational::from_integer(m[(i, j)].clone())
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

    /// Multiplies by the integer `k`; the result must be integral, otherwise
    /// returns None. Used to pass scaled orthogonal matrices to integer code.
    pub fn scale_to_integer(&self, k: &BigInt) -> Option<IntegerMatrix> {
        let mut out = IntegerMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let scaled = &self[(i, j)] * BigRational::from_integer(k.clone());
                if !scaled.is_integer() {
                    return None;
                }
                out[(i, j)] = scaled.to_integer();
            }
        }
        Some(out)
    }

    /// Interprets the matrix as a 0/1 permutation matrix, if it is one:
    /// exactly one 1 per row and per column, all other entries 0. Returns the
    /// image vector `images[i] = j` for the 1 in row i.
    pub fn as_permutation_images(&self) -> Option<Vec<usize>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut images = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        for i in 0..n {
            for j in 0..n {
                let x = &self[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if !x.is_one() || images[i] != usize::MAX || seen[j] {
                    return None;
                }
                images[i] = j;
                seen[j] = true;
            }
            if images[i] == usize::MAX {
                return None;
            }
        }
        Some(images)
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                let x = &self[(i, j)];
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())?;
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f)?;
        fmt::Display::fmt(self, f)
    }
}

/// Solves a X = b exactly over the rationals. `a` must be square and
/// nonsingular.
pub fn solve_rational(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<RationalMatrix> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "lhs is {0}x{0} but rhs has {1} rows",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.rows();
    let bc = b.cols();

    // Gaussian elimination on the augmented system [a | b].
    let mut work = RationalMatrix::from_fn(n, n + bc, |i, j| {
        if j < n {
            BigRational::from_integer(a[(i, j)].clone())
        } else {
            BigRational::from_integer(b[(i, j - n)].clone())
        }
    });

    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !work[(i, c)].is_zero()) else {
            return Err(Error::SingularMatrix);
        };
        if pr != c {
            for j in 0..n + bc {
                let (x, y) = (work[(c, j)].clone(), work[(pr, j)].clone());
                work[(c, j)] = y;
                work[(pr, j)] = x;
            }
        }
        let inv = work[(c, c)].recip();
        for j in c..n + bc {
            let scaled = &work[(c, j)] * &inv;
            work[(c, j)] = scaled;
        }
        for i in 0..n {
            if i != c && !work[(i, c)].is_zero() {
                let f = work[(i, c)].clone();
                for j in c..n + bc {
                    let t = &f * &work[(c, j)];
                    work[(i, j)] -= t;
                }
            }
        }
    }

    Ok(RationalMatrix::from_fn(n, bc, |i, j| {
        work[(i, j + n)].clone()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let b = IntegerMatrix::from_rows(&[vec![3, 1], vec![-2, 5]]);
        let x = solve_rational(&IntegerMatrix::identity(2), &b).unwrap();
        assert_eq!(x, RationalMatrix::from_integer(&b));
    }

    #[test]
    fn two_by_two_inverse() {
        let a = IntegerMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        let x = solve_rational(&a, &IntegerMatrix::identity(2)).unwrap();
        assert_eq!(x[(0, 0)], rat(1, 2));
        assert_eq!(x[(0, 1)], rat(1, 2));
        assert_eq!(x[(1, 0)], rat(1, 2));
        assert_eq!(x[(1, 1)], rat(-1, 2));
    }

    #[test]
    fn singular_is_an_error() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(
            solve_rational(&a, &IntegerMatrix::identity(2)),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn solution_satisfies_system() {
        let a = IntegerMatrix::from_rows(&[vec![2, 1, 0], vec![1, 3, -1], vec![0, 4, 5]]);
        let b = IntegerMatrix::from_rows(&[vec![1, 0], vec![0, 2], vec![7, -3]]);
        let x = solve_rational(&a, &b).unwrap();
        let ax = RationalMatrix::from_integer(&a).mul(&x);
        assert_eq!(ax, RationalMatrix::from_integer(&b));
    }

    #[test]
    fn permutation_recognition() {
        let p = RationalMatrix::from_fn(3, 3, |i, j| {
            if (i + 1) % 3 == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        assert_eq!(p.as_permutation_images(), Some(vec![1, 2, 0]));
        let half = RationalMatrix::from_fn(2, 2, |_, _| rat(1, 2));
        assert_eq!(half.as_permutation_images(), None);
    }
}
