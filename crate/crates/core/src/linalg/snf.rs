//! Smith normal form over the integers with unimodular transformation witnesses.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

/// Result of diagonalizing an integer matrix M as U * diag(d) * V with
/// unimodular U, V and d_1 | d_2 | ... | d_r.
///
/// `d` holds the nonzero invariant factors only (`rank` of them, all
/// positive); trailing diagonal entries of the Smith form are zero.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: Vec<BigInt>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The full diagonal of the Smith form, padded with zeros up to
    /// min(rows, cols).
    pub fn full_diagonal(&self) -> Vec<BigInt> {
        let len = self.u.rows().min(self.v.cols());
        let mut diag = self.d.clone();
        diag.resize(len, BigInt::zero());
        diag
    }

    /// diag(d) embedded in the original rows x cols shape.
    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.u.rows(), self.v.cols());
        for (i, di) in self.d.iter().enumerate() {
            m[(i, i)] = di.clone();
        }
        m
    }

    /// U * diag(d) * V; equals the decomposed matrix exactly.
    pub fn reconstruct(&self) -> IntegerMatrix {
        self.u.mul(&self.diagonal_matrix()).mul(&self.v)
    }
}

/// Tracks B together with unimodular U, V such that M = U * B * V holds
/// after every elementary operation applied to B.
struct SnfWork {
    b: IntegerMatrix,
    u: IntegerMatrix,
    v: IntegerMatrix,
}

impl SnfWork {
    fn swap_rows(&mut self, a: usize, c: usize) {
        if a == c {
            return;
        }
        for j in 0..self.b.cols() {
            let (x, y) = (self.b[(a, j)].clone(), self.b[(c, j)].clone());
            self.b[(a, j)] = y;
            self.b[(c, j)] = x;
        }
        for i in 0..self.u.rows() {
            let (x, y) = (self.u[(i, a)].clone(), self.u[(i, c)].clone());
            self.u[(i, a)] = y;
            self.u[(i, c)] = x;
        }
    }

    fn swap_cols(&mut self, a: usize, c: usize) {
        if a == c {
            return;
        }
        for i in 0..self.b.rows() {
            let (x, y) = (self.b[(i, a)].clone(), self.b[(i, c)].clone());
            self.b[(i, a)] = y;
            self.b[(i, c)] = x;
        }
        for j in 0..self.v.cols() {
            let (x, y) = (self.v[(a, j)].clone(), self.v[(c, j)].clone());
            self.v[(a, j)] = y;
            self.v[(c, j)] = x;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.b.cols() {
            let x = -self.b[(r, j)].clone();
            self.b[(r, j)] = x;
        }
        for i in 0..self.u.rows() {
            let x = -self.u[(i, r)].clone();
            self.u[(i, r)] = x;
        }
    }

    /// row[i] -= q * row[k] on B; U gets the inverse column operation.
    fn add_row_multiple(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.b.cols() {
            let delta = q * &self.b[(k, j)];
            self.b[(i, j)] -= delta;
        }
        for r in 0..self.u.rows() {
            let delta = q * &self.u[(r, i)];
            self.u[(r, k)] += delta;
        }
    }

    /// col[j] -= q * col[k] on B; V gets the inverse row operation.
    fn add_col_multiple(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.b.rows() {
            let delta = q * &self.b[(i, k)];
            self.b[(i, j)] -= delta;
        }
        for c in 0..self.v.cols() {
            let delta = q * &self.v[(j, c)];
            self.v[(k, c)] += delta;
        }
    }

    /// Smallest-absolute-value nonzero entry of B[k.., k..].
    fn min_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.b.rows() {
            for j in k..self.b.cols() {
                let x = &self.b[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(pos) if self.b[pos].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

/// Smith normal form by pivoting on a minimal-absolute-value entry, with
/// full row/column reduction and a divisibility pass, tracking U and V.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = SnfWork {
        b: m.clone(),
        u: IntegerMatrix::identity(rows),
        v: IntegerMatrix::identity(cols),
    };

    let steps = rows.min(cols);
    for k in 0..steps {
        // the loop ends when B[k.., k..] is zero or the pivot cleanly
        // divides everything that remains
        'pivot: while let Some((pi, pj)) = w.min_pivot(k) {
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            if w.b[(k, k)].is_negative() {
                w.negate_row(k);
            }

            // Reduce column k below the pivot and row k to its right.
            let mut clean = true;
            for i in k + 1..rows {
                let q = &w.b[(i, k)] / &w.b[(k, k)];
                w.add_row_multiple(i, k, &q);
                if !w.b[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                let q = &w.b[(k, j)] / &w.b[(k, k)];
                w.add_col_multiple(j, k, &q);
                if !w.b[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot; // a smaller pivot now exists
            }

            // Pivot must divide the whole remaining submatrix.
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&w.b[(i, j)] % &w.b[(k, k)]).is_zero() {
                        let one = BigInt::from(-1);
                        w.add_row_multiple(k, i, &one); // row k += row i
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }

    let mut d = Vec::new();
    for k in 0..steps {
        if w.b[(k, k)].is_zero() {
            break;
        }
        d.push(w.b[(k, k)].clone());
    }
    let rank = d.len();
    SmithDecomposition {
        d,
        u: w.u,
        v: w.v,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{determinant, is_unimodular};

    fn factors(m: &IntegerMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .d
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn coprime_diagonal_merges() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(factors(&m), vec![1, 6]);
    }

    #[test]
    fn walk_two_vertex() {
        let m = IntegerMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(factors(&m), vec![1, 2]);
    }

    #[test]
    fn witnesses_reconstruct() {
        let m = IntegerMatrix::from_rows(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.reconstruct(), m);
        assert!(is_unimodular(&snf.u));
        assert!(is_unimodular(&snf.v));
        assert_eq!(
            snf.d,
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(21)]
        );
        assert_eq!(snf.rank, 3);
        assert_eq!(snf.full_diagonal().last().unwrap(), &BigInt::zero());
    }

    #[test]
    fn rectangular_input() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.reconstruct(), m);
        assert_eq!(snf.d, vec![BigInt::from(2), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix_has_empty_factors() {
        let snf = smith_normal_form(&IntegerMatrix::zeros(3, 3));
        assert!(snf.d.is_empty());
        assert_eq!(snf.rank, 0);
        assert_eq!(snf.full_diagonal(), vec![BigInt::zero(); 3]);
    }

    #[test]
    fn nonsingular_product_matches_determinant() {
        let m = IntegerMatrix::from_rows(&[vec![3, 1, 2], vec![0, 4, 1], vec![5, 2, 2]]);
        let snf = smith_normal_form(&m);
        let prod: BigInt = snf.d.iter().product();
        assert_eq!(prod, determinant(&m).unwrap().abs());
    }
}
