//! Linear algebra over the prime field F_p: rank and right kernel by exact
//! Gaussian elimination, plus deterministic u64 primality testing.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::IntegerMatrix;
use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for u64 (the 12-base certificate set).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Arithmetic in F_p with elements stored as u64 in [0, p).
#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverse of zero");
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn reduce(&self, x: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((x % &p) + &p) % &p;
        r.to_u64().expect("residue fits u64")
    }
}

fn reduce_matrix(m: &IntegerMatrix, field: Fp) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| field.reduce(&m[(i, j)])).collect())
        .collect()
}

/// Row-reduces `a` in place to reduced row echelon form; returns the pivot
/// column of each nonzero row.
#[allow(clippy::needless_range_loop)] // index form keeps the elimination readable
fn rref(a: &mut [Vec<u64>], cols: usize, field: Fp) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = field.inv(a[r][c]);
        for j in c..cols {
            a[r][j] = field.mul(a[r][j], inv);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in c..cols {
                    let t = field.mul(f, a[r][j]);
                    a[i][j] = field.sub(a[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of `m` over F_p by exact field elimination.
pub fn rank_mod_p(m: &IntegerMatrix, p: u64) -> Result<usize> {
    let field = Fp::new(p)?;
    let mut a = reduce_matrix(m, field);
    Ok(rref(&mut a, m.cols(), field).len())
}

/// Basis of the right null space { v : m v = 0 } over F_p. Each basis vector
/// is normalized so its first nonzero coordinate is 1; vectors are ordered by
/// their free column, ascending.
pub fn kernel_mod_p(m: &IntegerMatrix, p: u64) -> Result<Vec<Vec<u64>>> {
    let field = Fp::new(p)?;
    let cols = m.cols();
    let mut a = reduce_matrix(m, field);
    let pivots = rref(&mut a, cols, field);

    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.sub(0, a[row][free]);
        }
        // normalize: first nonzero coordinate becomes 1
        if let Some(&lead) = v.iter().find(|&&x| x != 0) {
            if lead != 1 {
                let inv = field.inv(lead);
                for x in v.iter_mut() {
                    *x = field.mul(*x, inv);
                }
            }
        }
        basis.push(v);
    }
    Ok(basis)
}
