//! Trial-division factorization with an explicit unfactored remainder.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default trial-division bound used by audits.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// Partial factorization: the primes found by trial division up to the
/// requested bound, plus the remaining cofactor.
///
/// The reconstruction invariant is `product(p^e) * remainder == value`; the
/// remainder carries the sign and has no prime factor at or below the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub factors: Vec<(BigInt, u32)>,
    pub remainder: BigInt,
}

impl PrimeFactorization {
    pub fn reconstruct(&self) -> BigInt {
        let mut acc = self.remainder.clone();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        acc
    }
}

fn sieve_primes(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Factors `v` by trial division over all primes up to `bound`.
pub fn factorize(v: &BigInt, bound: u64) -> Result<PrimeFactorization> {
    if v.is_zero() {
        return Err(Error::ZeroValue);
    }
    let negative = v.is_negative();
    let mut work = v.abs();
    let mut factors = Vec::new();

    for p in sieve_primes(bound) {
        let pb = BigInt::from(p);
        if (&pb * &pb) > work {
            break;
        }
        let mut e = 0u32;
        while (&work % &pb).is_zero() {
            work /= &pb;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    }
    // The leftover is either 1 or has no divisor <= min(bound, sqrt); if it
    // is itself a prime within the bound, it belongs in the factor list.
    if !work.is_one() && work <= BigInt::from(bound) {
        factors.push((work.clone(), 1));
        work = BigInt::one();
    }

    let remainder = if negative { -work } else { work };
    Ok(PrimeFactorization { factors, remainder })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(v: i64, bound: u64) -> (Vec<(i64, u32)>, i64) {
        let f = factorize(&BigInt::from(v), bound).unwrap();
        (
            f.factors
                .iter()
                .map(|(p, e)| (i64::try_from(p).unwrap(), *e))
                .collect(),
            i64::try_from(&f.remainder).unwrap(),
        )
    }

    #[test]
    fn small_composite() {
        assert_eq!(small(18, 50), (vec![(2, 1), (3, 2)], 1));
    }

    #[test]
    fn unit_value() {
        assert_eq!(small(1, 50), (vec![], 1));
    }

    #[test]
    fn bound_below_smallest_factor() {
        assert_eq!(small(9, 2), (vec![], 9));
    }

    #[test]
    fn negative_sign_lives_in_remainder() {
        let (factors, rem) = small(-18, 50);
        assert_eq!(factors, vec![(2, 1), (3, 2)]);
        assert_eq!(rem, -1);
        let f = factorize(&BigInt::from(-18), 50).unwrap();
        assert_eq!(f.reconstruct(), BigInt::from(-18));
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(factorize(&BigInt::zero(), 10), Err(Error::ZeroValue));
    }

    #[test]
    fn large_prime_cofactor_survives() {
        // 2 * 1000003, with 1000003 prime and above the bound
        let v = BigInt::from(2000006i64);
        let f = factorize(&v, 1000).unwrap();
        assert_eq!(f.factors, vec![(BigInt::from(2), 1)]);
        assert_eq!(f.remainder, BigInt::from(1000003));
        assert_eq!(f.reconstruct(), v);
    }

    #[test]
    fn prime_just_inside_bound_is_listed() {
        let v = BigInt::from(997u32 * 997);
        let f = factorize(&v, 1000).unwrap();
        assert_eq!(f.factors, vec![(BigInt::from(997), 2)]);
        assert_eq!(f.remainder, BigInt::one());
    }
}
