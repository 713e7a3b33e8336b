//! Möbius function and the Witt necklace formula over exact integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::error::{Error, Result};

/// The Möbius function: 0 if a square divides `k`, otherwise
/// `(-1)^(number of prime factors)`.
pub fn mobius(k: u64) -> Result<i8> {
    if k == 0 {
        return Err(Error::invalid("mobius argument must be >= 1"));
    }
    let mut k = k;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= k {
        if k.is_multiple_of(p) {
            k /= p;
            if k.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Number of basic commutators of weight `n` on `d` generators,
/// `(1/n) * sum_{k | n} mu(k) d^(n/k)`.
///
/// Panics if `n == 0`.
pub fn witt(n: u32, d: &BigUint) -> BigUint {
    assert!(n >= 1, "witt weight must be >= 1");
    let base = BigInt::from(d.clone());
    let mut sum = BigInt::zero();
    for k in (1..=n).filter(|k| n.is_multiple_of(*k)) {
        match mobius(u64::from(k)).expect("k >= 1") {
            0 => {}
            mu => {
                let term: BigInt = Pow::pow(&base, n / k);
                if mu > 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(n));
    assert!(r.is_zero(), "witt sum not divisible by weight");
    match q.into_parts() {
        (Sign::Minus, _) => unreachable!("witt count is nonnegative"),
        (_, mag) => mag,
    }
}

pub fn witt_u64(n: u32, d: u64) -> BigUint {
    witt(n, &BigUint::from(d))
}

/// `sum_{i=lo}^{hi} witt(i, m)`; an empty range sums to zero.
pub fn witt_range_sum(m: u64, lo: u32, hi: u32) -> BigUint {
    (lo.max(1)..=hi).map(|i| witt_u64(i, m)).sum()
}
