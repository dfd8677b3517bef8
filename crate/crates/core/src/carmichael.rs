//! Carmichael certification by Korselt's criterion, a brute-force Fermat
//! oracle kept independent of it, and sieve-backed range enumeration.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::sieve::SegmentSieve;
use crate::arith::{factor, is_prime_u64, is_squarefree, Factorization};
use crate::error::{Error, Result};
use crate::scalar::{serde_scalar, Scalar};

/// Upper bound accepted by [`fermat_oracle`].
pub const FERMAT_ORACLE_LIMIT: u64 = 1_000_000;

/// Segment length used by [`carmichael_in_range`].
pub const DEFAULT_SEGMENT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarmichaelCertificate<T: Scalar> {
    #[serde(serialize_with = "serde_scalar::serialize")]
    pub n: T,
    pub is_carmichael: bool,
    pub composite: bool,
    pub squarefree: bool,
    /// Every prime `p | n` with `(p - 1) ∤ (n - 1)`.
    #[serde(serialize_with = "serde_scalar::seq")]
    pub korselt_failures: Vec<T>,
}

pub fn korselt_check<T: Scalar>(n: &T) -> Result<CarmichaelCertificate<T>> {
    if *n <= T::one() {
        return Err(Error::invalid(format!(
            "Korselt check needs n >= 2, got {n}"
        )));
    }
    Ok(korselt_from_factorization(&factor(n)?))
}

/// Korselt's criterion on a known factorization of `n >= 2`.
pub fn korselt_from_factorization<T: Scalar>(f: &Factorization<T>) -> CarmichaelCertificate<T> {
    let n = f.value().clone();
    let n_minus_1 = n.clone() - T::one();
    let composite = !(f.omega() == 1 && f.factors()[0].1 == 1);
    let squarefree = is_squarefree(f);
    let korselt_failures: Vec<T> = f
        .primes()
        .filter(|p| !(n_minus_1.clone() % ((*p).clone() - T::one())).is_zero())
        .cloned()
        .collect();
    let is_carmichael = composite && squarefree && korselt_failures.is_empty();
    debug_assert!(!is_carmichael || n.is_odd());
    CarmichaelCertificate {
        n,
        is_carmichael,
        composite,
        squarefree,
        korselt_failures,
    }
}

/// Tests `b^n ≡ b (mod n)` for every residue `b`; composite `n` up to
/// [`FERMAT_ORACLE_LIMIT`] only.
pub fn fermat_oracle(n: u64) -> Result<bool> {
    if !(2..=FERMAT_ORACLE_LIMIT).contains(&n) {
        return Err(Error::invalid(format!(
            "Fermat oracle accepts 2 <= n <= {FERMAT_ORACLE_LIMIT}, got {n}"
        )));
    }
    if is_prime_u64(n) {
        return Err(Error::invalid(format!(
            "Fermat oracle needs a composite, {n} is prime"
        )));
    }
    Ok((0..n).all(|b| pow_mod_small(b, n, n) == b))
}

fn pow_mod_small(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// All Carmichael numbers in `[lo, hi]`, ascending.
pub fn carmichael_in_range(lo: u64, hi: u64) -> Result<Vec<u64>> {
    carmichael_in_range_with(lo, hi, DEFAULT_SEGMENT)
}

/// As [`carmichael_in_range`], with an explicit segment length; segments are
/// processed in parallel and the result does not depend on the partition.
pub fn carmichael_in_range_with(lo: u64, hi: u64, segment: u64) -> Result<Vec<u64>> {
    if lo < 2 || lo > hi {
        return Err(Error::invalid(format!(
            "invalid range [{lo}, {hi}]; need 2 <= lo <= hi"
        )));
    }
    let segment = segment.max(1);
    let sieve = SegmentSieve::new(hi);
    let starts: Vec<u64> = (0..=(hi - lo) / segment)
        .map(|i| lo + i * segment)
        .collect();
    let mut found: Vec<u64> = starts
        .into_par_iter()
        .flat_map_iter(|start| {
            let end = start.saturating_add(segment - 1).min(hi);
            scan_segment(&sieve, start, end)
        })
        .collect();
    found.sort_unstable();
    Ok(found)
}

fn scan_segment(sieve: &SegmentSieve, lo: u64, hi: u64) -> Vec<u64> {
    let factors = sieve.factorizations(lo, hi);
    (lo..=hi)
        .zip(factors)
        .filter(|(n, f)| {
            let f = f.as_slice();
            n % 2 == 1 && f.len() >= 2 && f.iter().all(|&(p, a)| a == 1 && (n - 1) % (p - 1) == 0)
        })
        .map(|(n, _)| n)
        .collect()
}

/// Count of Carmichael numbers up to `bound`.
pub fn carmichael_count(bound: u64) -> Result<usize> {
    if bound < 2 {
        return Ok(0);
    }
    Ok(carmichael_in_range(2, bound)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let c = korselt_check(&561u64).unwrap();
        assert!(c.is_carmichael && c.composite && c.squarefree);
        assert!(fermat_oracle(561).unwrap());

        let c = korselt_check(&9u64).unwrap();
        assert!(!c.is_carmichael && !c.squarefree);

        let c = korselt_check(&15u64).unwrap();
        assert!(!c.is_carmichael);
        assert_eq!(c.korselt_failures, vec![5]);

        assert!(!fermat_oracle(4).unwrap());
        assert!(fermat_oracle(1105).unwrap());
    }

    #[test]
    fn rejected_inputs() {
        assert!(korselt_check(&1u64).is_err());
        assert!(korselt_check(&0u64).is_err());
        assert!(fermat_oracle(7).is_err());
        assert!(fermat_oracle(1).is_err());
        assert!(fermat_oracle(FERMAT_ORACLE_LIMIT + 1).is_err());
        assert!(carmichael_in_range(500, 2).is_err());
        assert!(carmichael_in_range(1, 10).is_err());
    }

    #[test]
    fn primes_are_not_carmichael() {
        let c = korselt_check(&7919u64).unwrap();
        assert!(!c.composite && !c.is_carmichael && c.korselt_failures.is_empty());
    }

    #[test]
    fn all_failures_listed() {
        // 3 * 5 * 13: 4 ∤ 194 and 12 ∤ 194
        let c = korselt_check(&195u64).unwrap();
        assert_eq!(c.korselt_failures, vec![5, 13]);
    }

    #[test]
    fn range_examples() {
        assert_eq!(carmichael_in_range(2, 2000).unwrap(), vec![561, 1105, 1729]);
        assert!(carmichael_in_range(2, 500).unwrap().is_empty());
        assert_eq!(carmichael_in_range(561, 561).unwrap(), vec![561]);
    }

    #[test]
    fn partition_independent() {
        let a = carmichael_in_range_with(2, 300_000, 1 << 16).unwrap();
        let b = carmichael_in_range_with(2, 300_000, 7_777).unwrap();
        let c = carmichael_in_range_with(2, 300_000, 300_000).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn big_scalar_certificate() {
        // 2821 = 7 * 13 * 31, checked through the arbitrary-precision path
        let n = num_bigint::BigUint::from(2821u32);
        assert!(korselt_check(&n).unwrap().is_carmichael);
    }
}
