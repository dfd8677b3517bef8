//! Segmented sieving over `u64` ranges.
//!
//! A [`SegmentSieve`] holds the base primes up to `sqrt(hi)` and fills
//! per-segment tables (totients, full factorizations) without per-number
//! trial division.

/// Sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// At most 15 distinct primes divide a `u64`.
pub const MAX_OMEGA: usize = 15;

/// Prime-power list of one sieved number.
#[derive(Debug, Clone, Copy, Default)]
pub struct SmallFactors {
    len: u8,
    items: [(u64, u32); MAX_OMEGA],
}

impl SmallFactors {
    fn push(&mut self, p: u64, a: u32) {
        self.items[self.len as usize] = (p, a);
        self.len += 1;
    }

    pub fn as_slice(&self) -> &[(u64, u32)] {
        &self.items[..self.len as usize]
    }
}

#[derive(Debug, Clone)]
pub struct SegmentSieve {
    hi: u64,
    primes: Vec<u64>,
}

impl SegmentSieve {
    /// Prepares base primes for segments lying inside `[1, hi]`.
    pub fn new(hi: u64) -> Self {
        SegmentSieve {
            hi,
            primes: primes_up_to(hi.isqrt() + 1),
        }
    }

    pub fn limit(&self) -> u64 {
        self.hi
    }

    fn check(&self, lo: u64, hi: u64) {
        assert!(
            1 <= lo && lo <= hi && hi <= self.hi,
            "segment [{lo}, {hi}] outside sieve range"
        );
    }

    /// `φ(n)` for every `n` in `[lo, hi]`.
    pub fn totients(&self, lo: u64, hi: u64) -> Vec<u64> {
        self.check(lo, hi);
        let len = (hi - lo + 1) as usize;
        let mut rest: Vec<u64> = (lo..=hi).collect();
        let mut phi = rest.clone();
        for &p in &self.primes {
            if p * p > hi {
                break;
            }
            let mut m = lo.div_ceil(p) * p;
            while m <= hi {
                let i = (m - lo) as usize;
                phi[i] = phi[i] / p * (p - 1);
                while rest[i] % p == 0 {
                    rest[i] /= p;
                }
                m += p;
            }
        }
        for i in 0..len {
            let r = rest[i];
            if r > 1 {
                phi[i] = phi[i] / r * (r - 1);
            }
        }
        phi
    }

    /// Full factorization of every `n` in `[lo, hi]`, primes ascending.
    pub fn factorizations(&self, lo: u64, hi: u64) -> Vec<SmallFactors> {
        self.check(lo, hi);
        let len = (hi - lo + 1) as usize;
        let mut rest: Vec<u64> = (lo..=hi).collect();
        let mut out = vec![SmallFactors::default(); len];
        for &p in &self.primes {
            if p * p > hi {
                break;
            }
            let mut m = lo.div_ceil(p) * p;
            while m <= hi {
                let i = (m - lo) as usize;
                let mut a = 0;
                while rest[i] % p == 0 {
                    rest[i] /= p;
                    a += 1;
                }
                out[i].push(p, a);
                m += p;
            }
        }
        for i in 0..len {
            if rest[i] > 1 {
                out[i].push(rest[i], 1);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{euler_phi, factor_u64};

    #[test]
    fn small_primes() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn totients_match_factorization() {
        let sieve = SegmentSieve::new(200_000);
        for (lo, hi) in [(1, 1000), (99_000, 100_500), (199_990, 200_000)] {
            let phis = sieve.totients(lo, hi);
            for (n, phi) in (lo..=hi).zip(phis) {
                assert_eq!(phi, euler_phi(&factor_u64(n).unwrap()), "n = {n}");
            }
        }
    }

    #[test]
    fn factorizations_match() {
        let sieve = SegmentSieve::new(50_000);
        let fs = sieve.factorizations(40_000, 50_000);
        for (n, f) in (40_000..=50_000u64).zip(fs) {
            assert_eq!(f.as_slice(), factor_u64(n).unwrap().factors(), "n = {n}");
        }
    }
}
