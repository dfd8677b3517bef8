//! Miller-Rabin primality testing.
//!
//! Below 2^64 the first twelve prime bases form a deterministic witness set.
//! Above that the same bases are followed by 64 pseudo-random rounds, which
//! bounds the error probability by 4^-64 = 2^-128, and the answer is tagged
//! [`Primality::ProbablePrime`].

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::scalar::Scalar;

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const RANDOM_ROUNDS: usize = 64;
const RNG_SEED: u64 = 0x4c65_686d_6572;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Primality {
    Composite,
    Prime,
    /// Passed every round but lies above the deterministic range.
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

pub fn is_prime<T: Scalar>(n: &T) -> bool {
    primality(n).is_prime()
}

pub fn primality<T: Scalar>(n: &T) -> Primality {
    match n.to_u64() {
        Some(v) => {
            if is_prime_u64(v) {
                Primality::Prime
            } else {
                Primality::Composite
            }
        }
        None => primality_big(&n.to_biguint()),
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let (d, s) = split_odd(n - 1);
    WITNESSES
        .iter()
        .all(|&a| strong_probable_prime_u64(n, a, d, s))
}

fn split_odd(mut d: u64) -> (u64, u32) {
    let s = d.trailing_zeros();
    d >>= s;
    (d, s)
}

fn strong_probable_prime_u64(n: u64, a: u64, d: u64, s: u32) -> bool {
    let mut x = a.pow_mod(&d, &n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = x.mul_mod(&x, &n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

fn primality_big(n: &BigUint) -> Primality {
    for &p in &WITNESSES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    let spp = |a: &BigUint| {
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                return true;
            }
        }
        false
    };
    if !WITNESSES.iter().all(|&a| spp(&BigUint::from(a))) {
        return Primality::Composite;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let lo = BigUint::from(2u8);
    for _ in 0..RANDOM_ROUNDS {
        let a = rng.gen_biguint_range(&lo, &n_minus_1);
        if !spp(&a) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn spec_examples() {
        assert!(is_prime(&2u64));
        assert!(!is_prime(&561u64));
        assert!(is_prime(&7919u64));
        assert!(!is_prime(&0u64));
        assert!(!is_prime(&1u64));
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // strong pseudoprimes to several small bases
        for n in [
            2047u64,
            1373653,
            25326001,
            3215031751,
            2152302898747,
            3474749660383,
            341550071728321,
            3825123056546413051,
        ] {
            assert!(!is_prime_u64(n), "{n}");
        }
        assert!(is_prime_u64(18446744073709551557)); // largest prime below 2^64
    }

    #[test]
    fn large_values_are_flagged_probabilistic() {
        let m127 = (BigUint::one() << 127u32) - BigUint::one();
        assert_eq!(primality(&m127), Primality::ProbablePrime);
        let composite = &m127 * BigUint::from(3u8);
        assert_eq!(primality(&composite), Primality::Composite);
        let p64 = BigUint::from(18446744073709551557u64);
        assert_eq!(primality(&(&p64 * &p64)), Primality::Composite);
        assert_eq!(primality(&u128::MAX), Primality::Composite);
        assert_eq!(primality(&((1u128 << 89) - 1)), Primality::ProbablePrime);
    }
}
