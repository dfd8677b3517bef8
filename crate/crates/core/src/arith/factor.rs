//! Integer factorization: trial division for small inputs, Pollard-rho with
//! Brent's cycle detection for anything at or above [`TRIAL_DIVISION_LIMIT`].

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::primality::{primality, Primality};
use crate::error::{Error, Result};
use crate::scalar::{convert, Scalar};

/// Inputs below this bound are factored purely by trial division.
pub const TRIAL_DIVISION_LIMIT: u64 = 10_000_000;

/// Small primes stripped by trial division before Pollard-rho takes over.
const PRESIEVE_BOUND: u64 = 1_000;

/// Prime-power decomposition of a positive integer.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// factorization of 1 is empty. `certified` is false when some prime factor
/// above 2^64 was only accepted as a probable prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization<T> {
    value: T,
    factors: Vec<(T, u32)>,
    certified: bool,
}

impl<T: Scalar> Factorization<T> {
    pub fn one() -> Self {
        Factorization {
            value: T::one(),
            factors: Vec::new(),
            certified: true,
        }
    }

    /// Builds a factorization from known prime powers, in any order.
    ///
    /// Every base is checked for primality; repeated primes are merged.
    pub fn from_prime_powers(powers: impl IntoIterator<Item = (T, u32)>) -> Result<Self> {
        let mut factors: Vec<(T, u32)> = powers.into_iter().filter(|(_, a)| *a > 0).collect();
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(T, u32)> = Vec::with_capacity(factors.len());
        for (p, a) in factors {
            match merged.last_mut() {
                Some((q, b)) if *q == p => *b += a,
                _ => merged.push((p, a)),
            }
        }
        let mut certified = true;
        let mut value = T::one();
        for (p, a) in &merged {
            match primality(p) {
                Primality::Composite => {
                    return Err(Error::invalid(format!("{p} is not prime")));
                }
                Primality::ProbablePrime => certified = false,
                Primality::Prime => {}
            }
            value = value.try_mul(
                &p.try_pow(*a, "factorization value")?,
                "factorization value",
            )?;
        }
        Ok(Factorization {
            value,
            factors: merged,
            certified,
        })
    }

    pub fn value(&self) -> &T {
        &self.value
    }

    pub fn factors(&self) -> &[(T, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &T> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn smallest_prime(&self) -> Option<&T> {
        self.factors.first().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &T) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, a)| *a)
    }

    pub fn divides_by(&self, p: u64) -> bool {
        self.exponent_of(&T::from_small(p)) > 0
    }

    /// Re-multiplies the prime powers.
    pub fn product(&self) -> Result<T> {
        self.factors.iter().try_fold(T::one(), |acc, (p, a)| {
            acc.try_mul(&p.try_pow(*a, "product")?, "product")
        })
    }

    /// Each prime power `p^a` as a value.
    pub fn prime_powers(&self) -> Vec<T> {
        self.factors
            .iter()
            .map(|(p, a)| num_traits::pow(p.clone(), *a as usize))
            .collect()
    }

    /// Factorization of the product of two coprime-or-not factorizations.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut f =
            Self::from_prime_powers(self.factors.iter().chain(other.factors.iter()).cloned())?;
        f.certified = self.certified && other.certified;
        Ok(f)
    }

    pub fn convert<U: Scalar>(&self) -> Result<Factorization<U>> {
        Ok(Factorization {
            value: convert(&self.value)?,
            factors: self
                .factors
                .iter()
                .map(|(p, a)| Ok((convert(p)?, *a)))
                .collect::<Result<_>>()?,
            certified: self.certified,
        })
    }
}

impl<T: Scalar> fmt::Display for Factorization<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, a)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *a == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{a}")?;
            }
        }
        Ok(())
    }
}

/// Factors `n`; deterministic for every input.
pub fn factor<T: Scalar>(n: &T) -> Result<Factorization<T>> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    if let Some(v) = n.to_u64() {
        return factor_u64(v)?.convert();
    }
    let big = factor_big(&n.to_biguint())?;
    big.convert()
}

pub fn factor_u64(n: u64) -> Result<Factorization<u64>> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut primes = Vec::new();
    let mut rest = n;
    let bound = if n < TRIAL_DIVISION_LIMIT {
        u64::MAX
    } else {
        PRESIEVE_BOUND
    };
    strip(&mut rest, 2, &mut primes);
    let mut d = 3u64;
    while d <= bound && d.saturating_mul(d) <= rest {
        strip(&mut rest, d, &mut primes);
        d += 2;
    }
    if rest > 1 {
        if rest < d.saturating_mul(d) {
            primes.push(rest);
        } else {
            split_recursive(&rest, &mut primes);
        }
    }
    collect(primes, true)
}

fn strip(rest: &mut u64, d: u64, out: &mut Vec<u64>) {
    while *rest % d == 0 {
        *rest /= d;
        out.push(d);
    }
}

fn factor_big(n: &BigUint) -> Result<Factorization<BigUint>> {
    let mut primes = Vec::new();
    let mut rest = n.clone();
    for d in std::iter::once(2u64).chain((3..PRESIEVE_BOUND).step_by(2)) {
        let bd = BigUint::from(d);
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            primes.push(bd.clone());
        }
    }
    if !rest.is_one() {
        split_recursive(&rest, &mut primes);
    }
    let certified = primes.iter().all(|p| primality(p) == Primality::Prime);
    collect(primes, certified)
}

fn collect<T: Scalar>(mut primes: Vec<T>, certified: bool) -> Result<Factorization<T>> {
    primes.sort();
    let mut factors: Vec<(T, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, a)) if *q == p => *a += 1,
            _ => factors.push((p, 1)),
        }
    }
    let f = Factorization {
        value: T::one(),
        factors,
        certified,
    };
    let value = f.product()?;
    Ok(Factorization { value, ..f })
}

/// Splits `n > 1` (free of tiny factors) into primes, appending to `out`.
fn split_recursive<T: Scalar>(n: &T, out: &mut Vec<T>) {
    if n.is_one() {
        return;
    }
    if primality(n).is_prime() {
        out.push(n.clone());
        return;
    }
    if let Some((root, k)) = perfect_power(n) {
        let mut inner = Vec::new();
        split_recursive(&root, &mut inner);
        for _ in 0..k {
            out.extend(inner.iter().cloned());
        }
        return;
    }
    let d = (1u64..)
        .find_map(|c| pollard_brent(n, &T::from_small(c)))
        .expect("rho finds a factor of a composite for some increment");
    split_recursive(&d, out);
    split_recursive(&(n.clone() / d), out);
}

/// Returns `(r, k)` with `r^k = n` and `k ≥ 2` maximal among prime exponents tried.
pub fn perfect_power<T: Scalar>(n: &T) -> Option<(T, u32)> {
    let bits = n.bit_len() as u32;
    (2..=bits.max(2)).find_map(|k| {
        let r = n.nth_root(k);
        if r > T::one() && num_traits::pow(r.clone(), k as usize) == *n {
            Some((r, k))
        } else {
            None
        }
    })
}

/// One Brent-rho attempt with `x -> x^2 + c`; returns a proper divisor or `None`.
pub fn pollard_brent<T: Scalar>(n: &T, c: &T) -> Option<T> {
    if n.is_even() {
        return Some(T::from_small(2));
    }
    const BATCH: u64 = 128;
    let f = |x: &T| (x.mul_mod(x, n) + c.clone()) % n.clone();
    let dist = |a: &T, b: &T| {
        if a > b {
            a.clone() - b.clone()
        } else {
            b.clone() - a.clone()
        }
    };

    let mut y = T::from_small(2) % n.clone();
    let mut r: u64 = 1;
    let mut q = T::one();
    let mut g = T::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                q = q.mul_mod(&dist(&x, &y), n);
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = dist(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g == *n {
        None
    } else {
        Some(g)
    }
}
