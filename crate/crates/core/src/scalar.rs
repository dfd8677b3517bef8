//! The integer scalar abstraction shared by the arithmetic and group modules.
//!
//! Everything that only needs ring operations, gcd/lcm and comparisons is
//! written against [`Scalar`], so the same code runs on machine words for
//! range work and on [`BigUint`] when the inputs are astronomically large.
//! Overflow on fixed-width types is reported through the checked operations,
//! never wrapped.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive, Unsigned};

use crate::error::{Error, Result};

pub trait Scalar:
    Integer
    + Unsigned
    + Roots
    + CheckedAdd
    + CheckedMul
    + CheckedSub
    + FromPrimitive
    + ToPrimitive
    + Clone
    + Debug
    + Display
    + Hash
    + Send
    + Sync
    + 'static
{
    /// `self * rhs mod m` without intermediate overflow.
    fn mul_mod(&self, rhs: &Self, m: &Self) -> Self;

    fn to_biguint(&self) -> BigUint;

    fn from_biguint(v: &BigUint) -> Option<Self>;

    fn bit_len(&self) -> u64;

    fn from_small(v: u64) -> Self {
        Self::from_u64(v).expect("every scalar type holds u64 values")
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(self.to_biguint())
    }

    fn pow_mod(&self, exp: &Self, m: &Self) -> Self {
        let two = Self::from_small(2);
        let mut result = Self::one() % m.clone();
        let mut base = self.clone() % m.clone();
        let mut e = exp.clone();
        while !e.is_zero() {
            if e.is_odd() {
                result = result.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e = e / two.clone();
        }
        result
    }

    fn try_mul(&self, rhs: &Self, what: &'static str) -> Result<Self> {
        self.checked_mul(rhs).ok_or(Error::Overflow(what))
    }

    fn try_add(&self, rhs: &Self, what: &'static str) -> Result<Self> {
        self.checked_add(rhs).ok_or(Error::Overflow(what))
    }

    fn try_pow(&self, exp: u32, what: &'static str) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.try_mul(self, what)?;
        }
        Ok(acc)
    }
}

impl Scalar for u32 {
    fn mul_mod(&self, rhs: &Self, m: &Self) -> Self {
        ((*self as u64 * *rhs as u64) % *m as u64) as u32
    }
    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
    fn from_biguint(v: &BigUint) -> Option<Self> {
        v.to_u32()
    }
    fn bit_len(&self) -> u64 {
        (32 - self.leading_zeros()) as u64
    }
}

impl Scalar for u64 {
    fn mul_mod(&self, rhs: &Self, m: &Self) -> Self {
        ((*self as u128 * *rhs as u128) % *m as u128) as u64
    }
    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
    fn from_biguint(v: &BigUint) -> Option<Self> {
        v.to_u64()
    }
    fn bit_len(&self) -> u64 {
        (64 - self.leading_zeros()) as u64
    }
}

impl Scalar for u128 {
    fn mul_mod(&self, rhs: &Self, m: &Self) -> Self {
        let (a, b, m) = (*self % *m, *rhs % *m, *m);
        if let Some(p) = a.checked_mul(b) {
            return p % m;
        }
        // double-and-add; partial sums stay below 2m, which fits when m < 2^127
        if m < (1u128 << 127) {
            let (mut acc, mut x, mut y) = (0u128, a, b);
            while y > 0 {
                if y & 1 == 1 {
                    acc = (acc + x) % m;
                }
                x = (x << 1) % m;
                y >>= 1;
            }
            return acc;
        }
        let p = (BigUint::from(a) * BigUint::from(b)) % BigUint::from(m);
        p.to_u128().expect("residue is below the modulus")
    }
    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
    fn from_biguint(v: &BigUint) -> Option<Self> {
        v.to_u128()
    }
    fn bit_len(&self) -> u64 {
        (128 - self.leading_zeros()) as u64
    }
}

impl Scalar for BigUint {
    fn mul_mod(&self, rhs: &Self, m: &Self) -> Self {
        (self * rhs) % m
    }
    fn to_biguint(&self) -> BigUint {
        self.clone()
    }
    fn from_biguint(v: &BigUint) -> Option<Self> {
        Some(v.clone())
    }
    fn bit_len(&self) -> u64 {
        self.bits()
    }
    fn pow_mod(&self, exp: &Self, m: &Self) -> Self {
        self.modpow(exp, m)
    }
}

/// Converts between scalar types, failing when the value does not fit.
pub fn convert<A: Scalar, B: Scalar>(v: &A) -> Result<B> {
    if let Some(x) = v.to_u64() {
        return Ok(B::from_small(x));
    }
    B::from_biguint(&v.to_biguint()).ok_or(Error::Overflow("scalar conversion"))
}

/// Serde helpers writing scalars as JSON numbers when they fit in a `u64`
/// and as decimal strings otherwise.
pub mod serde_scalar {
    use serde::Serializer;

    use super::Scalar;

    pub fn serialize<T: Scalar, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        match v.to_u64() {
            Some(x) => s.serialize_u64(x),
            None => s.collect_str(v),
        }
    }

    pub fn option<T: Scalar, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn seq<T: Scalar, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| Wrapped(x)))
    }

    struct Wrapped<'a, T>(&'a T);

    impl<T: Scalar> serde::Serialize for Wrapped<'_, T> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize(self.0, s)
        }
    }
}
