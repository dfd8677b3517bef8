//! Exact rationals over arbitrary-precision integers, plus the string forms
//! used at the display and serialization boundary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

pub fn rat(num: i64, den: i64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

pub fn ratio_of<T: Scalar>(num: &T, den: &T) -> ExactRational {
    ExactRational::new(num.to_bigint(), den.to_bigint())
}

pub fn from_scalar<T: Scalar>(v: &T) -> ExactRational {
    ExactRational::from_integer(v.to_bigint())
}

/// `"p/q"` even when `q = 1`; the machine-readable form.
pub fn fraction_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"`, a bare integer or a finite decimal such as `"2.4317"`.
pub fn parse_fraction(s: &str) -> Result<ExactRational> {
    let bad = || Error::invalid(format!("not a rational: {s:?}"));
    if let Some((whole, frac)) = s.trim().split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || whole.contains('/') {
            return Err(bad());
        }
        let n: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
        return Ok(ExactRational::new(
            n,
            num_traits::pow(BigInt::from(10), frac.len()),
        ));
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(ExactRational::new(n, d))
}

/// Decimal rendering with `sig` significant digits, rounded half away from zero.
pub fn to_decimal(r: &ExactRational, sig: usize) -> String {
    let sig = sig.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // find e with 10^e <= a < 10^(e+1)
    let ten = BigInt::from(10);
    let mut e: i64 = (a.numer().to_string().len() as i64) - (a.denom().to_string().len() as i64);
    let pow10 = |k: i64| -> ExactRational {
        if k >= 0 {
            ExactRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            ExactRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    let shift = sig as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut digits = if rem.clone() * 2 >= *scaled.denom() {
        q + 1
    } else {
        q
    };
    let mut shift = shift;
    if digits.to_string().len() > sig {
        digits /= 10;
        shift -= 1;
    }
    let s = digits.to_string();
    let body = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{s}{zeros}")
    } else if (shift as usize) >= s.len() {
        let zeros = "0".repeat(shift as usize - s.len());
        format!("0.{zeros}{s}")
    } else {
        let (i, f) = s.split_at(s.len() - shift as usize);
        format!("{i}.{f}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Serde helpers writing rationals as `"p/q"` strings.
pub mod serde_fraction {
    use serde::Serializer;

    use super::{fraction_string, ExactRational};

    pub fn serialize<S: Serializer>(r: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fraction_string(r))
    }

    pub fn option<S: Serializer>(r: &Option<ExactRational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => serialize(r, s),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms() {
        let r = rat(21, 33);
        assert_eq!(r, rat(7, 11));
        assert_eq!(fraction_string(&r), "7/11");
        assert_eq!(fraction_string(&int(5)), "5/1");
        assert_eq!(rat(3, -6), rat(-1, 2));
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn parse() {
        assert_eq!(parse_fraction("1007/4080").unwrap(), rat(1007, 4080));
        assert_eq!(parse_fraction(" 12 ").unwrap(), int(12));
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("x/2").is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&rat(1, 3), 10), "0.3333333333");
        assert_eq!(to_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(to_decimal(&int(1234), 2), "1200");
        assert_eq!(to_decimal(&rat(-7, 11), 3), "-0.636");
        assert_eq!(to_decimal(&rat(9999, 1000), 3), "10.0");
        assert_eq!(to_decimal(&rat(1, 1000), 2), "0.0010");
        assert_eq!(to_decimal(&int(1), 1), "1");
    }

    proptest! {
        #[test]
        fn comparison_matches_cross_multiplication(a in -10_000i64..10_000, b in 1i64..10_000,
                                                   c in -10_000i64..10_000, d in 1i64..10_000) {
            let (x, y) = (rat(a, b), rat(c, d));
            prop_assert_eq!(x.cmp(&y), (a as i128 * d as i128).cmp(&(c as i128 * b as i128)));
            let s = &x + &y;
            prop_assert_eq!(s, rat(a * d + c * b, b * d));
            prop_assert_eq!(parse_fraction(&fraction_string(&x)).unwrap(), x);
        }
    }
}
