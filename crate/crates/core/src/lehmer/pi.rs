//! Rational enclosure of π², used wherever a verdict depends on a comparison
//! against a multiple of `1/π²`.

use num_bigint::BigInt;

use crate::arith::rational::ExactRational;

const LOWER_DIGITS: &str = "9869604401089358618834490999876";
const UPPER_DIGITS: &str = "9869604401089358618834490999877";
const SCALE: usize = 30;

fn decimal(digits: &str) -> ExactRational {
    let n: BigInt = digits.parse().expect("valid digit string");
    ExactRational::new(n, num_traits::pow(BigInt::from(10), SCALE))
}

/// `(lo, hi)` with `lo < π² < hi` and `hi - lo = 10^-30`.
pub fn pi_squared_bounds() -> (ExactRational, ExactRational) {
    (decimal(LOWER_DIGITS), decimal(UPPER_DIGITS))
}

/// Encloses `c/π²` for a positive coefficient `c`.
pub fn over_pi_squared(c: &ExactRational) -> (ExactRational, ExactRational) {
    let (lo, hi) = pi_squared_bounds();
    (c / hi, c / lo)
}
