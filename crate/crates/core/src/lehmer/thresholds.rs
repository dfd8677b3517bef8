//! Upper bounds on `ψ″` of the witness group under the hypothesis
//! `kφ(n) = n - 1`, and the thresholds derived from them.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::is_prime;
use crate::arith::rational::{int, rat, ExactRational};
use crate::error::{Error, Result};

/// Upper bound `7/16 · (a(1 - 1/r)/k + 1/r)` on `ψ″(C2 × C2 × C_n)`.
///
/// `a = 1 + Σ 1/(p(p-1))` over the primes `p` whose cofactor `n/p` is
/// accounted for separately, and `r` bounds from below every other
/// nontrivial cofactor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperShape {
    #[serde(with = "crate::arith::rational::serde_fraction")]
    pub a: ExactRational,
    pub r: u64,
}

impl UpperShape {
    /// The shape with no separated primes: every proper divisor is at most `n/q`.
    pub fn base(q: u64) -> Self {
        UpperShape { a: int(1), r: q }
    }

    /// Separates the cofactors `n/p` for `p` in `primes`.
    pub fn refined(primes: &[u64], r: u64) -> Self {
        let a = primes.iter().fold(int(1), |acc, &p| {
            acc + ExactRational::new(BigInt::from(1), BigInt::from(p) * BigInt::from(p - 1))
        });
        UpperShape { a, r }
    }

    pub fn upper(&self, k: u64) -> ExactRational {
        let r = ExactRational::from_integer(BigInt::from(self.r));
        let k = ExactRational::from_integer(BigInt::from(k));
        let inv_r = int(1) / r;
        rat(7, 16) * (&self.a * (int(1) - &inv_r) / k + inv_r)
    }
}

/// `7(q - 1 + R)/(16Rq)`: above it, a witness of order `4n` forces `k < R`.
pub fn threshold_r(q: u64, r: u64) -> Result<ExactRational> {
    if q < 3 || !is_prime(&q) {
        return Err(Error::invalid(format!("q = {q} must be an odd prime")));
    }
    if r < 2 {
        return Err(Error::invalid(format!("R = {r} must be at least 2")));
    }
    Ok(UpperShape::base(q).upper(r))
}

/// Threshold on `ψ″` for groups of order `2^α · m`, `m` odd.
pub fn thm31_threshold(alpha: u32) -> Result<ExactRational> {
    Ok(match alpha {
        0 => return Err(Error::invalid("alpha must be at least 1")),
        1 => rat(13, 42),
        2 => rat(7, 24),
        3 => rat(9, 32),
        a => {
            let den = BigInt::from(9) * num_traits::pow(BigInt::from(2), (2 * a - 1) as usize);
            rat(16, 63) + ExactRational::new(BigInt::from(1), den)
        }
    })
}

/// Named refinements for `q = 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefinedCase {
    /// `5 | n`, `3, 7 ∤ n`.
    Q5No7,
    /// `5, 7 | n`, `3, 13 ∤ n`.
    Q5With7No13,
    /// `5, 7, 13 | n`, `3 ∤ n`.
    Q5With7With13,
}

impl RefinedCase {
    pub const ALL: [RefinedCase; 3] = [
        RefinedCase::Q5No7,
        RefinedCase::Q5With7No13,
        RefinedCase::Q5With7With13,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RefinedCase::Q5No7 => "q5-no7",
            RefinedCase::Q5With7No13 => "q5-7-no13",
            RefinedCase::Q5With7With13 => "q5-7-13",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.tag() == tag)
            .ok_or_else(|| Error::invalid(format!("unknown refined case {tag:?}")))
    }

    pub fn shape(self) -> UpperShape {
        match self {
            RefinedCase::Q5No7 => UpperShape::refined(&[5], 11),
            RefinedCase::Q5With7No13 => UpperShape::refined(&[5, 7], 17),
            RefinedCase::Q5With7With13 => UpperShape::refined(&[5, 7, 13], 17),
        }
    }
}

/// Upper bound at `k = 2` for a named refinement.
pub fn refined_threshold(case: RefinedCase) -> ExactRational {
    case.shape().upper(2)
}

/// Which condition decides a rung of the `k ≥ R + 1` ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LadderMode {
    /// `(1/2) R ((q-1)/(Rq) + 1/q) < 1`.
    AsPrinted,
    /// `(7/8) R ((q-1)/(Rq) + 1/q) < 1`, what the threshold and the lower bound actually give.
    #[default]
    Strict,
}

pub fn thm32_condition(q: u64, r: u64, mode: LadderMode) -> ExactRational {
    let value = ExactRational::new(BigInt::from(q) - 1 + BigInt::from(r), BigInt::from(q));
    match mode {
        LadderMode::AsPrinted => value / int(2),
        LadderMode::Strict => rat(7, 8) * value,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderStep {
    pub r: u64,
    #[serde(with = "crate::arith::rational::serde_fraction")]
    pub value: ExactRational,
    pub holds: bool,
}

impl LadderStep {
    /// `k >= R + 1` when the rung holds.
    pub fn conclusion(&self) -> Option<u64> {
        self.holds.then_some(self.r + 1)
    }
}

/// Evaluates a single rung.
pub fn thm32_rung(q: u64, r: u64, mode: LadderMode) -> LadderStep {
    let value = thm32_condition(q, r, mode);
    LadderStep {
        holds: value < int(1),
        r,
        value,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ladder {
    pub q: u64,
    pub mode: LadderMode,
    /// Largest `R + 1` over the rungs that hold, 2 when none does.
    pub floor: u64,
    /// The last rung that holds, if any, and the first that fails.
    pub steps: Vec<LadderStep>,
}

/// The condition increases with `R`, so the rungs that hold form a prefix
/// `2..=R_max`, found without climbing.
pub fn thm32_ladder(q: u64, mode: LadderMode) -> Result<Ladder> {
    if q < 17 || !is_prime(&q) {
        return Err(Error::invalid(format!("q = {q} must be a prime >= 17")));
    }
    // value(R) < 1  <=>  q - 1 + R < q * den / num
    let (num, den) = match mode {
        LadderMode::AsPrinted => (1u128, 2u128),
        LadderMode::Strict => (7, 8),
    };
    let r_max = ((q as u128 * den - 1) / num) as i128 - q as i128 + 1;
    let step = |r: u64| thm32_rung(q, r, mode);
    let mut steps = Vec::new();
    let floor = if r_max >= 2 {
        let r_max = r_max as u64;
        steps.push(step(r_max));
        r_max + 1
    } else {
        2
    };
    steps.push(step(floor));
    Ok(Ladder {
        q,
        mode,
        floor,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold_r(3, 2).unwrap(), rat(7, 24));
        assert_eq!(threshold_r(11, 2).unwrap(), rat(21, 88));
        assert_eq!(threshold_r(17, 3).unwrap(), rat(133, 816));
        assert!(threshold_r(9, 2).is_err());
        assert!(threshold_r(2, 2).is_err());
        assert!(threshold_r(5, 1).is_err());
    }

    #[test]
    fn alpha_thresholds() {
        assert_eq!(thm31_threshold(1).unwrap(), rat(13, 42));
        assert_eq!(thm31_threshold(2).unwrap(), rat(7, 24));
        assert_eq!(thm31_threshold(3).unwrap(), rat(9, 32));
        assert_eq!(thm31_threshold(4).unwrap(), rat(2055, 8064));
        assert_eq!(thm31_threshold(4).unwrap(), rat(4096 + 14, 63 * 256));
        assert!(thm31_threshold(0).is_err());
    }

    #[test]
    fn refined_values_follow_their_chains() {
        assert_eq!(refined_threshold(RefinedCase::Q5No7), rat(175, 704));
        assert_eq!(
            refined_threshold(RefinedCase::Q5No7),
            rat(7, 16) * (rat(21, 44) + rat(1, 11))
        );
        assert_eq!(refined_threshold(RefinedCase::Q5With7No13), rat(1007, 4080));
        assert_eq!(
            refined_threshold(RefinedCase::Q5With7No13),
            rat(7, 16) * (rat(1804, 3570) + rat(1, 17))
        );
        assert!(refined_threshold(RefinedCase::Q5With7With13) < rat(1, 4));
        assert_eq!(
            RefinedCase::from_tag("q5-7-no13").unwrap(),
            RefinedCase::Q5With7No13
        );
    }

    #[test]
    fn ladder_modes_diverge_at_17() {
        assert_eq!(thm32_condition(17, 4, LadderMode::AsPrinted), rat(10, 17));
        assert_eq!(thm32_condition(17, 4, LadderMode::Strict), rat(35, 34));
        assert_eq!(thm32_condition(17, 3, LadderMode::Strict), rat(133, 136));
        assert_eq!(thm32_ladder(17, LadderMode::Strict).unwrap().floor, 4);
        assert_eq!(thm32_ladder(17, LadderMode::AsPrinted).unwrap().floor, 18);
        assert!(thm32_ladder(13, LadderMode::Strict).is_err());
        let l = thm32_ladder(17, LadderMode::Strict).unwrap();
        assert_eq!((l.steps[0].r, l.steps[0].holds), (3, true));
        assert_eq!((l.steps[1].r, l.steps[1].holds), (4, false));
        assert_eq!(
            thm32_rung(17, 4, LadderMode::AsPrinted).conclusion(),
            Some(5)
        );
        assert_eq!(thm32_rung(17, 4, LadderMode::Strict).conclusion(), None);
        assert_eq!(thm32_rung(17, 3, LadderMode::Strict).conclusion(), Some(4));
    }

    #[test]
    fn ladder_matches_climbing() {
        for q in [17u64, 19, 23, 97, 101, 997] {
            for mode in [LadderMode::Strict, LadderMode::AsPrinted] {
                let climbed = (2..)
                    .take_while(|&r| thm32_condition(q, r, mode) < int(1))
                    .last()
                    .map_or(2, |r| r + 1);
                assert_eq!(
                    thm32_ladder(q, mode).unwrap().floor,
                    climbed,
                    "{q} {mode:?}"
                );
            }
        }
    }
}
