//! Exclusion of multipliers `k` and the floors derived from it.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::pi::{over_pi_squared, pi_squared_bounds};
use super::profile::{Completion, Divisibility, LehmerProfile, ProfileKind};
use super::thresholds::{thm32_ladder, Ladder, LadderMode, UpperShape};
use crate::arith::rational::{int, rat, ratio_of, ExactRational};
use crate::arith::{euler_phi, sigma, Factorization};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::scalar::Scalar;

const JUSTIFICATION_LIMIT: u64 = 256;

/// Why a multiplier is impossible in one completion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum CaseReason {
    /// `3 | n` forces `k ≡ 1 (mod 3)`.
    Congruence { residue: u64 },
    /// The witness lower bound meets the upper bound: `lower ≥ upper`.
    Threshold {
        #[serde(with = "crate::arith::rational::serde_fraction")]
        lower: ExactRational,
        #[serde(with = "crate::arith::rational::serde_fraction")]
        upper: ExactRational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub case: String,
    pub shape: UpperShape,
    #[serde(with = "crate::arith::rational::serde_fraction")]
    pub lower: ExactRational,
    #[serde(with = "crate::arith::rational::serde_fraction")]
    pub upper: ExactRational,
    pub reason: Option<CaseReason>,
}

impl CaseOutcome {
    pub fn excluded(&self) -> bool {
        self.reason.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub k: u64,
    /// True when every case excludes `k`.
    pub excluded: bool,
    pub cases: Vec<CaseOutcome>,
}

impl Exclusion {
    /// Recomputes every recorded comparison from the stored rationals.
    pub fn reproduces(&self) -> bool {
        self.cases.iter().all(|c| match &c.reason {
            Some(CaseReason::Threshold { lower, upper }) => {
                lower >= upper && *lower == c.lower && *upper == c.upper
            }
            Some(CaseReason::Congruence { residue }) => *residue == self.k % 3 && *residue != 1,
            None => c.lower < c.upper,
        })
    }
}

/// Lower bound on `ψ″` of the witness: `(n-1)/(2kn)`, or `(1 - 1/N0)/(2k)` symbolically.
fn witness_lower(profile: &LehmerProfile, k: u64) -> ExactRational {
    let two_k = ExactRational::from_integer(BigInt::from(2 * k));
    match profile.kind() {
        ProfileKind::Symbolic { n0_exponent } => {
            let n0 = num_traits::pow(BigInt::from(10), *n0_exponent as usize);
            (int(1) - ExactRational::new(BigInt::one(), n0)) / two_k
        }
        ProfileKind::Concrete(f) => {
            let n = f.value();
            ratio_of(&(n - BigUint::one()), n) / two_k
        }
    }
}

fn shape_for(c: &Completion) -> UpperShape {
    UpperShape::refined(&c.divisors, c.r)
}

fn case_outcome(c: &Completion, k: u64, lower: &ExactRational) -> CaseOutcome {
    let shape = shape_for(c);
    let upper = shape.upper(k);
    let reason = if c.divisors.contains(&3) && k % 3 != 1 {
        Some(CaseReason::Congruence { residue: k % 3 })
    } else if *lower >= upper {
        Some(CaseReason::Threshold {
            lower: lower.clone(),
            upper: upper.clone(),
        })
    } else {
        None
    };
    CaseOutcome {
        case: c.label(),
        shape,
        lower: lower.clone(),
        upper,
        reason,
    }
}

/// First `k ≥ 2` a completion leaves open. `k · lower(k)` is constant while
/// `k · upper(k)` grows linearly, so the threshold excludes exactly the
/// `k ≤ K* = (16 c/7 - a(1 - 1/r)) r` with `c = k · lower(k)`.
fn first_open(c: &Completion, lower_times_k: &ExactRational) -> u64 {
    let shape = shape_for(c);
    let r = ExactRational::from_integer(BigInt::from(shape.r));
    let cutoff = (rat(16, 7) * lower_times_k - &shape.a * (int(1) - int(1) / &r)) * r;
    let mut k = if cutoff < int(2) {
        2
    } else {
        cutoff
            .floor()
            .to_integer()
            .to_u64()
            .map_or(u64::MAX, |v| v.saturating_add(1))
    };
    if c.divisors.contains(&3) {
        while k % 3 != 1 {
            k += 1;
        }
    }
    k
}

/// Decides whether `k` is impossible for every `n` matching the profile.
pub fn exclude_k(profile: &LehmerProfile, k: u64) -> Result<Exclusion> {
    if k < 2 {
        return Err(Error::invalid("k must be at least 2"));
    }
    profile.validate()?;
    Ok(exclude_with(profile, &profile.completions(), k))
}

fn exclude_with(profile: &LehmerProfile, completions: &[Completion], k: u64) -> Exclusion {
    let lower = witness_lower(profile, k);
    let cases: Vec<CaseOutcome> = completions
        .iter()
        .map(|c| case_outcome(c, k, &lower))
        .collect();
    Exclusion {
        k,
        excluded: cases.iter().all(CaseOutcome::excluded),
        cases,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinK {
    pub value: u64,
    /// Exclusions for `k = 2 .. value - 1`.
    pub excluded: Vec<Exclusion>,
    pub rules: Vec<String>,
    /// Both ladder readings when every case has no tracked prime divisor.
    pub ladder: Option<LadderComparison>,
    /// Some exclusion rests on `ψ″ > φ(n)/(2n)` in a case with `3 ∤ n`,
    /// where that bound does not hold for the witness group.
    pub conditional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderComparison {
    pub strict: Ladder,
    pub as_printed: Ladder,
}

impl LadderComparison {
    pub fn diverges(&self) -> bool {
        self.strict.floor != self.as_printed.floor
    }
}

/// Smallest `k ≥ 2` not excluded, with the rules that produced it.
pub fn min_k(profile: &LehmerProfile) -> Result<MinK> {
    profile.validate()?;
    let completions = profile.completions();
    if completions.is_empty() {
        return Err(Error::InconsistentProfile(
            "no assignment of 3, 5, 7, 11, 13 is consistent".into(),
        ));
    }
    let mut rules = Vec::new();
    for (p, r) in profile.implied_exclusions() {
        rules.push(format!(
            "prime-conflict: {p}|n implies {r}!|n since {p} | {r}-1"
        ));
    }
    if profile.status(3) == Divisibility::Divides {
        rules.push("congruence: 3|n implies k = 1 (mod 3)".into());
    }
    let lower_times_k = witness_lower(profile, 1);
    let mut k = completions
        .iter()
        .map(|c| first_open(c, &lower_times_k))
        .min()
        .expect("at least one completion");
    let listed = k.min(2 + JUSTIFICATION_LIMIT);
    let excluded: Vec<Exclusion> = (2..listed)
        .map(|j| exclude_with(profile, &completions, j))
        .collect();
    debug_assert!(excluded.iter().all(|e| e.excluded));
    debug_assert!(!exclude_with(profile, &completions, k).excluded);
    if listed < k {
        rules.push(format!("justifications listed for k < {listed} only"));
    }
    if completions.len() > 1 {
        rules.push(format!(
            "case-split over {} assignments of 3, 5, 7, 11, 13",
            completions.len()
        ));
    }
    rules.push(format!(
        "threshold-sweep: k = 2..{} excluded in every case",
        k - 1
    ));

    let ladder = match completions.as_slice() {
        [c] if c.divisors.is_empty() && c.r < u64::MAX => {
            let strict = thm32_ladder(c.r, LadderMode::Strict)?;
            let as_printed = thm32_ladder(c.r, LadderMode::AsPrinted)?;
            rules.push(format!(
                "ladder (strict) at q >= {}: k >= {}",
                c.r, strict.floor
            ));
            k = k.max(strict.floor);
            Some(LadderComparison { strict, as_printed })
        }
        _ => None,
    };
    let conditional = k > 2 && completions.iter().any(|c| !c.divisors.contains(&3));
    if conditional {
        rules.push(
            "caveat: exclusions with 3 !| n use psi''(C2 x C2 x C_n) > phi(n)/(2n), which fails there \
             (n = 5: 147/400 < 2/5); this floor is conditional on that bound"
                .into(),
        );
    }
    Ok(MinK {
        value: k,
        excluded,
        rules,
        ladder,
        conditional,
    })
}

/// Coefficient `c` with `σ(n)/n > c/π²` for every `n` matching the profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abundancy {
    #[serde(with = "crate::arith::rational::serde_fraction")]
    pub coefficient: ExactRational,
    pub min_k: u64,
    /// Primes known not to divide `n`, each contributing `p²/(p² - 1)`.
    pub excluded_primes: Vec<u64>,
    /// Enclosure of `c/π²`.
    #[serde(with = "crate::arith::rational::serde_fraction")]
    pub lower: ExactRational,
    #[serde(with = "crate::arith::rational::serde_fraction")]
    pub upper: ExactRational,
}

pub fn abundancy_bound(profile: &LehmerProfile) -> Result<Abundancy> {
    let floor = min_k(profile)?.value;
    Ok(abundancy_from(profile, floor))
}

fn abundancy_from(profile: &LehmerProfile, min_k: u64) -> Abundancy {
    let mut excluded_primes = vec![2];
    excluded_primes.extend(
        profile
            .statuses()
            .filter(|(_, s)| *s == Divisibility::NotDivides)
            .map(|(p, _)| p),
    );
    let coefficient = excluded_primes.iter().fold(
        int(6) * ExactRational::from_integer(BigInt::from(min_k)),
        |acc, &p| {
            let p2 = BigInt::from(p * p);
            acc * ExactRational::new(p2.clone(), p2 - 1)
        },
    );
    let (lower, upper) = over_pi_squared(&coefficient);
    Abundancy {
        coefficient,
        min_k,
        excluded_primes,
        lower,
        upper,
    }
}

/// `φ(n)σ(n)/n²`.
pub fn eq31_ratio<T: Scalar>(f: &Factorization<T>) -> Result<ExactRational> {
    if f.value() < &T::from_small(2) {
        return Err(Error::invalid("n must be at least 2"));
    }
    let phi = euler_phi(f).to_bigint();
    let sigma = sigma(f)?.to_bigint();
    let n = f.value().to_bigint();
    Ok(ExactRational::new(phi * sigma, &n * &n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioCheck {
    #[serde(with = "crate::arith::rational::serde_fraction")]
    pub ratio: ExactRational,
    pub below_one: bool,
    /// Certified against the upper end of the `6/π²` enclosure.
    pub above_six_over_pi_squared: bool,
}

pub fn eq31_check<T: Scalar>(f: &Factorization<T>) -> Result<RatioCheck> {
    let ratio = eq31_ratio(f)?;
    let (pi2_lo, _) = pi_squared_bounds();
    let six_over_pi2_hi = int(6) / pi2_lo;
    Ok(RatioCheck {
        below_one: ratio < int(1),
        above_six_over_pi_squared: ratio > six_over_pi2_hi,
        ratio,
    })
}

/// `C2 × C2 × C_n`, the noncyclic nilpotent group of order `4n` used as witness.
pub fn prop24_witness<T: Scalar>(f: &Factorization<T>) -> Result<GroupSpec<T>> {
    let n = f.value();
    if n.is_even() || n < &T::from_small(3) {
        return Err(Error::invalid(format!("witness needs odd n >= 3, got {n}")));
    }
    let two = T::from_small(2);
    Ok(GroupSpec::product([
        GroupSpec::Cyclic(two.clone()),
        GroupSpec::Cyclic(two),
        GroupSpec::Cyclic(n.clone()),
    ]))
}

pub(crate) fn abundancy_for(profile: &LehmerProfile, min_k: u64) -> Abundancy {
    abundancy_from(profile, min_k)
}
