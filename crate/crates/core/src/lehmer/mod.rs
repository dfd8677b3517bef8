//! Lower bounds on the multiplier `k` of a hypothetical composite solution of
//! `kφ(n) = n - 1`, obtained by squeezing `ψ″` of a witness group between a
//! lower bound in `φ(n)/n` and upper bounds in the smallest prime factors.

mod engine;
pub mod pi;
mod profile;
mod thresholds;
mod verdict;

pub use engine::{
    abundancy_bound, eq31_check, eq31_ratio, exclude_k, min_k, prop24_witness, Abundancy,
    CaseOutcome, CaseReason, Exclusion, LadderComparison, MinK, RatioCheck,
};
pub use profile::{
    parse_profile, Completion, Divisibility, LehmerProfile, ProfileKind, BEYOND_SMALL, CONFLICTS,
    DEFAULT_N0_EXPONENT, LARGE_N0_EXPONENT, SMALL_PRIMES,
};
pub use thresholds::{
    refined_threshold, thm31_threshold, thm32_condition, thm32_ladder, thm32_rung, threshold_r,
    Ladder, LadderMode, LadderStep, RefinedCase, UpperShape,
};
pub use verdict::{lehmer_check, lehmer_check_factored, LehmerVerdict};
