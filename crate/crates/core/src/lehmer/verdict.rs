use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::engine::{abundancy_for, min_k, prop24_witness, Abundancy, Exclusion, LadderComparison};
use super::profile::LehmerProfile;
use crate::arith::rational::ExactRational;
use crate::arith::{euler_phi, factor, is_squarefree, Factorization, Primality};
use crate::bounds::lemma21_lower_bound;
use crate::carmichael::korselt_from_factorization;
use crate::error::{Error, Result};
use crate::group::SpectrumEngine;
use crate::scalar::{serde_scalar, Scalar};

/// Everything the engine can say about one `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LehmerVerdict {
    #[serde(serialize_with = "serde_scalar::serialize")]
    pub n: BigUint,
    pub factorization: String,
    pub primality: Primality,
    /// `None` for primes, where the notion does not apply.
    pub is_carmichael: Option<bool>,
    #[serde(serialize_with = "serde_scalar::serialize")]
    pub phi: BigUint,
    pub phi_divides: bool,
    /// `(n-1)/φ(n)` when it is an integer.
    pub exact_k: Option<u64>,
    /// A composite `n` with `φ(n) | n - 1`.
    pub counterexample: bool,
    /// Proven floor on `k` for odd composite `n`; `None` for primes and even `n`.
    pub min_k: Option<u64>,
    pub excluded_k: Vec<Exclusion>,
    pub witness: Option<String>,
    #[serde(serialize_with = "crate::arith::rational::serde_fraction::option")]
    pub witness_psi_double_prime: Option<ExactRational>,
    #[serde(serialize_with = "crate::arith::rational::serde_fraction::option")]
    pub witness_lower_bound: Option<ExactRational>,
    pub abundancy: Option<Abundancy>,
    pub ladder: Option<LadderComparison>,
    pub rules: Vec<String>,
}

impl LehmerVerdict {
    /// A composite solution must respect every proven floor.
    pub fn respects_floor(&self) -> bool {
        match (self.counterexample, self.exact_k, self.min_k) {
            (true, Some(k), Some(m)) => k >= m,
            _ => true,
        }
    }
}

pub fn lehmer_check<T: Scalar>(n: &T) -> Result<LehmerVerdict> {
    if n < &T::from_small(2) {
        return Err(Error::invalid(format!("n must be at least 2, got {n}")));
    }
    let f = factor(n)?.convert::<BigUint>()?;
    lehmer_check_factored(&f)
}

/// Same as [`lehmer_check`] for a caller-supplied factorization.
pub fn lehmer_check_factored(f: &Factorization<BigUint>) -> Result<LehmerVerdict> {
    let n = f.value().clone();
    if n < BigUint::from(2u8) {
        return Err(Error::invalid(format!("n must be at least 2, got {n}")));
    }
    let phi = euler_phi(f);
    let n_minus_1 = &n - BigUint::one();
    let phi_divides = (&n_minus_1 % &phi).is_zero();
    let exact_k = if phi_divides {
        (&n_minus_1 / &phi).to_u64()
    } else {
        None
    };
    let is_prime = matches!(f.factors(), [(_, 1)]);
    let primality = if !is_prime {
        Primality::Composite
    } else if f.is_certified() {
        Primality::Prime
    } else {
        Primality::ProbablePrime
    };
    let mut verdict = LehmerVerdict {
        n: n.clone(),
        factorization: f.to_string(),
        primality,
        is_carmichael: None,
        phi,
        phi_divides,
        exact_k,
        counterexample: false,
        min_k: None,
        excluded_k: Vec::new(),
        witness: None,
        witness_psi_double_prime: None,
        witness_lower_bound: None,
        abundancy: None,
        ladder: None,
        rules: Vec::new(),
    };
    if is_prime {
        verdict.rules.push("prime: phi(n) = n - 1, k = 1".into());
        return Ok(verdict);
    }
    verdict.is_carmichael = Some(korselt_from_factorization(f).is_carmichael);
    verdict.counterexample = phi_divides;
    if phi_divides {
        verdict
            .rules
            .push("COMPOSITE SOLUTION: phi(n) divides n - 1".into());
    }
    if n.is_even() {
        verdict
            .rules
            .push("even composite: phi(n) is even and n - 1 is odd".into());
        return Ok(verdict);
    }
    if !is_squarefree(f) {
        verdict
            .rules
            .push("not squarefree: a repeated prime p divides both phi(n) and n".into());
    }

    let profile = LehmerProfile::concrete(f)?;
    let floor = min_k(&profile)?;
    verdict.rules.extend(floor.rules.iter().cloned());
    verdict.min_k = Some(floor.value);
    verdict.excluded_k = floor.excluded;
    verdict.ladder = floor.ladder;
    verdict.abundancy = Some(abundancy_for(&profile, floor.value));

    let witness = prop24_witness(f)?;
    let engine = SpectrumEngine::default().know(f.clone());
    verdict.witness_psi_double_prime = Some(engine.psi_double_prime(&witness)?);
    if is_squarefree(f) {
        verdict.witness_lower_bound = Some(lemma21_lower_bound(f)?);
    }
    verdict.witness = Some(witness.to_string());
    if !verdict.respects_floor() {
        verdict
            .rules
            .push("FLOOR VIOLATED: exact k is below the proven minimum".into());
    }
    Ok(verdict)
}
