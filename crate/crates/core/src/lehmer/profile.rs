//! What is known about a hypothetical composite `n` with `kφ(n) = n - 1`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::arith::{is_prime, Factorization};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Primes whose divisibility a symbolic profile tracks.
pub const SMALL_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

/// Lower bound on every prime factor outside [`SMALL_PRIMES`].
pub const BEYOND_SMALL: u64 = 17;

/// Pairs `(p, r)` with `p | r - 1`; a solution divisible by `p` avoids `r`.
pub const CONFLICTS: [(u64, u64); 3] = [(3, 7), (3, 13), (5, 11)];

/// Default size floor exponent, `n > 10^30`.
pub const DEFAULT_N0_EXPONENT: u32 = 30;
/// Size floor exponent once `k ≥ 3` is known, `n > 10^8171`.
pub const LARGE_N0_EXPONENT: u32 = 8171;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Divisibility {
    Divides,
    NotDivides,
    #[default]
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileKind {
    /// Any `n` above `10^n0_exponent` satisfying the constraints.
    Symbolic { n0_exponent: u32 },
    /// One specific `n`.
    Concrete(Factorization<BigUint>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LehmerProfile {
    kind: ProfileKind,
    small: [Divisibility; 5],
    q: Option<u64>,
}

fn small_index(p: u64) -> Result<usize> {
    SMALL_PRIMES.iter().position(|&s| s == p).ok_or_else(|| {
        Error::invalid(format!(
            "{p} is not one of the tracked primes 3, 5, 7, 11, 13"
        ))
    })
}

impl LehmerProfile {
    /// No constraints beyond `n > 10^30`.
    pub fn generic() -> Self {
        LehmerProfile {
            kind: ProfileKind::Symbolic {
                n0_exponent: DEFAULT_N0_EXPONENT,
            },
            small: [Divisibility::Unknown; 5],
            q: None,
        }
    }

    pub fn concrete<T: Scalar>(f: &Factorization<T>) -> Result<Self> {
        let f = f.convert::<BigUint>()?;
        let mut small = [Divisibility::NotDivides; 5];
        for (i, p) in SMALL_PRIMES.iter().enumerate() {
            if f.divides_by(*p) {
                small[i] = Divisibility::Divides;
            }
        }
        let q = f.smallest_prime().and_then(|p| p.to_u64());
        Ok(LehmerProfile {
            kind: ProfileKind::Concrete(f),
            small,
            q,
        })
    }

    pub fn with_n0_exponent(mut self, e: u32) -> Result<Self> {
        match &mut self.kind {
            ProfileKind::Symbolic { n0_exponent } => *n0_exponent = e,
            ProfileKind::Concrete(_) => {
                return Err(Error::invalid("a concrete profile has no size floor"))
            }
        }
        Ok(self)
    }

    pub fn divides(self, p: u64) -> Result<Self> {
        self.set(p, Divisibility::Divides)
    }

    pub fn not_divides(self, p: u64) -> Result<Self> {
        self.set(p, Divisibility::NotDivides)
    }

    fn set(mut self, p: u64, status: Divisibility) -> Result<Self> {
        self.ensure_symbolic()?;
        let i = small_index(p)?;
        match self.small[i] {
            Divisibility::Unknown => self.small[i] = status,
            s if s == status => {}
            _ => {
                return Err(Error::InconsistentProfile(format!(
                    "{p} is declared both to divide and not to divide n"
                )));
            }
        }
        self.validate()?;
        Ok(self)
    }

    /// Declares the smallest prime factor of `n`.
    pub fn smallest_prime(mut self, q: u64) -> Result<Self> {
        self.ensure_symbolic()?;
        if q < 3 || !is_prime(&q) {
            return Err(Error::invalid(format!("q = {q} must be an odd prime")));
        }
        if self.q.is_some_and(|old| old != q) {
            return Err(Error::InconsistentProfile(format!(
                "q is declared as both {} and {q}",
                self.q.unwrap()
            )));
        }
        self.q = Some(q);
        for (i, p) in SMALL_PRIMES.iter().enumerate() {
            let want = if *p < q {
                Divisibility::NotDivides
            } else if *p == q {
                Divisibility::Divides
            } else {
                continue;
            };
            match self.small[i] {
                Divisibility::Unknown => self.small[i] = want,
                s if s == want => {}
                _ => {
                    return Err(Error::InconsistentProfile(format!(
                        "q = {q} contradicts the constraint on {p}"
                    )));
                }
            }
        }
        self.validate()?;
        Ok(self)
    }

    fn ensure_symbolic(&self) -> Result<()> {
        match self.kind {
            ProfileKind::Symbolic { .. } => Ok(()),
            ProfileKind::Concrete(_) => Err(Error::invalid(
                "constraints apply to symbolic profiles only",
            )),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let ProfileKind::Symbolic { .. } = self.kind {
            for (p, r) in CONFLICTS {
                if self.status(p) == Divisibility::Divides
                    && self.status(r) == Divisibility::Divides
                {
                    return Err(Error::InconsistentProfile(format!(
                        "{p} | n and {r} | n cannot both hold: {p} divides {r} - 1, which divides n - 1"
                    )));
                }
            }
            if let Some(q) = self.q {
                for p in SMALL_PRIMES.iter().filter(|&&p| p < q) {
                    if self.status(*p) == Divisibility::Divides {
                        return Err(Error::InconsistentProfile(format!(
                            "{p} | n contradicts q = {q}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &ProfileKind {
        &self.kind
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.kind, ProfileKind::Symbolic { .. })
    }

    pub fn status(&self, p: u64) -> Divisibility {
        small_index(p)
            .map(|i| self.small[i])
            .unwrap_or(Divisibility::Unknown)
    }

    pub fn statuses(&self) -> impl Iterator<Item = (u64, Divisibility)> + '_ {
        SMALL_PRIMES.iter().copied().zip(self.small.iter().copied())
    }

    pub fn declared_q(&self) -> Option<u64> {
        self.q
    }

    pub fn n0_exponent(&self) -> Option<u32> {
        match self.kind {
            ProfileKind::Symbolic { n0_exponent } => Some(n0_exponent),
            ProfileKind::Concrete(_) => None,
        }
    }

    /// Statuses forced by the conflict pairs, e.g. `5 | n ⇒ 11 ∤ n`.
    pub fn implied_exclusions(&self) -> Vec<(u64, u64)> {
        CONFLICTS
            .iter()
            .copied()
            .filter(|(p, r)| {
                self.status(*p) == Divisibility::Divides && self.status(*r) == Divisibility::Unknown
            })
            .collect()
    }

    /// Every full assignment of the tracked primes compatible with the profile
    /// and with the conflict pairs. Concrete profiles have exactly one.
    pub fn completions(&self) -> Vec<Completion> {
        match &self.kind {
            ProfileKind::Concrete(f) => vec![Completion::from_factorization(f)],
            ProfileKind::Symbolic { .. } => {
                let unknown: Vec<usize> = (0..5)
                    .filter(|&i| self.small[i] == Divisibility::Unknown)
                    .collect();
                let mut out = Vec::new();
                for mask in 0u32..(1 << unknown.len()) {
                    let mut statuses = self.small;
                    for (bit, &i) in unknown.iter().enumerate() {
                        statuses[i] = if mask >> bit & 1 == 1 {
                            Divisibility::Divides
                        } else {
                            Divisibility::NotDivides
                        };
                    }
                    let divisors: Vec<u64> = (0..5)
                        .filter(|&i| statuses[i] == Divisibility::Divides)
                        .map(|i| SMALL_PRIMES[i])
                        .collect();
                    if CONFLICTS
                        .iter()
                        .any(|(p, r)| divisors.contains(p) && divisors.contains(r))
                    {
                        continue;
                    }
                    let beyond = self
                        .q
                        .filter(|&q| q >= BEYOND_SMALL)
                        .unwrap_or(BEYOND_SMALL);
                    let r = match divisors.as_slice() {
                        [] => beyond,
                        [_] => beyond,
                        [s1, s2, ..] => beyond.min(s1 * s2),
                    };
                    out.push(Completion { divisors, r });
                }
                out
            }
        }
    }
}

impl fmt::Display for LehmerProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ProfileKind::Concrete(fac) => return write!(f, "n = {}", fac.value()),
            ProfileKind::Symbolic { n0_exponent } => {
                let mut parts = Vec::new();
                for (p, s) in self.statuses() {
                    match s {
                        Divisibility::Divides => parts.push(format!("{p}|n")),
                        Divisibility::NotDivides => parts.push(format!("{p}!|n")),
                        Divisibility::Unknown => {}
                    }
                }
                if let Some(q) = self.q {
                    parts.push(format!("q={q}"));
                }
                parts.push(format!("N0=10^{n0_exponent}"));
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl Serialize for LehmerProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One fully decided case: the tracked primes dividing `n`, and a lower bound
/// `r` on every divisor `e > 1` of `n` outside `divisors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Completion {
    pub divisors: Vec<u64>,
    pub r: u64,
}

impl Completion {
    fn from_factorization(f: &Factorization<BigUint>) -> Self {
        let divisors: Vec<u64> = SMALL_PRIMES
            .iter()
            .copied()
            .filter(|p| f.divides_by(*p))
            .collect();
        // the least divisor e > 1 outside `divisors`: a prime not listed, or the least composite divisor
        let other_prime = f
            .primes()
            .map(|p| p.to_u64().unwrap_or(u64::MAX))
            .filter(|p| !divisors.contains(p))
            .min();
        let mut with_multiplicity = f.factors().iter().flat_map(|(p, a)| {
            std::iter::repeat_n(p.to_u64().unwrap_or(u64::MAX), (*a).min(2) as usize)
        });
        let least_composite = match (with_multiplicity.next(), with_multiplicity.next()) {
            (Some(a), Some(b)) => Some(a.saturating_mul(b)),
            _ => None,
        };
        let r = match (other_prime, least_composite) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => u64::MAX,
        };
        Completion { divisors, r }
    }

    pub fn smallest_divisor(&self) -> Option<u64> {
        self.divisors.first().copied()
    }

    pub fn label(&self) -> String {
        let s: Vec<String> = self.divisors.iter().map(|p| p.to_string()).collect();
        format!("S={{{}}}, r={}", s.join(","), self.r)
    }
}

/// Parses a comma- or space-separated constraint list: `generic`, `3|n`,
/// `3!|n` or `3∤n`, `q=17`, `N0=10^8171`.
pub fn parse_profile(text: &str) -> Result<LehmerProfile> {
    let mut profile = LehmerProfile::generic();
    for token in text
        .split([',', ' '])
        .map(str::trim)
        .filter(|t| !t.is_empty())
    {
        let bad = || Error::invalid(format!("unrecognized profile constraint {token:?}"));
        let lower = token.to_ascii_lowercase();
        if lower == "generic" {
            continue;
        }
        if let Some(v) = lower.strip_prefix("q=") {
            profile = profile.smallest_prime(v.parse().map_err(|_| bad())?)?;
        } else if let Some(v) = lower
            .strip_prefix("n0=")
            .or_else(|| lower.strip_prefix("n>"))
        {
            let e = v
                .strip_prefix("10^")
                .or_else(|| v.strip_prefix("1e"))
                .ok_or_else(bad)?;
            profile = profile.with_n0_exponent(e.parse().map_err(|_| bad())?)?;
        } else if let Some(p) = lower
            .strip_suffix("!|n")
            .or_else(|| lower.strip_suffix("∤n"))
        {
            profile = profile.not_divides(p.parse().map_err(|_| bad())?)?;
        } else if let Some(p) = lower.strip_suffix("|n") {
            profile = profile.divides(p.parse().map_err(|_| bad())?)?;
        } else {
            return Err(bad());
        }
    }
    Ok(profile)
}
