//! Executable forms of the element-order-sum inequalities: the coefficient
//! bounds relating noncyclic groups to the cyclic group of the same order,
//! their extremal families, the ψ″ classification thresholds, the nilpotent
//! lower bound and its squarefree refinement.

use std::fmt;

use serde::Serialize;

use crate::arith::rational::{from_scalar, int, rat, ratio_of, ExactRational};
use crate::arith::{euler_phi, is_prime, is_squarefree, Factorization};
use crate::error::{Error, Result};
use crate::group::{psi_cyclic, GroupSpec, SpectrumEngine};
use crate::scalar::Scalar;

/// How the coefficient of the `D_{2l} × C_{m/l}` bound is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum DihedralMode {
    /// `1/3 + 2l/ψ(C_l)`, exceeds 1 at `l = 3`.
    AsPrinted,
    /// `1/3 + 2l/(3ψ(C_l))`, attained by `D_{2l} × C_{m/l}`.
    #[default]
    Corrected,
}

/// The six coefficient bounds `ψ(G) ≤ c · ψ(C_n)` for noncyclic `G` of order `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientBound {
    /// Any noncyclic group: 7/11.
    Universal,
    /// `q` the smallest prime factor of `n`.
    SmallestPrime { q: u64 },
    /// `n = 2m`, `m` odd: 13/21.
    TwiceOdd,
    /// `n = 8m`, `m` odd: 27/43.
    EightTimesOdd,
    /// `n = 2^α m`, `m` odd, `α ≥ 4`.
    HighTwoPower { alpha: u32 },
    /// `n = 2m`, `m` odd, `l` the least prime-power component of `m`.
    Dihedral { l: u64, mode: DihedralMode },
}

pub fn thm21_coefficient(bound: CoefficientBound) -> Result<ExactRational> {
    Ok(match bound {
        CoefficientBound::Universal => rat(7, 11),
        CoefficientBound::SmallestPrime { q } => {
            if !is_prime(&q) {
                return Err(Error::invalid(format!("q = {q} is not prime")));
            }
            let q = ExactRational::from_integer(q.into());
            let q5 = &q * &q * &q * &q * &q;
            ((&q * &q - int(1)) * &q + int(1)) * (&q + int(1)) / (q5 + int(1))
        }
        CoefficientBound::TwiceOdd => rat(13, 21),
        CoefficientBound::EightTimesOdd => rat(27, 43),
        CoefficientBound::HighTwoPower { alpha } => {
            if !(4..=1000).contains(&alpha) {
                return Err(Error::invalid(format!(
                    "alpha = {alpha} must be at least 4"
                )));
            }
            let p = |e: u32| {
                ExactRational::from_integer(num_traits::pow(
                    num_bigint::BigInt::from(2),
                    e as usize,
                ))
            };
            (p(2 * alpha + 3) + int(7)) / (int(7) * (int(1) + p(2 * alpha + 1)))
        }
        CoefficientBound::Dihedral { l, mode } => {
            let f = crate::arith::factor_u64(l)?;
            if l < 3 || f.omega() != 1 {
                return Err(Error::invalid(format!(
                    "l = {l} must be a prime power >= 3"
                )));
            }
            let psi_l = from_scalar(&psi_cyclic(&f)?);
            let two_l = int(2 * l as i64);
            match mode {
                DihedralMode::AsPrinted => rat(1, 3) + two_l / psi_l,
                DihedralMode::Corrected => rat(1, 3) + two_l / (int(3) * psi_l),
            }
        }
    })
}

/// Parameters for the extremal group of each bound that has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyParams<T> {
    /// `C2 × C2 × C_m`, `m` odd.
    Universal { m: T },
    /// `C_q × C_q × C_r`, `gcd(r, q!) = 1`.
    SmallestPrime { q: T, r: T },
    /// `Q8 × C_m`, `m` odd.
    EightTimesOdd { m: T },
    /// `D_{2l} × C_{m/l}`, `m` odd, `l` its least prime-power component.
    Dihedral { m: T },
}

pub fn equality_family<T: Scalar>(params: &FamilyParams<T>) -> Result<GroupSpec<T>> {
    let two = T::from_small(2);
    Ok(match params {
        FamilyParams::Universal { m } => {
            require_odd(m)?;
            GroupSpec::product([
                GroupSpec::Cyclic(two.clone()),
                GroupSpec::Cyclic(two),
                GroupSpec::Cyclic(m.clone()),
            ])
        }
        FamilyParams::SmallestPrime { q, r } => {
            if !is_prime(q) {
                return Err(Error::invalid(format!("q = {q} is not prime")));
            }
            if r.is_zero() || least_prime(r)?.is_some_and(|p| p <= *q) {
                return Err(Error::invalid(format!("gcd({r}, {q}!) must be 1")));
            }
            GroupSpec::product([
                GroupSpec::Cyclic(q.clone()),
                GroupSpec::Cyclic(q.clone()),
                GroupSpec::Cyclic(r.clone()),
            ])
        }
        FamilyParams::EightTimesOdd { m } => {
            require_odd(m)?;
            GroupSpec::product([GroupSpec::Quaternion8, GroupSpec::Cyclic(m.clone())])
        }
        FamilyParams::Dihedral { m } => {
            require_odd(m)?;
            let l = least_prime_power(m)?.ok_or_else(|| Error::invalid("m must be at least 3"))?;
            GroupSpec::product([
                GroupSpec::Dihedral(l.clone()),
                GroupSpec::Cyclic(m.clone() / l),
            ])
        }
    })
}

fn require_odd<T: Scalar>(m: &T) -> Result<()> {
    if m.is_zero() || m.is_even() {
        return Err(Error::invalid(format!("m = {m} must be odd")));
    }
    Ok(())
}

fn least_prime<T: Scalar>(n: &T) -> Result<Option<T>> {
    Ok(crate::arith::factor(n)?.smallest_prime().cloned())
}

/// Least prime-power component `p^α ∥ m`.
pub fn least_prime_power<T: Scalar>(m: &T) -> Result<Option<T>> {
    Ok(crate::arith::factor(m)?.prime_powers().into_iter().min())
}

/// Properties certified by `ψ″(G)` exceeding the matching threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupProperty {
    None,
    Solvable,
    Supersolvable,
    Nilpotent,
    Abelian,
    Cyclic,
}

impl fmt::Display for GroupProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupProperty::None => "none",
            GroupProperty::Solvable => "solvable",
            GroupProperty::Supersolvable => "supersolvable",
            GroupProperty::Nilpotent => "nilpotent",
            GroupProperty::Abelian => "abelian",
            GroupProperty::Cyclic => "cyclic",
        };
        f.write_str(s)
    }
}

/// Classification thresholds, strongest property first.
pub fn thm22_thresholds() -> [(GroupProperty, ExactRational); 5] {
    [
        (GroupProperty::Cyclic, rat(7, 16)),
        (GroupProperty::Abelian, rat(27, 64)),
        (GroupProperty::Nilpotent, rat(13, 36)),
        (GroupProperty::Supersolvable, rat(31, 144)),
        (GroupProperty::Solvable, rat(211, 3600)),
    ]
}

/// Strongest property whose threshold `r` strictly exceeds.
pub fn thm22_classify(r: &ExactRational) -> GroupProperty {
    thm22_thresholds()
        .into_iter()
        .find(|(_, t)| r > t)
        .map_or(GroupProperty::None, |(p, _)| p)
}

/// `∏ p(p^α - 1) + 1`, the least ψ over nilpotent groups of order `n`.
pub fn thm23_lower_bound<T: Scalar>(f: &Factorization<T>) -> Result<T> {
    if f.value().is_one() {
        return Err(Error::invalid("nilpotent bound needs n >= 2"));
    }
    let prod = f.factors().iter().try_fold(T::one(), |acc, (p, a)| {
        let pa = p.try_pow(*a, "nilpotent bound")?;
        acc.try_mul(
            &p.try_mul(&(pa - T::one()), "nilpotent bound")?,
            "nilpotent bound",
        )
    })?;
    prod.try_add(&T::one(), "nilpotent bound")
}

/// `φ(n) / (2n)` for odd squarefree `n ≥ 3`. `ψ″(C2 × C2 × C_n)` exceeds it
/// only when `3 | n`; for `n = 5` it is 147/400 < 2/5.
pub fn lemma21_lower_bound<T: Scalar>(f: &Factorization<T>) -> Result<ExactRational> {
    let n = f.value();
    if n.is_even() || *n < T::from_small(3) || !is_squarefree(f) {
        return Err(Error::invalid(format!(
            "n = {n} must be odd, squarefree and at least 3"
        )));
    }
    Ok(ratio_of(&euler_phi(f), n) / int(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundId {
    #[serde(rename = "Thm2.1-i")]
    Thm21I,
    #[serde(rename = "Thm2.1-ii")]
    Thm21II,
    #[serde(rename = "Thm2.1-iii")]
    Thm21III,
    #[serde(rename = "Thm2.1-iv")]
    Thm21IV,
    #[serde(rename = "Thm2.1-v")]
    Thm21V,
    #[serde(rename = "Thm2.1-vi")]
    Thm21VI,
    #[serde(rename = "Prop2.1")]
    Prop21,
    #[serde(rename = "Prop2.2")]
    Prop22,
    #[serde(rename = "Thm2.3")]
    Thm23,
    #[serde(rename = "Lemma2.1")]
    Lemma21,
}

impl BoundId {
    pub const ALL: [BoundId; 10] = [
        BoundId::Prop21,
        BoundId::Prop22,
        BoundId::Thm21I,
        BoundId::Thm21II,
        BoundId::Thm21III,
        BoundId::Thm21IV,
        BoundId::Thm21V,
        BoundId::Thm21VI,
        BoundId::Thm23,
        BoundId::Lemma21,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::Thm21I => "Thm2.1-i",
            BoundId::Thm21II => "Thm2.1-ii",
            BoundId::Thm21III => "Thm2.1-iii",
            BoundId::Thm21IV => "Thm2.1-iv",
            BoundId::Thm21V => "Thm2.1-v",
            BoundId::Thm21VI => "Thm2.1-vi",
            BoundId::Prop21 => "Prop2.1",
            BoundId::Prop22 => "Prop2.2",
            BoundId::Thm23 => "Thm2.3",
            BoundId::Lemma21 => "Lemma2.1",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Direction of the inequality a bound asserts, read as `lhs REL rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = ">")]
    Above,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Above => ">",
        }
    }

    pub fn test(self, lhs: &ExactRational, rhs: &ExactRational) -> bool {
        match self {
            Relation::AtMost => lhs <= rhs,
            Relation::AtLeast => lhs >= rhs,
            Relation::Above => lhs > rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub applicable: bool,
    pub relation: Relation,
    #[serde(serialize_with = "crate::arith::rational::serde_fraction::option")]
    pub lhs: Option<ExactRational>,
    #[serde(serialize_with = "crate::arith::rational::serde_fraction::option")]
    pub rhs: Option<ExactRational>,
    /// Vacuously true when not applicable.
    pub holds: bool,
    pub equality: bool,
    /// Whether the stated equality characterization predicts equality for this group.
    pub equality_expected: Option<bool>,
    pub note: String,
}

impl BoundReport {
    fn skipped(bound_id: BoundId, relation: Relation, note: impl Into<String>) -> Self {
        BoundReport {
            bound_id,
            applicable: false,
            relation,
            lhs: None,
            rhs: None,
            holds: true,
            equality: false,
            equality_expected: None,
            note: note.into(),
        }
    }

    fn evaluated(
        bound_id: BoundId,
        relation: Relation,
        lhs: ExactRational,
        rhs: ExactRational,
        equality_expected: Option<bool>,
        note: impl Into<String>,
    ) -> Self {
        BoundReport {
            bound_id,
            applicable: true,
            relation,
            holds: relation.test(&lhs, &rhs),
            equality: lhs == rhs,
            lhs: Some(lhs),
            rhs: Some(rhs),
            equality_expected,
            note: note.into(),
        }
    }

    /// A report is consistent when it holds and any predicted equality matches.
    pub fn consistent(&self) -> bool {
        self.holds && self.equality_expected.is_none_or(|e| e == self.equality)
    }
}

/// Evaluates every bound against `g`, one report per bound id; bounds whose
/// hypotheses fail are reported with `applicable = false`.
pub fn check_bounds<T: Scalar>(g: &GroupSpec<T>) -> Result<Vec<BoundReport>> {
    check_bounds_with(&SpectrumEngine::default(), g)
}

pub fn check_bounds_with<T: Scalar>(
    engine: &SpectrumEngine<T>,
    g: &GroupSpec<T>,
) -> Result<Vec<BoundReport>> {
    let g = g.canonical();
    let spectrum = engine.spectrum(&g)?;
    let psi = from_scalar(&spectrum.psi()?);
    let order_f = engine.order_factorization(&g)?;
    let n = from_scalar(order_f.value());
    let psi_cn = from_scalar(&psi_cyclic(&order_f)?);
    let cyclic = g.is_cyclic();
    let nilpotent = g.is_nilpotent();
    let abelian = g.is_abelian();
    let exponent = spectrum.exponent();

    let two = T::from_small(2);
    let alpha = order_f.exponent_of(&two);
    let odd_part = order_f.value().clone() / num_traits::pow(two.clone(), alpha as usize);
    let q = order_f.smallest_prime().cloned();

    let mut out = Vec::with_capacity(BoundId::ALL.len());
    out.push(BoundReport::evaluated(
        BoundId::Prop21,
        Relation::AtMost,
        psi.clone(),
        psi_cn.clone(),
        Some(cyclic),
        "psi(G) <= psi(C_n), equality iff cyclic",
    ));
    out.push(BoundReport::evaluated(
        BoundId::Prop22,
        Relation::AtMost,
        psi.clone(),
        &n * &n,
        None,
        "psi(G) <= n^2",
    ));

    let coeff_report = |id: BoundId,
                        bound: CoefficientBound,
                        expected: Option<bool>,
                        note: String|
     -> Result<BoundReport> {
        let c = thm21_coefficient(bound)?;
        Ok(BoundReport::evaluated(
            id,
            Relation::AtMost,
            psi.clone(),
            c * &psi_cn,
            expected,
            note,
        ))
    };

    if cyclic {
        for id in [
            BoundId::Thm21I,
            BoundId::Thm21II,
            BoundId::Thm21III,
            BoundId::Thm21IV,
            BoundId::Thm21V,
            BoundId::Thm21VI,
        ] {
            out.push(BoundReport::skipped(
                id,
                Relation::AtMost,
                "group is cyclic",
            ));
        }
    } else {
        let odd_cyclic = exponent.clone()
            / num_traits::pow(two.clone(), exponent_of(&exponent, &two) as usize)
            == odd_part;
        let i_expected = abelian && alpha == 2 && odd_cyclic;
        out.push(coeff_report(
            BoundId::Thm21I,
            CoefficientBound::Universal,
            Some(i_expected),
            "7/11 psi(C_n); equality iff C2 x C2 x C_m".into(),
        )?);

        let q = q.clone().expect("noncyclic groups are nontrivial");
        match q.to_u64() {
            Some(q64) => {
                let vq = order_f.exponent_of(&q);
                let r = order_f.value().clone() / (q.clone() * q.clone());
                let ii_expected = abelian && vq == 2 && exponent == q.clone() * r;
                out.push(coeff_report(
                    BoundId::Thm21II,
                    CoefficientBound::SmallestPrime { q: q64 },
                    Some(ii_expected),
                    format!("q = {q64}; equality iff C_q x C_q x C_r"),
                )?);
            }
            None => out.push(BoundReport::skipped(
                BoundId::Thm21II,
                Relation::AtMost,
                "smallest prime exceeds u64",
            )),
        }

        if alpha == 1 {
            out.push(coeff_report(
                BoundId::Thm21III,
                CoefficientBound::TwiceOdd,
                None,
                "n = 2m, m odd".into(),
            )?);
        } else {
            out.push(BoundReport::skipped(
                BoundId::Thm21III,
                Relation::AtMost,
                format!("2-adic valuation {alpha} != 1"),
            ));
        }

        if alpha == 3 {
            let atoms = g.atoms();
            let rest: Vec<_> = atoms
                .iter()
                .filter(|a| **a != GroupSpec::Quaternion8)
                .cloned()
                .collect();
            let iv_expected = atoms.len() - rest.len() == 1 && GroupSpec::Product(rest).is_cyclic();
            out.push(coeff_report(
                BoundId::Thm21IV,
                CoefficientBound::EightTimesOdd,
                Some(iv_expected),
                "n = 8m, m odd; equality iff Q8 x C_m".into(),
            )?);
        } else {
            out.push(BoundReport::skipped(
                BoundId::Thm21IV,
                Relation::AtMost,
                format!("2-adic valuation {alpha} != 3"),
            ));
        }

        if alpha >= 4 {
            out.push(coeff_report(
                BoundId::Thm21V,
                CoefficientBound::HighTwoPower { alpha },
                None,
                format!("n = 2^{alpha} m, m odd"),
            )?);
        } else {
            out.push(BoundReport::skipped(
                BoundId::Thm21V,
                Relation::AtMost,
                format!("2-adic valuation {alpha} < 4"),
            ));
        }

        match (
            alpha,
            least_prime_power(&odd_part)?.and_then(|l| l.to_u64()),
        ) {
            (1, Some(l)) => {
                let atoms = g.atoms();
                let dihedral: Vec<_> = atoms
                    .iter()
                    .filter(|a| matches!(a, GroupSpec::Dihedral(m) if !m.is_one()))
                    .collect();
                let rest: Vec<_> = atoms
                    .iter()
                    .filter(|a| !matches!(a, GroupSpec::Dihedral(m) if !m.is_one()))
                    .cloned()
                    .collect();
                let vi_expected = matches!(dihedral.as_slice(), [GroupSpec::Dihedral(m)] if m.to_u64() == Some(l))
                    && GroupSpec::Product(rest).is_cyclic();
                out.push(coeff_report(
                    BoundId::Thm21VI,
                    CoefficientBound::Dihedral {
                        l,
                        mode: DihedralMode::Corrected,
                    },
                    Some(vi_expected),
                    format!("l = {l}, corrected coefficient; equality iff D_2l x C_m/l"),
                )?);
            }
            _ => out.push(BoundReport::skipped(
                BoundId::Thm21VI,
                Relation::AtMost,
                "needs n = 2m with odd m >= 3",
            )),
        }
    }

    if nilpotent && !order_f.value().is_one() {
        let bound = from_scalar(&thm23_lower_bound(&order_f)?);
        let prime_exponent = crate::arith::factor(&exponent)
            .map(|f| is_squarefree(&f))
            .unwrap_or(false);
        // the equality characterization is exact for p-groups only
        let expected = (order_f.omega() == 1).then_some(prime_exponent);
        out.push(BoundReport::evaluated(
            BoundId::Thm23,
            Relation::AtLeast,
            psi.clone(),
            bound,
            expected,
            "nilpotent: psi(G) >= prod p(p^a - 1) + 1, equality iff Sylows of prime exponent",
        ));
    } else {
        out.push(BoundReport::skipped(
            BoundId::Thm23,
            Relation::AtLeast,
            "group is not nilpotent or is trivial",
        ));
    }

    let lemma_applies = nilpotent && !cyclic && alpha == 2 && odd_part > T::one() && {
        let f = engine.factorization_of(&odd_part)?;
        is_squarefree(&f)
    };
    if lemma_applies {
        let f = engine.factorization_of(&odd_part)?;
        let lower = lemma21_lower_bound(&f)?;
        out.push(BoundReport::evaluated(
            BoundId::Lemma21,
            Relation::Above,
            &psi / (&n * &n),
            lower,
            None,
            "psi''(G) > phi(m)/(2m) for noncyclic nilpotent G of order 4m, m odd squarefree",
        ));
    } else {
        out.push(BoundReport::skipped(
            BoundId::Lemma21,
            Relation::Above,
            "needs a noncyclic nilpotent group of order 4m, m odd squarefree >= 3",
        ));
    }
    Ok(out)
}

fn exponent_of<T: Scalar>(n: &T, p: &T) -> u32 {
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && (n.clone() % p.clone()).is_zero() {
        n = n / p.clone();
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_u64;
    use crate::group::{parse_group_spec, psi};

    fn spec(s: &str) -> GroupSpec<u64> {
        parse_group_spec(s).unwrap()
    }

    fn report(g: &str, id: BoundId) -> BoundReport {
        check_bounds(&spec(g))
            .unwrap()
            .into_iter()
            .find(|r| r.bound_id == id)
            .unwrap()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(
            thm21_coefficient(CoefficientBound::SmallestPrime { q: 2 }).unwrap(),
            rat(7, 11)
        );
        assert_eq!(
            thm21_coefficient(CoefficientBound::Dihedral {
                l: 3,
                mode: DihedralMode::Corrected
            })
            .unwrap(),
            rat(13, 21)
        );
        assert_eq!(
            thm21_coefficient(CoefficientBound::Dihedral {
                l: 3,
                mode: DihedralMode::AsPrinted
            })
            .unwrap(),
            rat(25, 21)
        );
        assert_eq!(
            thm21_coefficient(CoefficientBound::HighTwoPower { alpha: 4 }).unwrap(),
            rat(2055, 3591)
        );
        assert!(thm21_coefficient(CoefficientBound::SmallestPrime { q: 4 }).is_err());
        assert!(thm21_coefficient(CoefficientBound::HighTwoPower { alpha: 3 }).is_err());
        assert!(thm21_coefficient(CoefficientBound::Dihedral {
            l: 15,
            mode: DihedralMode::Corrected
        })
        .is_err());
        assert!(thm21_coefficient(CoefficientBound::Dihedral {
            l: 2,
            mode: DihedralMode::Corrected
        })
        .is_err());
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            equality_family(&FamilyParams::Universal { m: 3u64 }).unwrap(),
            spec("C2 x C2 x C3")
        );
        assert_eq!(
            equality_family(&FamilyParams::EightTimesOdd { m: 3u64 }).unwrap(),
            spec("Q8 x C3")
        );
        assert_eq!(
            equality_family(&FamilyParams::SmallestPrime { q: 3u64, r: 5 }).unwrap(),
            spec("C3 x C3 x C5")
        );
        assert_eq!(
            equality_family(&FamilyParams::Dihedral { m: 45u64 }).unwrap(),
            spec("D10 x C9")
        );
        assert!(equality_family(&FamilyParams::Universal { m: 4u64 }).is_err());
        assert!(equality_family(&FamilyParams::SmallestPrime { q: 3u64, r: 10 }).is_err());
        assert!(equality_family(&FamilyParams::SmallestPrime { q: 5u64, r: 21 }).is_err());
        assert!(equality_family(&FamilyParams::Dihedral { m: 1u64 }).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(thm22_classify(&rat(7, 9)), GroupProperty::Cyclic);
        assert_eq!(thm22_classify(&rat(27, 64)), GroupProperty::Nilpotent);
        assert_eq!(thm22_classify(&rat(1, 100)), GroupProperty::None);
        assert_eq!(thm22_classify(&rat(7, 16)), GroupProperty::Abelian);
        assert_eq!(thm22_classify(&rat(211, 3600)), GroupProperty::None);
    }

    #[test]
    fn nilpotent_bound_examples() {
        assert_eq!(thm23_lower_bound(&factor_u64(9).unwrap()).unwrap(), 25);
        assert_eq!(psi(&spec("C3 x C3")).unwrap(), 25);
        assert_eq!(thm23_lower_bound(&factor_u64(12).unwrap()).unwrap(), 37);
        assert_eq!(
            thm23_lower_bound(&factor_u64(101).unwrap()).unwrap(),
            101 * 101 - 101 + 1
        );
        assert!(thm23_lower_bound(&factor_u64(1).unwrap()).is_err());
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(
            lemma21_lower_bound(&factor_u64(15).unwrap()).unwrap(),
            rat(4, 15)
        );
        assert_eq!(
            lemma21_lower_bound(&factor_u64(3).unwrap()).unwrap(),
            rat(1, 3)
        );
        assert_eq!(
            lemma21_lower_bound(&factor_u64(105).unwrap()).unwrap(),
            rat(8, 35)
        );
        assert!(lemma21_lower_bound(&factor_u64(10).unwrap()).is_err());
        assert!(lemma21_lower_bound(&factor_u64(45).unwrap()).is_err());
        assert!(lemma21_lower_bound(&factor_u64(1).unwrap()).is_err());
    }

    #[test]
    fn check_bounds_examples() {
        let r = report("C2 x C2 x C3", BoundId::Thm21I);
        assert!(r.applicable && r.equality && r.holds);
        assert_eq!(r.lhs, Some(int(49)));
        assert_eq!(r.rhs, Some(int(49)));

        let r = report("Q8 x C5", BoundId::Thm21IV);
        assert!(r.equality && r.holds);
        assert_eq!(r.lhs, Some(int(567)));

        let r = report("C30", BoundId::Prop21);
        assert!(r.equality);
        assert!(!report("C30", BoundId::Thm21I).applicable);
    }

    #[test]
    fn reports_are_consistent_for_small_groups() {
        for s in [
            "C2 x C2",
            "D6",
            "D10 x C9",
            "Q8",
            "D8 x C3",
            "C2 x C8",
            "C2 x C2 x C2 x C2",
            "C3 x C3 x C5",
            "D6 x C3",
        ] {
            let reports = check_bounds(&spec(s)).unwrap();
            assert_eq!(reports.len(), BoundId::ALL.len());
            for r in reports {
                assert!(r.consistent(), "{s}: {r:?}");
            }
        }
    }

    #[test]
    fn valuation_exclusive_bounds() {
        for (s, id) in [
            ("D6", BoundId::Thm21III),
            ("Q8 x C3", BoundId::Thm21IV),
            ("C2 x C8", BoundId::Thm21V),
        ] {
            let reports = check_bounds(&spec(s)).unwrap();
            let applicable: Vec<BoundId> = reports
                .iter()
                .filter(|r| {
                    r.applicable
                        && matches!(
                            r.bound_id,
                            BoundId::Thm21III | BoundId::Thm21IV | BoundId::Thm21V
                        )
                })
                .map(|r| r.bound_id)
                .collect();
            assert_eq!(applicable, vec![id], "{s}");
        }
    }
}
