use serde::Serialize;

use crate::arith::rational::{fraction_string, parse_fraction, rat, to_decimal, ExactRational};
use crate::bounds::{thm21_coefficient, CoefficientBound, DihedralMode};
use crate::error::{Error, Result};
use crate::group::{parse_group_spec, psi_prime};
use crate::lehmer::pi::over_pi_squared;
use crate::lehmer::{
    abundancy_bound, parse_profile, refined_threshold, thm31_threshold, thm32_condition,
    threshold_r, LadderMode, RefinedCase,
};
use num_traits::Signed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A pinned discrepancy that still reproduces.
    ExpectedFail,
    /// A pinned discrepancy that no longer reproduces.
    UnexpectedPass,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::ExpectedFail => "expected-fail",
            CheckStatus::UnexpectedPass => "unexpected-pass",
        }
    }

    pub fn is_ok(self) -> bool {
        matches!(self, CheckStatus::Pass | CheckStatus::ExpectedFail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantCheck {
    pub name: String,
    pub derivation: String,
    pub expected: String,
    pub computed: String,
    pub status: CheckStatus,
}

fn exact(
    name: &str,
    derivation: &str,
    expected: &str,
    computed: Result<ExactRational>,
) -> ConstantCheck {
    let want = parse_fraction(expected).expect("literal fraction");
    let (computed, ok) = match computed {
        Ok(v) => (fraction_string(&v), v == want),
        Err(e) => (format!("error: {e}"), false),
    };
    ConstantCheck {
        name: name.into(),
        derivation: derivation.into(),
        expected: expected.into(),
        computed,
        status: if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
    }
}

/// The profile must yield `coefficient` exactly and its `1/π²` enclosure
/// must sit within `tol` of the printed decimal.
fn approx(name: &str, profile: &str, coefficient: &str, printed: &str, tol: &str) -> ConstantCheck {
    let want = parse_fraction(coefficient).expect("literal fraction");
    let printed_value = parse_fraction(printed).expect("literal decimal");
    let tol = parse_fraction(tol).expect("literal tolerance");
    let result = parse_profile(profile).and_then(|p| abundancy_bound(&p));
    let (computed, ok) = match result {
        Ok(a) => {
            let (lo, hi) = over_pi_squared(&a.coefficient);
            let close = |x: &ExactRational| (x - &printed_value).abs() <= tol;
            let ok = a.coefficient == want && close(&lo) && close(&hi);
            (
                format!(
                    "({})/π² in [{}, {}]",
                    a.coefficient,
                    to_decimal(&lo, 12),
                    to_decimal(&hi, 12)
                ),
                ok,
            )
        }
        Err(e) => (format!("error: {e}"), false),
    };
    ConstantCheck {
        name: name.into(),
        derivation: format!("abundancy coefficient for profile {profile}"),
        expected: format!("({coefficient})/π² ≈ {printed}"),
        computed,
        status: if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
    }
}

/// The engine's value, provided the hand-written chain agrees with it.
fn along_chain(engine: ExactRational, chain: ExactRational) -> Result<ExactRational> {
    if engine == chain {
        Ok(engine)
    } else {
        Err(Error::invalid(format!(
            "engine gives {} but the chain gives {}",
            fraction_string(&engine),
            fraction_string(&chain)
        )))
    }
}

fn psi_ratio(spec: &str) -> Result<ExactRational> {
    psi_prime(&parse_group_spec::<u64>(spec)?)
}

/// Re-derives every published constant in exact arithmetic.
pub fn verify_paper_constants() -> Vec<ConstantCheck> {
    let mut checks = vec![
        exact("7/11", "psi(C2 x C2)/psi(C4)", "7/11", psi_ratio("C2 x C2")),
        exact("13/21", "psi(D6)/psi(C6)", "13/21", psi_ratio("D6")),
        exact("27/43", "psi(Q8)/psi(C8)", "27/43", psi_ratio("Q8")),
        exact(
            "smallest-prime bound at q=2",
            "(q^2-1)q+1)(q+1)/(q^5+1) at q = 2",
            "7/11",
            thm21_coefficient(CoefficientBound::SmallestPrime { q: 2 }),
        ),
    ];
    for (alpha, want) in [(1, "13/42"), (2, "7/24"), (3, "9/32"), (4, "2055/8064")] {
        checks.push(exact(
            &format!("threshold alpha={alpha}"),
            "psi'' threshold for order 2^alpha m, m odd",
            want,
            thm31_threshold(alpha),
        ));
    }
    checks.push(exact(
        "threshold_R(3,2)",
        "7(q-1+R)/(16Rq) at q=3, R=2",
        "7/24",
        threshold_r(3, 2),
    ));
    checks.push(exact(
        "175/704",
        "7/16 (21/44 + 1/11) for 5 | n, 3, 7 !| n",
        "175/704",
        along_chain(
            refined_threshold(RefinedCase::Q5No7),
            rat(7, 16) * (rat(21, 44) + rat(1, 11)),
        ),
    ));
    checks.push(exact(
        "1007/4080",
        "7/16 (1804/3570 + 1/17) for 5, 7 | n, 3, 13 !| n",
        "1007/4080",
        along_chain(
            refined_threshold(RefinedCase::Q5With7No13),
            rat(7, 16) * (rat(1804, 3570) + rat(1, 17)),
        ),
    ));
    checks.push(approx("24/π²", "generic", "24", "2.431708", "0.0000005"));
    checks.push(approx(
        "715715/(18432π²)",
        "3!|n,5!|n,7!|n,11!|n,13!|n",
        "715715/18432",
        "3.9343",
        "0.00005",
    ));
    checks.push(exact(
        "ladder q=17 R=4 as printed",
        "(1/2)(q-1+R)/q at q=17, R=4",
        "10/17",
        Ok(thm32_condition(17, 4, LadderMode::AsPrinted)),
    ));
    checks.push(exact(
        "ladder q=17 R=4 strict",
        "(7/8)(q-1+R)/q at q=17, R=4",
        "35/34",
        Ok(thm32_condition(17, 4, LadderMode::Strict)),
    ));

    let mut pinned = exact(
        "dihedral bound as printed at l=3",
        "1/3 + 2l/psi(C_l) at l = 3 against psi(D6)/psi(C6)",
        "13/21",
        thm21_coefficient(CoefficientBound::Dihedral {
            l: 3,
            mode: DihedralMode::AsPrinted,
        }),
    );
    pinned.status = match pinned.status {
        CheckStatus::Fail => CheckStatus::ExpectedFail,
        _ => CheckStatus::UnexpectedPass,
    };
    checks.push(pinned);
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_is_ok() {
        let checks = verify_paper_constants();
        for c in &checks {
            assert!(c.status.is_ok(), "{c:?}");
        }
        let pinned = checks.last().unwrap();
        assert_eq!(pinned.status, CheckStatus::ExpectedFail);
        assert_eq!(pinned.computed, "25/21");
        assert_eq!(
            checks
                .iter()
                .filter(|c| c.status == CheckStatus::Pass)
                .count(),
            checks.len() - 1
        );
    }

    #[test]
    fn approx_rejects_wrong_digits() {
        assert_eq!(
            approx("x", "generic", "24", "2.431709", "0.0000005").status,
            CheckStatus::Fail
        );
        assert_eq!(
            approx("x", "generic", "25", "2.431708", "0.0000005").status,
            CheckStatus::Fail
        );
    }
}
