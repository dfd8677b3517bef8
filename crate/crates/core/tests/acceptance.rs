//! Acceptance suite: one timed PASS/FAIL line per criterion.
//!
//! Two criteria cannot hold as stated and are pinned as known failures; the
//! run fails if any other criterion fails or if a pinned one starts passing.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;

use lehmer_core::arith::rational::{int, parse_fraction, rat, ExactRational};
use lehmer_core::arith::{euler_phi, factor_u64, is_squarefree};
use lehmer_core::bounds::{
    equality_family, lemma21_lower_bound, thm21_coefficient, thm23_lower_bound, CoefficientBound,
    DihedralMode, FamilyParams,
};
use lehmer_core::carmichael::{fermat_oracle, korselt_check};
use lehmer_core::group::{
    abelian_groups, order_spectrum, parse_group_spec, psi_cyclic, GroupSpec, SpectrumEngine,
};
use lehmer_core::lehmer::pi::over_pi_squared;
use lehmer_core::lehmer::{
    abundancy_bound, exclude_k, min_k, parse_profile, refined_threshold, thm31_threshold,
    thm32_ladder, thm32_rung, threshold_r, CaseReason, LadderMode, LehmerProfile, RefinedCase,
};
use lehmer_core::scan::{scan_totient_divisibility, ScanOptions};

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    limit: Duration,
    /// Cannot hold as stated; expected to print FAIL.
    known_unattainable: bool,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn frac(s: &str) -> ExactRational {
    parse_fraction(s).unwrap()
}

fn psi_ratio(spec: &str) -> ExactRational {
    let g = parse_group_spec::<u64>(spec).unwrap();
    let n = g.order().unwrap();
    let psi: u64 = order_spectrum(&g)
        .unwrap()
        .entries()
        .iter()
        .map(|(d, c)| d * c)
        .sum();
    // ψ(C_n) from the divisor sum Σ d φ(d), independent of the product formula
    let psi_cn: u64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| d * euler_phi(&factor_u64(d).unwrap()))
        .sum();
    ExactRational::new(BigInt::from(psi), BigInt::from(psi_cn))
}

fn constants_exact() -> Outcome {
    let checks = [
        ("psi(C2 x C2)/psi(C4)", psi_ratio("C2 x C2"), frac("7/11")),
        ("psi(D6)/psi(C6)", psi_ratio("D6"), frac("13/21")),
        ("psi(Q8)/psi(C8)", psi_ratio("Q8"), frac("27/43")),
        (
            "smallest-prime bound at q=2",
            thm21_coefficient(CoefficientBound::SmallestPrime { q: 2 }).unwrap(),
            frac("7/11"),
        ),
        (
            "threshold alpha=1",
            thm31_threshold(1).unwrap(),
            frac("13/42"),
        ),
        (
            "threshold alpha=2",
            thm31_threshold(2).unwrap(),
            frac("7/24"),
        ),
        (
            "threshold alpha=3",
            thm31_threshold(3).unwrap(),
            frac("9/32"),
        ),
        (
            "threshold alpha=4",
            thm31_threshold(4).unwrap(),
            frac("2055/8064"),
        ),
        ("threshold_R(3,2)", threshold_r(3, 2).unwrap(), frac("7/24")),
        (
            "chain 7/16 (21/44 + 1/11)",
            rat(7, 16) * (rat(21, 44) + rat(1, 11)),
            frac("175/704"),
        ),
        (
            "refined q=5",
            refined_threshold(RefinedCase::Q5No7),
            frac("175/704"),
        ),
        (
            "chain 7/16 (1804/3570 + 1/17)",
            rat(7, 16) * (rat(1804, 3570) + rat(1, 17)),
            frac("1007/4080"),
        ),
        (
            "refined q=5,7",
            refined_threshold(RefinedCase::Q5With7No13),
            frac("1007/4080"),
        ),
    ];
    for (name, got, want) in &checks {
        ensure(got == want, || format!("{name}: got {got}, want {want}"))?;
    }
    Ok(format!("{} exact equalities", checks.len()))
}

fn abundancy_constants() -> Outcome {
    let mut detail = Vec::new();
    for (profile, coefficient, printed, tol) in [
        ("generic", "24", "2.431708", "0.0000005"),
        (
            "3!|n,5!|n,7!|n,11!|n,13!|n",
            "715715/18432",
            "3.9343",
            "0.00005",
        ),
    ] {
        let a = abundancy_bound(&parse_profile(profile).unwrap()).unwrap();
        ensure(a.coefficient == frac(coefficient), || {
            format!("{profile}: coefficient {}", a.coefficient)
        })?;
        let (lo, hi) = over_pi_squared(&a.coefficient);
        let err = std::cmp::max((&lo - frac(printed)).abs(), (&hi - frac(printed)).abs());
        ensure(err <= frac(tol), || {
            format!("{profile}: {coefficient}/pi^2 is {err} away from {printed}")
        })?;
        detail.push(format!("{coefficient}/pi^2 ~ {printed}"));
    }
    Ok(detail.join(", "))
}

fn family_holds(
    params: FamilyParams<u64>,
    bound: CoefficientBound,
    engine: &SpectrumEngine<u64>,
) -> Result<(), String> {
    let g = equality_family(&params).map_err(|e| format!("{params:?}: {e}"))?;
    let n = g.order().unwrap();
    let psi = engine.psi(&g).unwrap();
    let psi_cn = psi_cyclic(&factor_u64(n).unwrap()).unwrap();
    let c = thm21_coefficient(bound).unwrap();
    ensure(
        ExactRational::from_integer(psi.into()) == c * BigInt::from(psi_cn),
        || format!("{g}: psi = {psi}, psi(C_n) = {psi_cn}"),
    )
}

fn equality_families() -> Outcome {
    const LIMIT: u64 = 10_000;
    let engine = SpectrumEngine::default();
    let mut count = 0;
    for m in (1..=LIMIT / 4).step_by(2) {
        family_holds(
            FamilyParams::Universal { m },
            CoefficientBound::Universal,
            &engine,
        )?;
        count += 1;
    }
    for q in (2..=100u64).filter(|&q| factor_u64(q).unwrap().factors() == [(q, 1)]) {
        for r in 1..=LIMIT / (q * q) {
            if r > 1
                && factor_u64(r)
                    .unwrap()
                    .smallest_prime()
                    .is_some_and(|&p| p <= q)
            {
                continue;
            }
            family_holds(
                FamilyParams::SmallestPrime { q, r },
                CoefficientBound::SmallestPrime { q },
                &engine,
            )?;
            count += 1;
        }
    }
    for m in (1..=LIMIT / 8).step_by(2) {
        family_holds(
            FamilyParams::EightTimesOdd { m },
            CoefficientBound::EightTimesOdd,
            &engine,
        )?;
        count += 1;
    }
    for m in (3..=LIMIT / 2).step_by(2) {
        let l = factor_u64(m)
            .unwrap()
            .prime_powers()
            .into_iter()
            .min()
            .unwrap();
        family_holds(
            FamilyParams::Dihedral { m },
            CoefficientBound::Dihedral {
                l,
                mode: DihedralMode::Corrected,
            },
            &engine,
        )?;
        count += 1;
    }
    Ok(format!(
        "{count} groups across (i), (ii), (iv), (vi corrected)"
    ))
}

fn pinned_discrepancy() -> Outcome {
    let c = thm21_coefficient(CoefficientBound::Dihedral {
        l: 3,
        mode: DihedralMode::AsPrinted,
    })
    .unwrap();
    let predicted = c * int(21);
    let psi_d6: u64 = order_spectrum(&GroupSpec::<u64>::Dihedral(3))
        .unwrap()
        .entries()
        .iter()
        .map(|(d, k)| d * k)
        .sum();
    ensure(predicted == int(25), || {
        format!("as-printed prediction is {predicted}, not 25")
    })?;
    ensure(psi_d6 == 13, || format!("psi(D6) = {psi_d6}"))?;
    Ok("as printed at l=3, m=3 predicts 25, psi(D6) = 13: mismatch reproduced".into())
}

fn oracle_equivalence() -> Outcome {
    let results: Vec<(u64, bool, bool)> = (4..=100_000u64)
        .into_par_iter()
        .filter_map(|n| {
            let c = korselt_check(&n).unwrap();
            c.composite
                .then(|| (n, c.is_carmichael, fermat_oracle(n).unwrap()))
        })
        .collect();
    let mismatches: Vec<u64> = results.iter().filter(|r| r.1 != r.2).map(|r| r.0).collect();
    ensure(mismatches.is_empty(), || {
        format!(
            "Korselt and Fermat disagree at {:?}",
            &mismatches[..mismatches.len().min(5)]
        )
    })?;
    let found: Vec<u64> = results.iter().filter(|r| r.2).map(|r| r.0).collect();
    ensure(found.len() == 16, || {
        format!("{} Fermat pseudoprimes to every base", found.len())
    })?;
    ensure(found[..3] == [561, 1105, 1729], || {
        format!("begins {:?}", &found[..3])
    })?;
    Ok(format!(
        "agreement on all {} composites <= 10^5; 16 Carmichael numbers, first {:?}",
        results.len(),
        &found[..3]
    ))
}

fn family_groups(limit: u64) -> Vec<GroupSpec<u64>> {
    let mut groups: Vec<GroupSpec<u64>> = (1..=limit)
        .flat_map(|n| abelian_groups(n).unwrap())
        .collect();
    groups.extend((1..=limit / 2).map(GroupSpec::Dihedral));
    groups.extend(
        (1..=limit / 8).map(|m| GroupSpec::product([GroupSpec::Quaternion8, GroupSpec::Cyclic(m)])),
    );
    groups
}

fn element_of_full_order(g: &GroupSpec<u64>) -> bool {
    order_spectrum(g)
        .unwrap()
        .entries()
        .contains_key(&g.order().unwrap())
}

fn psi_props() -> Outcome {
    let groups = family_groups(512);
    for g in &groups {
        let n = g.order().unwrap();
        let psi = order_spectrum(g).unwrap().psi().unwrap();
        let psi_cn = psi_cyclic(&factor_u64(n).unwrap()).unwrap();
        ensure(psi <= psi_cn, || {
            format!("{g}: psi {psi} > psi(C_n) {psi_cn}")
        })?;
        ensure((psi == psi_cn) == element_of_full_order(g), || {
            format!("{g}: equality does not track cyclicity")
        })?;
        ensure(psi <= n * n, || format!("{g}: psi {psi} > n^2"))?;
    }
    let small = family_groups(64);
    let mut pairs = 0;
    for a in &small {
        for b in &small {
            let (na, nb) = (a.order().unwrap(), b.order().unwrap());
            if na.gcd(&nb) != 1 || na * nb > 4096 {
                continue;
            }
            let ab = GroupSpec::product([a.clone(), b.clone()]);
            let (pa, pb) = (
                order_spectrum(a).unwrap().psi().unwrap(),
                order_spectrum(b).unwrap().psi().unwrap(),
            );
            ensure(
                order_spectrum(&ab).unwrap().psi().unwrap() == pa * pb,
                || format!("{a} x {b} not multiplicative"),
            )?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{} groups of order <= 512, {pairs} coprime pairs",
        groups.len()
    ))
}

fn nilpotent_suite() -> Outcome {
    let mut groups = 0;
    let mut mismatches = Vec::new();
    for n in 2..=512u64 {
        let f = factor_u64(n).unwrap();
        let bound = thm23_lower_bound(&f).unwrap();
        for g in abelian_groups(n).unwrap() {
            let s = order_spectrum(&g).unwrap();
            let psi = s.psi().unwrap();
            ensure(psi >= bound, || format!("{g}: psi {psi} < bound {bound}"))?;
            let elementary_sylows = is_squarefree(&factor_u64(s.exponent()).unwrap());
            if (psi == bound) != elementary_sylows {
                mismatches.push(format!("{g} (psi {psi}, bound {bound})"));
            }
            groups += 1;
        }
    }
    ensure(mismatches.is_empty(), || {
        format!(
            "bound holds for all {groups} groups, but equality differs from elementary Sylow shape in {} of them, e.g. {}",
            mismatches.len(),
            mismatches[0]
        )
    })?;
    Ok(format!("{groups} abelian groups"))
}

fn lemma_strict() -> Outcome {
    let engine = SpectrumEngine::default();
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in (3..=10_000u64).step_by(2) {
        let f = factor_u64(n).unwrap();
        if !is_squarefree(&f) {
            continue;
        }
        let g = GroupSpec::product([
            GroupSpec::Cyclic(2),
            GroupSpec::Cyclic(2),
            GroupSpec::Cyclic(n),
        ]);
        let value = engine.psi_double_prime(&g).unwrap();
        if value <= lemma21_lower_bound(&f).unwrap() {
            failures.push(n);
        }
        checked += 1;
    }
    ensure(failures.is_empty(), || {
        format!(
            "{} of {checked} odd squarefree n violate it, first {:?} (psi''(C2 x C2 x C5) = 147/400 < 2/5)",
            failures.len(),
            &failures[..failures.len().min(4)]
        )
    })?;
    Ok(format!("{checked} values of n"))
}

fn floor(profile: &str) -> Result<u64, String> {
    min_k(&parse_profile(profile).map_err(|e| e.to_string())?)
        .map(|m| m.value)
        .map_err(|e| e.to_string())
}

fn min_k_matrix() -> Outcome {
    let three = parse_profile("3|n").unwrap();
    ensure(floor("3|n")? == 4, || "3|n does not give 4".into())?;
    for k in 2..=30 {
        let e = exclude_k(&three, k).unwrap();
        let by_congruence = e
            .cases
            .iter()
            .all(|c| matches!(c.reason, Some(CaseReason::Congruence { .. })));
        ensure(by_congruence == (k % 3 != 1), || {
            format!("3|n, k = {k}: congruence rule mismatch")
        })?;
    }
    ensure(floor("3!|n")? >= 3, || "3!|n below 3".into())?;
    ensure(floor("3!|n,5!|n,7!|n,11!|n,13!|n")? >= 4, || {
        "all tracked primes excluded gives below 4".into()
    })?;
    ensure(floor("q=3")? >= 4, || "q=3 below 4".into())?;
    for q in [17u64, 19, 23, 29, 101, 997, 7919] {
        ensure(floor(&format!("q={q}"))? >= 4, || format!("q={q} below 4"))?;
    }
    ensure(min_k(&LehmerProfile::generic()).unwrap().value >= 3, || {
        "generic below 3".into()
    })?;
    Ok(format!(
        "3|n -> 4 (k = 1 mod 3), 3!|n -> {}, five primes excluded -> {}, q=3 -> {}, q=17 -> {}, generic -> {}",
        floor("3!|n")?,
        floor("3!|n,5!|n,7!|n,11!|n,13!|n")?,
        floor("q=3")?,
        floor("q=17")?,
        floor("generic")?
    ))
}

fn desk_scan() -> Outcome {
    const HI: u64 = 1_000_000;
    let opts = ScanOptions {
        jobs: 1,
        ..ScanOptions::default()
    };
    let started = Instant::now();
    let full = scan_totient_divisibility(2, HI, None, &opts).map_err(|e| e.to_string())?;
    let scan_time = started.elapsed();
    let composite: Vec<u64> = full.composite_hits().map(|h| h.n).collect();
    ensure(composite.is_empty(), || {
        format!("composite hits {composite:?}")
    })?;

    // prime count from a plain Eratosthenes sieve
    let mut sieve = vec![true; HI as usize + 1];
    let mut primes = 0;
    for i in 2..=HI as usize {
        if sieve[i] {
            primes += 1;
            (i * i..=HI as usize)
                .step_by(i)
                .for_each(|j| sieve[j] = false);
        }
    }
    ensure(full.hits.len() == primes, || {
        format!("{} hits, {primes} primes", full.hits.len())
    })?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (segment, stop) in [(10_007u64, 7usize), (65_536, 1), (99_991, 9)] {
        let path = dir.path().join(format!("cp-{segment}.json"));
        let opts = ScanOptions {
            jobs: 1,
            segment,
            stop_after: Some(stop),
            ..ScanOptions::default()
        };
        let partial =
            scan_totient_divisibility(2, HI, Some(&path), &opts).map_err(|e| e.to_string())?;
        ensure(!partial.is_complete(), || {
            "interruption did not interrupt".into()
        })?;
        let opts = ScanOptions {
            jobs: 1,
            segment,
            ..ScanOptions::default()
        };
        let resumed =
            scan_totient_divisibility(2, HI, Some(&path), &opts).map_err(|e| e.to_string())?;
        ensure(resumed == full, || {
            format!("resume after {stop} segments of {segment} differs")
        })?;
    }
    Ok(format!(
        "no composite n <= 10^6, {primes} prime hits in {:.2} s single-threaded; 3 interrupted runs resume identically",
        scan_time.as_secs_f64()
    ))
}

fn ladder_divergence() -> Outcome {
    let printed = thm32_rung(17, 4, LadderMode::AsPrinted);
    let strict = thm32_rung(17, 4, LadderMode::Strict);
    ensure(
        printed.value == rat(10, 17) && printed.conclusion() == Some(5),
        || format!("as printed: {printed:?}"),
    )?;
    ensure(
        strict.value == rat(35, 34) && strict.conclusion().is_none(),
        || format!("strict: {strict:?}"),
    )?;
    let strict_floor = thm32_ladder(17, LadderMode::Strict).unwrap().floor;
    ensure(strict_floor == 4, || {
        format!("strict ladder floor {strict_floor}")
    })?;
    let report = min_k(&parse_profile("q=17").unwrap()).unwrap();
    let ladder = report.ladder.ok_or("q=17 report has no ladder")?;
    ensure(ladder.diverges() && ladder.strict.floor == 4, || {
        "report does not surface the divergence".into()
    })?;
    Ok(format!(
        "q=17, R=4: as printed 10/17 < 1 gives k >= 5, strict 35/34 >= 1 stops at k >= 4; report ladder floors strict {} / as printed {}",
        ladder.strict.floor, ladder.as_printed.floor
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "constant reproduction (exact)",
            limit: Duration::from_secs(1),
            known_unattainable: false,
            run: constants_exact,
        },
        Criterion {
            name: "abundancy constants",
            limit: Duration::from_secs(1),
            known_unattainable: false,
            run: abundancy_constants,
        },
        Criterion {
            name: "equality families, orders <= 10^4",
            limit: Duration::from_secs(10),
            known_unattainable: false,
            run: equality_families,
        },
        Criterion {
            name: "pinned dihedral discrepancy",
            limit: Duration::from_secs(1),
            known_unattainable: false,
            run: pinned_discrepancy,
        },
        Criterion {
            name: "Korselt = Fermat oracle, n <= 10^5",
            limit: Duration::from_secs(120),
            known_unattainable: false,
            run: oracle_equivalence,
        },
        Criterion {
            name: "psi bounds and multiplicativity suite",
            limit: Duration::from_secs(60),
            known_unattainable: false,
            run: psi_props,
        },
        Criterion {
            name: "nilpotent lower bound suite",
            limit: Duration::from_secs(60),
            known_unattainable: true,
            run: nilpotent_suite,
        },
        Criterion {
            name: "witness lower bound strictness",
            limit: Duration::from_secs(10),
            known_unattainable: true,
            run: lemma_strict,
        },
        Criterion {
            name: "min_k matrix",
            limit: Duration::from_secs(10),
            known_unattainable: false,
            run: min_k_matrix,
        },
        Criterion {
            name: "desk-scale scan with checkpoint resume",
            limit: Duration::from_secs(60),
            known_unattainable: false,
            run: desk_scan,
        },
        Criterion {
            name: "ladder dual-mode divergence",
            limit: Duration::from_secs(1),
            known_unattainable: false,
            run: ladder_divergence,
        },
    ];

    let mut unexpected = Vec::new();
    let mut passed = 0;
    for c in &criteria {
        let started = Instant::now();
        let outcome = (c.run)();
        let elapsed = started.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        let tag = match (ok, c.known_unattainable) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!(
            "{tag:<12} {:<40} {:>8.3} s / {:>3} s  {detail}",
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        if ok {
            passed += 1;
        }
        if ok == c.known_unattainable {
            unexpected.push(c.name);
        }
    }
    println!("{passed} of {} criteria pass", criteria.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome: {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
