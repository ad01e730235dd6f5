//! Acceptance run: one line per criterion. Exits non-zero when a criterion
//! does not have its recorded status.

mod common;

use std::time::Instant;

use num_bigint::BigInt;

use common::{
    check_interval_decompositions_with, mobius_multiplicative, mobius_sums_vanish, philip_hall_holds, poset,
    ZeroRule,
};
use pointed_posets::homology::{bounded_report, cohen_macaulay_report, interval_homology, DEFAULT_REPORT_LIMIT};
use pointed_posets::hopf::{
    coproduct_series, coproduct_structural, is_coassociative, lambert_coefficient, mobius_generators,
};
use pointed_posets::identities::{
    egf_counts, verify_lemma, verify_theorems, EgfFamily, Lemma, LemmaSpec, TheoremGroup, TheoremRow,
};
use pointed_posets::partitions::{enumerate_family, graded_counts, FamilySpec, DEFAULT_ELEMENT_CAP};
use pointed_posets::posetcore::{is_semimodular, is_totally_semimodular, FinitePoset};

/// Criteria known not to hold as stated; the run checks that they still fail
/// in the documented way.
const EXPECTED_RED: &[u32] = &[5, 11];

/// Large enough for MA with 8 points.
const LARGE_CAP: usize = 300_000;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn big(k: usize) -> BigInt {
    BigInt::from(k)
}

fn pow(base: usize, e: usize) -> BigInt {
    num_traits::pow(big(base), e)
}

fn factorial(k: usize) -> BigInt {
    (1..=k).map(big).product()
}

fn theorem_rows(group: TheoremGroup, max_n: usize) -> Vec<TheoremRow> {
    verify_theorems(group, max_n, DEFAULT_ELEMENT_CAP).unwrap().rows
}

fn polynomial_verdict(rows: &[TheoremRow]) -> Verdict {
    let bad: Vec<String> = rows.iter().filter(|r| !r.verdict).map(|r| format!("{}({},{:?})", r.family, r.n, r.i)).collect();
    Verdict::new(bad.is_empty(), format!("{} polynomials, mismatches {:?}", rows.len(), bad))
}

fn criterion_1() -> Verdict {
    polynomial_verdict(&theorem_rows(TheoremGroup::A, 6))
}

fn criterion_2() -> Verdict {
    let mut rows = theorem_rows(TheoremGroup::B, 4);
    rows.extend(theorem_rows(TheoremGroup::Beta, 4));
    polynomial_verdict(&rows)
}

fn criterion_3() -> Verdict {
    polynomial_verdict(&theorem_rows(TheoremGroup::MA, 5))
}

fn criterion_4() -> Verdict {
    let mut rows = theorem_rows(TheoremGroup::A, 6);
    rows.extend(theorem_rows(TheoremGroup::B, 4));
    rows.extend(theorem_rows(TheoremGroup::Beta, 4));
    rows.extend(theorem_rows(TheoremGroup::MA, 5));
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.constant_verdict)
        .map(|r| format!("{}({},{:?})", r.family, r.n, r.i))
        .collect();
    Verdict::new(bad.is_empty(), format!("{} constants, mismatches {:?}", rows.len(), bad))
}

fn criterion_5() -> Verdict {
    let mut specs = Vec::new();
    for n in 1..=5 {
        specs.push(FamilySpec::AFixed { n, i: 1 });
    }
    for n in 1..=3 {
        specs.push(FamilySpec::BInterval { n });
    }
    for n in 1..=4 {
        specs.push(FamilySpec::MA { n });
        specs.extend((1..=n).map(|i| FamilySpec::MAInterval { n, i }));
        specs.push(FamilySpec::AExtended { n });
    }
    let bad: Vec<String> = specs
        .iter()
        .filter(|s| !is_totally_semimodular(&poset(**s)))
        .map(|s| s.to_string())
        .collect();
    let control = is_semimodular(&poset(FamilySpec::A { n: 3 }));
    Verdict::new(
        bad.is_empty() && !control,
        format!("{} families, not totally semimodular {:?}; A(3) semimodular: {control}", specs.len(), bad),
    )
}

/// Torsion-free, concentrated in degree rank-2, with the given rank there.
fn bounded_check(p: &FinitePoset, rank: &BigInt) -> bool {
    let (report, h) = bounded_report(p).unwrap();
    let top = p.top().unwrap();
    report.pass && big(h.betti(p.rank(top) as isize - 2) as usize) == *rank
}

fn criterion_6() -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut check = |spec: FamilySpec, ok: bool| {
        checked += 1;
        if !ok {
            bad.push(spec.to_string());
        }
    };
    for n in 3..=5 {
        let spec = FamilySpec::AFixed { n, i: 1 };
        let p = poset(spec);
        let (_, h) = bounded_report(&p).unwrap();
        check(spec, h.is_torsion_free() && h.is_concentrated_in(n as isize - 3) && bounded_check(&p, &pow(n, n - 2)));
    }
    for n in 3..=5 {
        let spec = FamilySpec::A { n };
        let p = poset(spec);
        let mut total = BigInt::from(0);
        let mut ok = true;
        for m in p.maximal_elements() {
            let h = interval_homology(&p, p.bottom(), m).unwrap();
            ok &= h.is_torsion_free() && h.is_concentrated_in(n as isize - 3);
            total += h.betti(n as isize - 3);
        }
        check(spec, ok && total == pow(n, n - 1));
    }
    for n in 2..=3 {
        let spec = FamilySpec::BInterval { n };
        check(spec, bounded_check(&poset(spec), &pow(2 * n, n - 1)));
    }
    for n in 2..=4 {
        for i in 1..=n {
            let spec = FamilySpec::MAInterval { n, i };
            let rank = factorial(i) * factorial(2 * n - i - 1) / factorial(n);
            check(spec, bounded_check(&poset(spec), &rank));
        }
    }
    for n in 1..=4 {
        let spec = FamilySpec::AExtended { n };
        check(spec, bounded_check(&poset(spec), &pow(n - 1, n - 1)));
    }
    Verdict::new(bad.is_empty(), format!("{checked} homology checks, failures {bad:?}"))
}

fn criterion_7() -> Verdict {
    let mut specs: Vec<FamilySpec> = (3..=5).map(|n| FamilySpec::AFixed { n, i: 1 }).collect();
    specs.extend((3..=5).map(|n| FamilySpec::A { n }));
    specs.extend((2..=3).map(|n| FamilySpec::BInterval { n }));
    for n in 2..=4 {
        specs.extend((1..=n).map(|i| FamilySpec::MAInterval { n, i }));
    }
    specs.extend((1..=4).map(|n| FamilySpec::AExtended { n }));
    let mut intervals = 0;
    let mut bad = Vec::new();
    for spec in &specs {
        let report = cohen_macaulay_report(&poset(*spec), DEFAULT_REPORT_LIMIT).unwrap();
        intervals += report.intervals.len();
        if !report.pass {
            bad.push(spec.to_string());
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!("{} families, {intervals} intervals, failures {bad:?}", specs.len()),
    )
}

fn criterion_8() -> Verdict {
    let mut bad = Vec::new();
    for n in 2..=7 {
        if coproduct_structural(n, DEFAULT_ELEMENT_CAP).unwrap() != coproduct_series(n).unwrap() {
            bad.push(format!("coproduct a_{n}"));
        }
    }
    for n in 2..=5 {
        if !is_coassociative(n, DEFAULT_ELEMENT_CAP).unwrap() {
            bad.push(format!("coassociativity a_{n}"));
        }
    }
    let generators = mobius_generators(6).unwrap();
    for (n, g) in (2..=6).zip(&generators) {
        let p = poset(FamilySpec::AFixed { n, i: 1 });
        let mu = p.mobius(p.bottom(), p.top().unwrap()).unwrap();
        if *g != lambert_coefficient(n) || *g != mu {
            bad.push(format!("mobius a_{n}"));
        }
    }
    Verdict::new(bad.is_empty(), format!("generators {generators:?}, failures {bad:?}"))
}

fn criterion_9() -> Verdict {
    let mut bad = Vec::new();
    for (family, egf) in [("A", EgfFamily::A), ("MA", EgfFamily::MA)] {
        let table = egf_counts(egf, 8).unwrap();
        for n in 1..=8 {
            let spec = FamilySpec::from_parts(family, n, None).unwrap();
            let counts: Vec<BigInt> = graded_counts(&spec, LARGE_CAP).unwrap().into_iter().map(BigInt::from).collect();
            let predicted: Vec<BigInt> = table[n - 1].iter().rev().cloned().collect();
            if counts != predicted {
                bad.push(spec.to_string());
            }
        }
    }
    let fixed = [
        (FamilySpec::A { n: 3 }, 10),
        (FamilySpec::B { n: 2 }, 13),
        (FamilySpec::MA { n: 3 }, 17),
    ];
    for (spec, size) in fixed {
        if enumerate_family(&spec, DEFAULT_ELEMENT_CAP).unwrap().len() != size {
            bad.push(format!("size of {spec}"));
        }
    }
    Verdict::new(bad.is_empty(), format!("A and MA up to 8 points, failures {bad:?}"))
}

fn criterion_10() -> Verdict {
    let mut bad = Vec::new();
    let mut evaluations = 0;
    for lemma in Lemma::ALL {
        let report = verify_lemma(&LemmaSpec::new(lemma));
        evaluations += report.evaluations;
        if !report.pass {
            bad.push(lemma.name().to_string());
        }
        if verify_lemma(&LemmaSpec::new(lemma).perturbed()).pass {
            bad.push(format!("perturbed {} passed", lemma.name()));
        }
    }
    Verdict::new(bad.is_empty(), format!("{evaluations} evaluations, failures {bad:?}"))
}

fn criterion_11() -> Verdict {
    let mut families: Vec<FamilySpec> = (1..=5).map(|n| FamilySpec::A { n }).collect();
    families.extend((1..=3).map(|n| FamilySpec::B { n }));
    families.extend((1..=4).map(|n| FamilySpec::MA { n }));
    let mut notes = Vec::new();
    let mut pass = true;
    let mobius_ok = families.iter().all(|s| {
        let p = poset(*s);
        mobius_sums_vanish(&p) && philip_hall_holds(&p)
    });
    pass &= mobius_ok;
    notes.push(format!("mobius sums and Philip Hall: {mobius_ok}"));
    let products = [
        (FamilySpec::AFixed { n: 3, i: 1 }, FamilySpec::BInterval { n: 2 }),
        (FamilySpec::MAInterval { n: 3, i: 2 }, FamilySpec::Beta { n: 2 }),
        (FamilySpec::A { n: 3 }, FamilySpec::B { n: 2 }),
    ];
    let mult_ok = products.iter().all(|(a, b)| mobius_multiplicative(&poset(*a), &poset(*b)));
    pass &= mult_ok;
    notes.push(format!("product multiplicativity: {mult_ok}"));
    let (mut intervals, mut literal_failures, mut refined_failures, mut zero_free) = (0, 0, 0, 0);
    for spec in &families {
        let literal = check_interval_decompositions_with(*spec, ZeroRule::TwoShapes);
        let refined = check_interval_decompositions_with(*spec, ZeroRule::WithBPrime);
        intervals += literal.intervals;
        literal_failures += literal.failures.len();
        zero_free += literal.zero_free_bottom_failures;
        refined_failures += refined.failures.len();
    }
    pass &= literal_failures == 0;
    notes.push(format!(
        "decompositions: {intervals} intervals, {literal_failures} match no product of the stated shapes \
         ({zero_free} of them rise from an element without zero block); {refined_failures} fail once B'(k) \
         is admitted for those"
    ));
    Verdict::new(pass, notes.join("; "))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Verdict); 11] = [
        (1, "type A characteristic polynomials, n <= 6", criterion_1),
        (2, "type B, B' and beta characteristic polynomials, n <= 4", criterion_2),
        (3, "multi-pointed characteristic polynomials, n <= 5", criterion_3),
        (4, "constant terms", criterion_4),
        (5, "total semimodularity and the A(3) control", criterion_5),
        (6, "homology ranks and concentration", criterion_6),
        (7, "Cohen-Macaulay interval reports", criterion_7),
        (8, "incidence Hopf algebra", criterion_8),
        (9, "generating-function counts", criterion_9),
        (10, "summation identities and perturbed controls", criterion_10),
        (11, "property suites", criterion_11),
    ];
    let mut unexpected = 0;
    for (id, title, run) in criteria {
        let started = Instant::now();
        let v = run();
        let expected = !EXPECTED_RED.contains(&id);
        let status = if v.pass { "PASS" } else { "FAIL" };
        let mark = if v.pass == expected { "" } else { " (unexpected)" };
        println!(
            "criterion {id:>2} {status}{mark}: {title}; {} [{:.2?}]",
            v.detail,
            started.elapsed()
        );
        if v.pass != expected {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria differ from their recorded status");
        std::process::exit(1);
    }
}
