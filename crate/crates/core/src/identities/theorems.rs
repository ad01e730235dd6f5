use num_bigint::BigInt;
use serde::Serialize;

use super::{closed_form, expected_constant, IdentityError};
use crate::exactalg::IntPolynomial;
use crate::partitions::FamilySpec;
use crate::posetcore::family_poset;

/// A set of families whose characteristic polynomials are checked together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremGroup {
    /// `A`, and `A_fixed` for every `i`
    A,
    /// `B_fixed` for `0 ≤ i ≤ n` and `B_interval`
    B,
    Beta,
    /// `MA`, `MA_interval` and `MA_fixed` for every `i`
    MA,
    AExtended,
}

impl TheoremGroup {
    pub const ALL: [TheoremGroup; 5] = [
        TheoremGroup::A,
        TheoremGroup::B,
        TheoremGroup::Beta,
        TheoremGroup::MA,
        TheoremGroup::AExtended,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremGroup::A => "A",
            TheoremGroup::B => "B",
            TheoremGroup::Beta => "beta",
            TheoremGroup::MA => "MA",
            TheoremGroup::AExtended => "A_extended",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name() == name)
    }

    pub fn default_max_n(self) -> usize {
        match self {
            TheoremGroup::A | TheoremGroup::AExtended => 6,
            TheoremGroup::MA => 5,
            TheoremGroup::B | TheoremGroup::Beta => 4,
        }
    }
}

/// Every family of `group` with `1 ≤ n ≤ max_n`, sorted by parameters.
pub fn theorem_specs(group: TheoremGroup, max_n: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        match group {
            TheoremGroup::A => {
                out.push(FamilySpec::A { n });
                out.extend((1..=n).map(|i| FamilySpec::AFixed { n, i }));
            }
            TheoremGroup::B => {
                out.extend((0..=n).map(|i| FamilySpec::BFixed { n, i }));
                out.push(FamilySpec::BInterval { n });
            }
            TheoremGroup::Beta => out.push(FamilySpec::Beta { n }),
            TheoremGroup::MA => {
                out.push(FamilySpec::MA { n });
                out.extend((1..=n).map(|i| FamilySpec::MAInterval { n, i }));
                out.extend((1..=n).map(|i| FamilySpec::MAFixed { n, i }));
            }
            TheoremGroup::AExtended => out.push(FamilySpec::AExtended { n }),
        }
    }
    out
}

/// One computed-versus-predicted comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremRow {
    pub family: String,
    pub n: usize,
    pub i: Option<usize>,
    pub expected: IntPolynomial,
    pub computed: IntPolynomial,
    pub verdict: bool,
    pub expected_constant: String,
    pub computed_constant: String,
    pub constant_verdict: bool,
}

impl TheoremRow {
    pub fn passes(&self) -> bool {
        self.verdict && self.constant_verdict
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub rows: Vec<TheoremRow>,
    pub pass: bool,
}

impl TheoremReport {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "family",
            "n",
            "i",
            "expected",
            "computed",
            "verdict",
            "expected_constant",
            "computed_constant",
            "constant_verdict",
        ])
        .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.family.clone(),
                r.n.to_string(),
                r.i.map(|i| i.to_string()).unwrap_or_default(),
                r.expected.to_string(),
                r.computed.to_string(),
                verdict(r.verdict).into(),
                r.expected_constant.clone(),
                r.computed_constant.clone(),
                verdict(r.constant_verdict).into(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Compare the characteristic polynomial computed from the poset with the
/// closed form, and its constant term with the predicted constant.
pub fn check_family(
    spec: &FamilySpec,
    cap: usize,
    transform: &dyn Fn(&FamilySpec, IntPolynomial) -> IntPolynomial,
) -> Result<TheoremRow, IdentityError> {
    let expected = transform(spec, closed_form(spec)?);
    let constant: BigInt = expected_constant(spec)?;
    let computed = family_poset(spec, cap)?.poset.characteristic_polynomial()?;
    Ok(TheoremRow {
        family: spec.name().to_string(),
        n: spec.n(),
        i: spec.i(),
        verdict: computed == expected,
        constant_verdict: computed.constant_term() == constant,
        expected_constant: constant.to_string(),
        computed_constant: computed.constant_term().to_string(),
        expected,
        computed,
    })
}

/// Check every family of `group` up to `max_n`.
pub fn verify_theorems(group: TheoremGroup, max_n: usize, cap: usize) -> Result<TheoremReport, IdentityError> {
    verify_theorems_with(group, max_n, cap, &|_, p| p)
}

/// As [`verify_theorems`], with the closed forms passed through `transform`
/// first (used to confirm that a wrong prediction is detected).
pub fn verify_theorems_with(
    group: TheoremGroup,
    max_n: usize,
    cap: usize,
    transform: &dyn Fn(&FamilySpec, IntPolynomial) -> IntPolynomial,
) -> Result<TheoremReport, IdentityError> {
    let rows = theorem_specs(group, max_n)
        .iter()
        .map(|s| check_family(s, cap, transform))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = rows.iter().all(TheoremRow::passes);
    Ok(TheoremReport { rows, pass })
}
