#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use pointed_posets::homology::open_interval_complex;
use pointed_posets::partitions::{Element, FamilySpec, PointedPartition, DEFAULT_ELEMENT_CAP};
use pointed_posets::posetcore::{are_isomorphic, chain, family_poset, poset_product, FinitePoset};

pub fn poset(spec: FamilySpec) -> FinitePoset {
    family_poset(&spec, DEFAULT_ELEMENT_CAP).unwrap().poset
}

fn partition(e: &Element) -> &PointedPartition {
    e.as_partition().expect("family without an added top")
}

/// How the zero block of a type B interval is matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroRule {
    /// `β_λ` when the zero-block pointings agree, `βB'_λ` otherwise.
    TwoShapes,
    /// As `TwoShapes`, but `B'_λ` when the lower end has no zero block.
    WithBPrime,
}

/// Factors predicted for the interval `[u, v]` of `A`, `B` or `MA`; trivial
/// one-element factors are left out.
pub fn interval_factors(spec: &FamilySpec, u: &PointedPartition, v: &PointedPartition) -> Vec<FamilySpec> {
    interval_factors_with(spec, u, v, ZeroRule::WithBPrime)
}

pub fn interval_factors_with(
    spec: &FamilySpec,
    u: &PointedPartition,
    v: &PointedPartition,
    rule: ZeroRule,
) -> Vec<FamilySpec> {
    let ground = u.ground();
    let inside = |outer: u32| u.blocks().iter().filter(move |b| b.members & !outer == 0);
    let mut out = Vec::new();
    match spec {
        FamilySpec::A { .. } => {
            for big in v.blocks() {
                let lambda = inside(big.members).count();
                if lambda > 1 {
                    out.push(FamilySpec::AFixed { n: lambda, i: 1 });
                }
            }
        }
        FamilySpec::MA { .. } => {
            for big in v.blocks() {
                let small: Vec<_> = inside(big.members).collect();
                let nu = small.iter().filter(|b| b.pointed & !big.pointed == 0).count();
                if small.len() > 1 {
                    out.push(FamilySpec::MAInterval { n: small.len(), i: nu });
                }
            }
        }
        FamilySpec::B { .. } => {
            // one representative per pair of opposite blocks
            for big in v.blocks().iter().filter(|b| b.members < ground.negate(b.members)) {
                let lambda = inside(big.members).count();
                if lambda > 1 {
                    out.push(FamilySpec::AFixed { n: lambda, i: 1 });
                }
            }
            if let Some(z) = v.zero_block() {
                let lambda = inside(z.members).count() / 2;
                let lower = u.zero_block().map_or(0, |b| b.pointed);
                if lambda > 0 {
                    out.push(if rule == ZeroRule::WithBPrime && u.zero_block().is_none() {
                        FamilySpec::BInterval { n: lambda }
                    } else if lower == z.pointed {
                        FamilySpec::Beta { n: lambda }
                    } else {
                        FamilySpec::BetaBInterval { n: lambda }
                    });
                }
            }
        }
        other => panic!("no interval decomposition for {other}"),
    }
    out.sort_by_key(|s| (s.name(), s.n(), s.i()));
    out
}

#[derive(Debug, Default)]
pub struct DecompositionOutcome {
    pub intervals: usize,
    pub failures: Vec<String>,
    /// failing intervals whose lower end has no zero block and upper end has one
    pub zero_free_bottom_failures: usize,
}

/// Check every interval of `spec` against the product its blocks predict.
pub fn check_interval_decompositions(spec: FamilySpec) -> DecompositionOutcome {
    check_interval_decompositions_with(spec, ZeroRule::WithBPrime)
}

pub fn check_interval_decompositions_with(spec: FamilySpec, rule: ZeroRule) -> DecompositionOutcome {
    let fp = family_poset(&spec, DEFAULT_ELEMENT_CAP).unwrap();
    let p = &fp.poset;
    let mut factors: HashMap<FamilySpec, FinitePoset> = HashMap::new();
    let mut products: HashMap<Vec<FamilySpec>, FinitePoset> = HashMap::new();
    let mut outcome = DecompositionOutcome::default();
    for a in 0..p.len() {
        for b in p.up_set(a).ones() {
            let (u, v) = (partition(&fp.elements[a]), partition(&fp.elements[b]));
            let key = interval_factors_with(&spec, u, v, rule);
            let product = products.entry(key.clone()).or_insert_with(|| {
                key.iter().fold(chain(1), |acc, s| {
                    let f = factors.entry(*s).or_insert_with(|| poset(*s));
                    poset_product(&acc, f)
                })
            });
            let interval = p.interval(a, b).unwrap();
            outcome.intervals += 1;
            if !are_isomorphic(&interval, product).unwrap() {
                outcome.failures.push(format!("[{}, {}] vs {key:?}", p.label(a), p.label(b)));
                if u.zero_block().is_none() && v.zero_block().is_some() {
                    outcome.zero_free_bottom_failures += 1;
                }
            }
        }
    }
    outcome
}

/// Both recursions: `Σ_{a≤c≤b} μ(a,c) = 0` and `Σ_{a≤c≤b} μ(c,b) = 0` for `a < b`.
pub fn mobius_sums_vanish(p: &FinitePoset) -> bool {
    (0..p.len()).all(|a| {
        p.up_set(a).ones().filter(|&b| b != a).all(|b| {
            let between: Vec<usize> = p.up_set(a).ones().filter(|&c| p.leq(c, b)).collect();
            let left: BigInt = between.iter().map(|&c| &p.mobius_row(a)[c]).sum();
            let right: BigInt = between.iter().map(|&c| &p.mobius_row(c)[b]).sum();
            left.is_zero() && right.is_zero()
        })
    })
}

/// `μ(a, b)` equals the reduced Euler characteristic of the open interval.
pub fn philip_hall_holds(p: &FinitePoset) -> bool {
    (0..p.len()).all(|a| {
        p.up_set(a).ones().filter(|&b| b != a).all(|b| {
            let chi = open_interval_complex(p, a, b).unwrap().reduced_euler_characteristic();
            p.mobius(a, b).unwrap() == chi
        })
    })
}

/// `μ_{P×Q}((a,c),(b,d)) = μ_P(a,b) μ_Q(c,d)` for all comparable pairs.
pub fn mobius_multiplicative(p: &FinitePoset, q: &FinitePoset) -> bool {
    let pq = poset_product(p, q);
    let nq = q.len();
    (0..p.len()).all(|a| {
        (0..nq).all(|c| {
            p.up_set(a).ones().all(|b| {
                q.up_set(c).ones().all(|d| {
                    pq.mobius(a * nq + c, b * nq + d).unwrap() == &p.mobius_row(a)[b] * &q.mobius_row(c)[d]
                })
            })
        })
    })
}
