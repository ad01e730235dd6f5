//! Incidence Hopf algebra of the maximal type A pointed intervals.
//!
//! The algebra is polynomial in generators `a_n`, the isomorphism class of the
//! maximal pointed interval on `n` points; `a_1`, the one-point poset, is the
//! unit. Monomials are sorted lists of generator indices `≥ 2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{series_reversion, ExactAlgError, RationalSeries, Var};
use crate::partitions::{enumerate_family, Element, FamilySpec, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("generator index must be at least {min}, got {n}")]
    BadIndex { n: usize, min: usize },
    #[error("coefficient of {term} is {value}, not an integer")]
    NonIntegerCoefficient { term: String, value: String },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    ExactAlg(#[from] ExactAlgError),
}

/// Sorted generator indices, each at least 2; empty is the unit.
pub type Monomial = Vec<usize>;

fn monomial_of(k: usize) -> Monomial {
    if k >= 2 {
        vec![k]
    } else {
        Vec::new()
    }
}

fn monomial_product(a: &[usize], b: &[usize]) -> Monomial {
    let mut m: Monomial = a.iter().chain(b).copied().collect();
    m.sort_unstable();
    m
}

fn monomial_string(m: &[usize]) -> String {
    if m.is_empty() {
        "1".into()
    } else {
        m.iter().map(|k| format!("a_{k}")).collect::<Vec<_>>().join("·")
    }
}

/// `Σ c · (∏ a_λ) ⊗ a_k` with nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HopfTensor {
    terms: BTreeMap<(Monomial, usize), BigInt>,
}

#[derive(Serialize)]
struct TermJson {
    left: Vec<usize>,
    right: usize,
    coeff: String,
}

impl HopfTensor {
    pub fn add_term(&mut self, left: Monomial, right: usize, c: BigInt) {
        let mut left = left;
        left.retain(|&k| k >= 2);
        left.sort_unstable();
        let e = self.terms.entry((left.clone(), right)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(left, right));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, usize, &BigInt)> {
        self.terms.iter().map(|((l, r), c)| (l, *r, c))
    }

    pub fn coefficient(&self, left: &[usize], right: usize) -> BigInt {
        self.terms.get(&(left.to_vec(), right)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// JSON list of `{left, right, coeff}` with decimal-string coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<TermJson> = self
            .terms()
            .map(|(l, r, c)| TermJson {
                left: l.clone(),
                right: r,
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_value(items).expect("tensor serializes")
    }
}

impl std::fmt::Display for HopfTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(l, r, c)| {
                let right = monomial_string(&monomial_of(r));
                let body = format!("{}⊗{}", monomial_string(l), right);
                if c.is_one() {
                    body
                } else {
                    format!("{c}·({body})")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Δ a_n = Σ_π [0̂, π] ⊗ [π, 1̂]` over the maximal interval with `n` points.
///
/// `[0̂, π]` is the product of the classes of its blocks, `[π, 1̂]` is `a_k`
/// with `k` the number of blocks.
pub fn coproduct_structural(n: usize, cap: usize) -> Result<HopfTensor, HopfError> {
    if n < 2 {
        return Err(HopfError::BadIndex { n, min: 2 });
    }
    let elements = enumerate_family(&FamilySpec::AFixed { n, i: 1 }, cap)?;
    let mut t = HopfTensor::default();
    for e in &elements {
        let Element::Partition(p) = e else { continue };
        let left = p.blocks().iter().map(|b| b.members.count_ones() as usize).collect();
        t.add_term(left, p.blocks().len(), BigInt::one());
    }
    Ok(t)
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The same coproduct from the composition formula for `Δ a_n / (n-1)!`.
pub fn coproduct_series(n: usize) -> Result<HopfTensor, HopfError> {
    if n < 2 {
        return Err(HopfError::BadIndex { n, min: 2 });
    }
    let mut sums: BTreeMap<(Monomial, usize), BigRational> = BTreeMap::new();
    for parts in compositions(n) {
        let k = parts.len();
        let weight = parts.iter().fold(BigInt::one(), |acc, &p| acc * factorial(p - 1));
        let key = (monomial_product(&parts, &[]), k);
        *sums.entry(key).or_insert_with(BigRational::zero) += BigRational::new(BigInt::one(), weight);
    }
    let mut t = HopfTensor::default();
    for ((left, k), s) in sums {
        let c = s * BigRational::new(factorial(n - 1), factorial(k - 1));
        if !c.is_integer() {
            return Err(HopfError::NonIntegerCoefficient {
                term: format!("{}⊗a_{k}", monomial_string(&left)),
                value: c.to_string(),
            });
        }
        t.add_term(left, k, c.to_integer());
    }
    Ok(t)
}

/// A tensor of two monomials.
pub type Tensor2 = BTreeMap<(Monomial, Monomial), BigInt>;
/// A tensor of three monomials.
pub type Tensor3 = BTreeMap<(Monomial, Monomial, Monomial), BigInt>;

fn accumulate<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    let e = map.entry(key).or_insert_with(BigInt::zero);
    *e += c;
}

fn prune<K: Ord + Clone>(map: &mut BTreeMap<K, BigInt>) {
    map.retain(|_, c| !c.is_zero());
}

/// Coproduct as a two-monomial tensor; `Δ(1) = 1 ⊗ 1`.
fn as_tensor2(t: &HopfTensor) -> Tensor2 {
    let mut out = Tensor2::new();
    for (l, r, c) in t.terms() {
        accumulate(&mut out, (l.clone(), monomial_of(r)), c.clone());
    }
    out
}

/// `Δ` extended multiplicatively to a monomial.
pub fn coproduct_monomial(m: &[usize], cap: usize) -> Result<Tensor2, HopfError> {
    let mut acc: Tensor2 = BTreeMap::from([((Vec::new(), Vec::new()), BigInt::one())]);
    for &g in m {
        let dg = as_tensor2(&coproduct_structural(g, cap)?);
        let mut next = Tensor2::new();
        for ((l1, r1), c1) in &acc {
            for ((l2, r2), c2) in &dg {
                accumulate(
                    &mut next,
                    (monomial_product(l1, l2), monomial_product(r1, r2)),
                    c1 * c2,
                );
            }
        }
        prune(&mut next);
        acc = next;
    }
    Ok(acc)
}

/// `((Δ ⊗ id) Δ a_n, (id ⊗ Δ) Δ a_n)`.
pub fn coassociativity_sides(n: usize, cap: usize) -> Result<(Tensor3, Tensor3), HopfError> {
    let delta = coproduct_structural(n, cap)?;
    let mut left_side = Tensor3::new();
    let mut right_side = Tensor3::new();
    for (l, k, c) in delta.terms() {
        for ((a, b), c2) in coproduct_monomial(l, cap)? {
            accumulate(&mut left_side, (a, b, monomial_of(k)), c * c2);
        }
        for ((a, b), c2) in coproduct_monomial(&monomial_of(k), cap)? {
            accumulate(&mut right_side, (l.clone(), a, b), c * c2);
        }
    }
    prune(&mut left_side);
    prune(&mut right_side);
    Ok((left_side, right_side))
}

pub fn is_coassociative(n: usize, cap: usize) -> Result<bool, HopfError> {
    let (l, r) = coassociativity_sides(n, cap)?;
    Ok(l == r)
}

/// `ε(1) = 1` (that is, `ε(a_1) = 1`) and `ε` vanishes on every other monomial.
pub fn counit(m: &[usize]) -> BigInt {
    if m.iter().all(|&k| k < 2) {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// `((id ⊗ ε) Δ a_n, (ε ⊗ id) Δ a_n)` as linear combinations of monomials.
pub fn counit_sides(t: &HopfTensor) -> (BTreeMap<Monomial, BigInt>, BTreeMap<Monomial, BigInt>) {
    let mut right_applied = BTreeMap::new();
    let mut left_applied = BTreeMap::new();
    for (l, k, c) in t.terms() {
        accumulate(&mut right_applied, l.clone(), c * counit(&monomial_of(k)));
        accumulate(&mut left_applied, monomial_of(k), c * counit(l));
    }
    prune(&mut right_applied);
    prune(&mut left_applied);
    (right_applied, left_applied)
}

/// Both counit axioms hold for `Δ a_n`.
pub fn satisfies_counit(n: usize, cap: usize) -> Result<bool, HopfError> {
    let t = coproduct_structural(n, cap)?;
    let expected = BTreeMap::from([(monomial_of(n), BigInt::one())]);
    let (r, l) = counit_sides(&t);
    Ok(r == expected && l == expected)
}

/// `μ_n = (n-1)! · [x^n] W(x)` for `n = 2..=max_n`, where `W` is the
/// compositional inverse of `x e^x`.
pub fn mobius_generators(max_n: usize) -> Result<Vec<BigInt>, HopfError> {
    if max_n < 2 {
        return Err(HopfError::BadIndex { n: max_n, min: 2 });
    }
    let order = max_n as u32;
    let w = series_reversion(&RationalSeries::var_times_exp(Var::X, order), order)?;
    (2..=max_n)
        .map(|n| {
            let c = w.coefficient_of(Var::X, n as u32) * BigRational::from_integer(factorial(n - 1));
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(HopfError::NonIntegerCoefficient {
                    term: format!("mu_{n}"),
                    value: c.to_string(),
                })
            }
        })
        .collect()
}

/// `(-1)^(n-1) n^(n-2)`.
pub fn lambert_coefficient(n: usize) -> BigInt {
    let magnitude = num_traits::pow(BigInt::from(n), n - 2);
    if n.is_odd() {
        magnitude
    } else {
        -magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::DEFAULT_ELEMENT_CAP;

    fn expected_three() -> HopfTensor {
        let mut t = HopfTensor::default();
        t.add_term(vec![], 3, BigInt::one());
        t.add_term(vec![2], 2, BigInt::from(4));
        t.add_term(vec![3], 1, BigInt::one());
        t
    }

    #[test]
    fn small_coproducts() {
        let mut two = HopfTensor::default();
        two.add_term(vec![], 2, BigInt::one());
        two.add_term(vec![2], 1, BigInt::one());
        assert_eq!(coproduct_structural(2, DEFAULT_ELEMENT_CAP).unwrap(), two);
        assert_eq!(coproduct_series(2).unwrap(), two);
        assert_eq!(coproduct_structural(3, DEFAULT_ELEMENT_CAP).unwrap(), expected_three());
        assert_eq!(coproduct_series(3).unwrap(), expected_three());
        assert_eq!(expected_three().to_string(), "1⊗a_3 + 4·(a_2⊗a_2) + a_3⊗1");
    }

    #[test]
    fn json_form() {
        let v = expected_three().to_json();
        assert_eq!(v[1], serde_json::json!({"left": [2], "right": 2, "coeff": "4"}));
    }

    #[test]
    fn counit_on_a2() {
        let t = coproduct_structural(2, DEFAULT_ELEMENT_CAP).unwrap();
        let (r, l) = counit_sides(&t);
        assert_eq!(r, BTreeMap::from([(vec![2], BigInt::one())]));
        assert_eq!(l, r);
    }

    #[test]
    fn lambert_numbers() {
        let mu = mobius_generators(4).unwrap();
        assert_eq!(mu, vec![BigInt::from(-1), BigInt::from(3), BigInt::from(-16)]);
        assert_eq!(lambert_coefficient(4), BigInt::from(-16));
    }

    #[test]
    fn bad_indices() {
        assert!(matches!(coproduct_series(1), Err(HopfError::BadIndex { .. })));
        assert!(matches!(mobius_generators(1), Err(HopfError::BadIndex { .. })));
        assert!(matches!(coproduct_structural(8, 100), Err(HopfError::Partition(_))));
    }
}
