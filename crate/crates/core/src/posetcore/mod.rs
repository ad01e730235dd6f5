//! Finite posets stored as reachability bitsets plus their Hasse diagram.

mod family;
mod iso;
mod semimodular;

pub use family::{family_poset, FamilyPoset};
pub use iso::{are_isomorphic, are_isomorphic_within, compare_posets, IsoCheck, ISOMORPHISM_LIMIT};
pub use semimodular::{
    is_semimodular, is_totally_semimodular, semimodularity_violation,
    total_semimodularity_violation, SemimodularityViolation,
};

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::IntPolynomial;
use crate::partitions::PartitionError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("poset is not pure: cover {lower} < {upper} does not raise the rank by one")]
    NotPure { lower: String, upper: String },
    #[error("poset has no unique minimal element")]
    NoMinimum,
    #[error("poset has no unique maximal element")]
    NotBounded,
    #[error("{a} and {b} are not comparable")]
    NotComparable { a: String, b: String },
    #[error("maximal elements have different ranks")]
    UnequalMaxRanks,
    #[error("poset of size {size} exceeds the limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// An immutable finite poset with a unique minimal element and a rank
/// function compatible with its covers.
#[derive(Clone)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    rank: Vec<usize>,
    bottom: usize,
    /// elements sorted by rank, ties by index
    linear_extension: Vec<usize>,
    mobius_rows: Vec<OnceLock<Vec<BigInt>>>,
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FinitePoset")
            .field("len", &self.len())
            .field("covers", &self.covers().len())
            .finish()
    }
}

/// Build a poset from labels and an order predicate on indices.
///
/// The predicate is checked for reflexivity, antisymmetry and transitivity.
pub fn build_poset(
    labels: Vec<String>,
    mut leq: impl FnMut(usize, usize) -> bool,
) -> Result<FinitePoset, PosetError> {
    let n = labels.len();
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for a in 0..n {
        for b in 0..n {
            if leq(a, b) {
                up[a].insert(b);
            }
        }
    }
    for a in 0..n {
        if !up[a].contains(a) {
            return Err(PosetError::NotPartialOrder(format!("{} is not below itself", labels[a])));
        }
        for b in up[a].ones() {
            if b != a && up[b].contains(a) {
                return Err(PosetError::NotPartialOrder(format!(
                    "{} and {} are below each other",
                    labels[a], labels[b]
                )));
            }
            if !up[b].is_subset(&up[a]) {
                return Err(PosetError::NotPartialOrder(format!(
                    "order is not transitive through {}",
                    labels[b]
                )));
            }
        }
    }
    FinitePoset::from_up_sets(labels, up)
}

impl FinitePoset {
    /// Assumes `up` is a valid (reflexive, transitive, antisymmetric) relation.
    fn from_up_sets(labels: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, ups) in up.iter().enumerate() {
            for b in ups.ones() {
                down[b].insert(a);
            }
        }
        let minimal: Vec<usize> = (0..n).filter(|&a| down[a].count_ones(..) == 1).collect();
        if minimal.len() != 1 {
            return Err(PosetError::NoMinimum);
        }
        let bottom = minimal[0];

        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for a in 0..n {
            let mut strict_up = up[a].clone();
            strict_up.set(a, false);
            for b in strict_up.ones() {
                // b covers a iff nothing lies strictly between
                let mut between = strict_up.clone();
                between.intersect_with(&down[b]);
                if between.count_ones(..) == 1 {
                    upper_covers[a].push(b);
                    lower_covers[b].push(a);
                }
            }
        }

        let mut rank = vec![usize::MAX; n];
        rank[bottom] = 0;
        let mut queue = std::collections::VecDeque::from([bottom]);
        while let Some(a) = queue.pop_front() {
            for &b in &upper_covers[a] {
                if rank[b] == usize::MAX {
                    rank[b] = rank[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        for a in 0..n {
            for &b in &upper_covers[a] {
                if rank[b] != rank[a] + 1 {
                    return Err(PosetError::NotPure {
                        lower: labels[a].clone(),
                        upper: labels[b].clone(),
                    });
                }
            }
        }
        let mut linear_extension: Vec<usize> = (0..n).collect();
        linear_extension.sort_by_key(|&a| (rank[a], a));
        Ok(Self {
            labels,
            up,
            down,
            upper_covers,
            lower_covers,
            rank,
            bottom,
            linear_extension,
            mobius_rows: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// `{b : a ≤ b}`
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// `{b : b ≤ a}`
    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|a| self.upper_covers[a].iter().map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn rank(&self, a: usize) -> usize {
        self.rank[a]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// The unique maximal element, if there is one.
    pub fn top(&self) -> Option<usize> {
        let maximal = self.maximal_elements();
        (maximal.len() == 1).then(|| maximal[0])
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.upper_covers[a].is_empty()).collect()
    }

    /// Elements ordered by rank; every `a < b` has `a` first.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear_extension
    }

    fn check_index(&self, a: usize) -> Result<(), PosetError> {
        if a < self.len() {
            Ok(())
        } else {
            Err(PosetError::IndexOutOfRange(a))
        }
    }

    fn require_leq(&self, a: usize, b: usize) -> Result<(), PosetError> {
        self.check_index(a)?;
        self.check_index(b)?;
        if self.leq(a, b) {
            Ok(())
        } else {
            Err(PosetError::NotComparable {
                a: self.labels[a].clone(),
                b: self.labels[b].clone(),
            })
        }
    }

    /// `μ(a, c)` for every element `c` (zero where `a ≰ c`), memoized.
    pub fn mobius_row(&self, a: usize) -> &[BigInt] {
        self.mobius_rows[a].get_or_init(|| {
            let mut row = vec![BigInt::zero(); self.len()];
            row[a] = BigInt::one();
            for &c in &self.linear_extension {
                if c == a || !self.up[a].contains(c) {
                    continue;
                }
                let mut sum = BigInt::zero();
                for d in self.down[c].ones() {
                    if d != c && self.up[a].contains(d) {
                        sum += &row[d];
                    }
                }
                row[c] = -sum;
            }
            row
        })
    }

    pub fn mobius(&self, a: usize, b: usize) -> Result<BigInt, PosetError> {
        self.require_leq(a, b)?;
        Ok(self.mobius_row(a)[b].clone())
    }

    /// `Σ_a μ(0̂, a) x^(r - rk a)` where `r` is the common rank of the maximal
    /// elements.
    pub fn characteristic_polynomial(&self) -> Result<IntPolynomial, PosetError> {
        let maximal = self.maximal_elements();
        let r = self.rank[maximal[0]];
        if maximal.iter().any(|&m| self.rank[m] != r) {
            return Err(PosetError::UnequalMaxRanks);
        }
        let row = self.mobius_row(self.bottom);
        let mut coeffs = vec![BigInt::zero(); r + 1];
        for (a, mu) in row.iter().enumerate() {
            coeffs[r - self.rank[a]] += mu;
        }
        Ok(IntPolynomial::from_coeffs(coeffs))
    }

    /// Indices of `{c : a ≤ c ≤ b}` in increasing order.
    pub fn interval_elements(&self, a: usize, b: usize) -> Result<Vec<usize>, PosetError> {
        self.require_leq(a, b)?;
        let mut set = self.up[a].clone();
        set.intersect_with(&self.down[b]);
        Ok(set.ones().collect())
    }

    /// The induced subposet on `[a, b]`, keeping labels.
    pub fn interval(&self, a: usize, b: usize) -> Result<FinitePoset, PosetError> {
        let members = self.interval_elements(a, b)?;
        Ok(self.induced(&members))
    }

    /// Induced subposet on a convex set with a unique minimum.
    fn induced(&self, members: &[usize]) -> FinitePoset {
        let m = members.len();
        let mut up = vec![FixedBitSet::with_capacity(m); m];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                if self.leq(a, b) {
                    up[i].insert(j);
                }
            }
        }
        let labels = members.iter().map(|&a| self.labels[a].clone()).collect();
        Self::from_up_sets(labels, up).expect("interval of a ranked poset is ranked")
    }

    /// JSON dump: element strings, cover index pairs, rank array.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dump<'a> {
            elements: &'a [String],
            covers: Vec<[usize; 2]>,
            rank: &'a [usize],
        }
        serde_json::to_value(Dump {
            elements: &self.labels,
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            rank: &self.rank,
        })
        .expect("poset dump serializes")
    }
}

/// Cartesian product with the componentwise order; element `(p, q)` has
/// index `p * |Q| + q` and label `(p,q)`.
pub fn poset_product(p: &FinitePoset, q: &FinitePoset) -> FinitePoset {
    let (np, nq) = (p.len(), q.len());
    let mut labels = Vec::with_capacity(np * nq);
    for a in 0..np {
        for b in 0..nq {
            labels.push(format!("({},{})", p.labels[a], q.labels[b]));
        }
    }
    let mut up = vec![FixedBitSet::with_capacity(np * nq); np * nq];
    for a in 0..np {
        for b in 0..nq {
            let set = &mut up[a * nq + b];
            for c in p.up[a].ones() {
                for d in q.up[b].ones() {
                    set.insert(c * nq + d);
                }
            }
        }
    }
    FinitePoset::from_up_sets(labels, up).expect("product of ranked posets is ranked")
}

/// A chain with `len` elements, labelled `0..len`.
pub fn chain(len: usize) -> FinitePoset {
    build_poset((0..len).map(|k| k.to_string()).collect(), |a, b| a <= b)
        .expect("chain is a poset")
}
