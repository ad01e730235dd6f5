//! Pointed and multi-pointed partitions of `[n]` and of `[n] ⊔ [-n]`,
//! the families of posets built from them, and their order relations.

mod enumerate;
mod family;
mod text;

pub use enumerate::{enumerate_family, graded_counts, projected_count, DEFAULT_ELEMENT_CAP};
pub use family::{Element, FamilySpec};
pub use text::{canonical_string, parse_element, parse_partition};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("elements live on different ground sets")]
    GroundMismatch,
    #[error("family would have {projected} elements, above the cap of {cap}")]
    LimitExceeded { projected: u128, cap: usize },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid partition: {0}")]
    Invalid(String),
    #[error("invalid family parameters: {0}")]
    BadSpec(String),
}

/// Which kind of pointing a partition carries; determines the order relation
/// and the admissible zero-block pointings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// One pointed element per block of a partition of `[n]`.
    Pointed,
    /// A nonempty pointed subset per block of a partition of `[n]`.
    MultiPointed,
    /// Type B: zero block pointed at exactly one element when nonempty.
    TypeB,
    /// Zero block never pointed.
    TypeBeta,
    /// Zero block pointed at most once.
    TypeBetaB,
}

impl Kind {
    pub fn is_signed(self) -> bool {
        matches!(self, Kind::TypeB | Kind::TypeBeta | Kind::TypeBetaB)
    }
}

/// A block as a bitmask over the ground set together with its pointed subset.
///
/// Element `k` of `[n]` is bit `k-1`; in the signed ground set, `-k` is bit
/// `n+k-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub members: u32,
    pub pointed: u32,
}

/// The ground set `[n]` or `[n] ⊔ [-n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ground {
    pub n: u8,
    pub signed: bool,
}

impl Ground {
    pub fn new(n: usize, signed: bool) -> Self {
        Self { n: n as u8, signed }
    }

    pub fn positives(self) -> u32 {
        low_bits(self.n as u32)
    }

    pub fn full(self) -> u32 {
        if self.signed {
            low_bits(2 * self.n as u32)
        } else {
            self.positives()
        }
    }

    pub fn bit(self, e: i32) -> u32 {
        let k = e.unsigned_abs() - 1;
        if e > 0 {
            1 << k
        } else {
            1 << (self.n as u32 + k)
        }
    }

    /// Elementwise negation of a signed mask.
    pub fn negate(self, mask: u32) -> u32 {
        let n = self.n as u32;
        ((mask & self.positives()) << n) | (mask >> n)
    }

    /// Elements of `mask`, ascending by (absolute value, sign) with `-k`
    /// before `k`.
    pub fn elements(self, mask: u32) -> Vec<i32> {
        let mut out = Vec::with_capacity(mask.count_ones() as usize);
        for k in 1..=self.n as i32 {
            if self.signed && mask & self.bit(-k) != 0 {
                out.push(-k);
            }
            if mask & self.bit(k) != 0 {
                out.push(k);
            }
        }
        out
    }

    fn sort_key(self, mask: u32) -> (u32, bool) {
        self.elements(mask)
            .first()
            .map(|&e| (e.unsigned_abs(), e > 0))
            .unwrap_or((u32::MAX, true))
    }
}

pub(crate) fn low_bits(k: u32) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

/// A (multi-)pointed partition, plain or signed, in canonical form.
///
/// Non-zero blocks are sorted by their least element in (absolute value,
/// sign) order; the zero block is held separately and is `None` when empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointedPartition {
    ground: Ground,
    zero: Option<Block>,
    blocks: Vec<Block>,
}

impl PointedPartition {
    /// Build and canonicalize; see [`PointedPartition::validate`] for the
    /// structural checks.
    pub fn new(ground: Ground, zero: Option<Block>, mut blocks: Vec<Block>) -> Self {
        blocks.sort_by_key(|b| ground.sort_key(b.members));
        let zero = zero.filter(|z| z.members != 0);
        Self { ground, zero, blocks }
    }

    /// Build from signed element lists: each block is `(members, pointed)`.
    /// A block closed under negation becomes the zero block.
    pub fn from_elements(
        n: usize,
        signed: bool,
        blocks: &[(Vec<i32>, Vec<i32>)],
    ) -> Result<Self, PartitionError> {
        let ground = Ground::new(n, signed);
        let mut zero = None;
        let mut out = Vec::new();
        for (members, pointed) in blocks {
            let mut m = 0;
            let mut p = 0;
            for &e in members {
                if e == 0 || e.unsigned_abs() as usize > n || (e < 0 && !signed) {
                    return Err(PartitionError::Invalid(format!("element {e} outside ground set")));
                }
                m |= ground.bit(e);
            }
            for &e in pointed {
                if e == 0 || e.unsigned_abs() as usize > n || (e < 0 && !signed) {
                    return Err(PartitionError::Invalid(format!("element {e} outside ground set")));
                }
                p |= ground.bit(e);
            }
            let b = Block { members: m, pointed: p };
            if signed && m != 0 && ground.negate(m) == m {
                if zero.is_some() {
                    return Err(PartitionError::Invalid("two zero blocks".into()));
                }
                zero = Some(b);
            } else {
                out.push(b);
            }
        }
        Ok(Self::new(ground, zero, out))
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n as usize
    }

    pub fn zero_block(&self) -> Option<Block> {
        self.zero
    }

    /// Non-zero blocks in canonical order.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn all_blocks(&self) -> impl Iterator<Item = &Block> {
        self.zero.iter().chain(self.blocks.iter())
    }

    pub fn pointed_mask(&self) -> u32 {
        self.all_blocks().fold(0, |acc, b| acc | b.pointed)
    }

    pub fn zero_pointed_count(&self) -> u32 {
        self.zero.map_or(0, |z| z.pointed.count_ones())
    }

    /// `n` minus the number of blocks (plain) or of pairs of opposite
    /// blocks (signed).
    pub fn rank(&self) -> usize {
        let parts = if self.ground.signed {
            self.blocks.len() / 2
        } else {
            self.blocks.len()
        };
        self.n() - parts
    }

    /// Check every structural invariant of `kind`.
    pub fn validate(&self, kind: Kind) -> Result<(), PartitionError> {
        let g = self.ground;
        let bad = |m: &str| Err(PartitionError::Invalid(m.to_string()));
        if kind.is_signed() != g.signed {
            return bad("ground set does not match the family kind");
        }
        let mut seen = 0u32;
        for b in self.all_blocks() {
            if b.members == 0 {
                return bad("empty block");
            }
            if b.members & seen != 0 {
                return bad("blocks overlap");
            }
            if b.pointed & !b.members != 0 {
                return bad("pointed element outside its block");
            }
            seen |= b.members;
        }
        if seen != g.full() {
            return bad("blocks do not cover the ground set");
        }
        for b in &self.blocks {
            let pc = b.pointed.count_ones();
            match kind {
                Kind::MultiPointed if pc == 0 => return bad("block without pointed elements"),
                Kind::MultiPointed => {}
                _ if pc != 1 => return bad("block must have exactly one pointed element"),
                _ => {}
            }
            if g.signed {
                let nb = g.negate(b.members);
                if nb & b.members != 0 {
                    return bad("second block containing opposite elements");
                }
                let partner = self.blocks.iter().find(|c| c.members == nb);
                match partner {
                    Some(c) if c.pointed == g.negate(b.pointed) => {}
                    Some(_) => return bad("opposite blocks must be pointed at opposite elements"),
                    None => return bad("block without its opposite"),
                }
            }
        }
        if let Some(z) = self.zero {
            if g.negate(z.members) != z.members {
                return bad("zero block not closed under negation");
            }
            let pc = z.pointed.count_ones();
            let ok = match kind {
                Kind::TypeB => pc == 1,
                Kind::TypeBeta => pc == 0,
                Kind::TypeBetaB => pc <= 1,
                _ => false,
            };
            if !ok {
                return bad("zero block pointing not allowed for this family");
            }
        }
        Ok(())
    }

    /// Apply a (signed) permutation of the ground set. `f` must send `-e` to
    /// `-f(e)` on signed ground sets.
    pub fn relabel(&self, f: impl Fn(i32) -> i32) -> Self {
        let g = self.ground;
        let map_mask = |m: u32| g.elements(m).into_iter().fold(0, |acc, e| acc | g.bit(f(e)));
        let map_block = |b: &Block| Block {
            members: map_mask(b.members),
            pointed: map_mask(b.pointed),
        };
        Self::new(
            g,
            self.zero.as_ref().map(map_block),
            self.blocks.iter().map(map_block).collect(),
        )
    }
}

impl fmt::Display for PointedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&canonical_string(self))
    }
}

impl fmt::Debug for PointedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointedPartition({})", canonical_string(self))
    }
}

/// `p ≤ q` in the order of `kind`.
///
/// Always requires refinement. Single-pointed kinds then require every pointed
/// element of `q` to be pointed in `p`; `TypeBetaB` additionally requires the
/// zero-block pointed count not to decrease. For `MultiPointed`, each block `B`
/// of `q` must have its pointed set equal to the union of the pointed sets of a
/// nonempty subfamily of the `p`-blocks inside `B`.
pub fn leq(kind: Kind, p: &PointedPartition, q: &PointedPartition) -> Result<bool, PartitionError> {
    if p.ground != q.ground {
        return Err(PartitionError::GroundMismatch);
    }
    let refines = p
        .all_blocks()
        .all(|b| q.all_blocks().any(|c| b.members & !c.members == 0));
    if !refines {
        return Ok(false);
    }
    if kind == Kind::MultiPointed {
        return Ok(q.all_blocks().all(|big| {
            let mut covered = 0u32;
            for small in p.all_blocks().filter(|b| b.members & !big.members == 0) {
                let shared = small.pointed & big.pointed;
                if shared != 0 && shared != small.pointed {
                    return false;
                }
                covered |= shared;
            }
            covered == big.pointed
        }));
    }
    if q.pointed_mask() & !p.pointed_mask() != 0 {
        return Ok(false);
    }
    if kind == Kind::TypeBetaB && q.zero_pointed_count() < p.zero_pointed_count() {
        return Ok(false);
    }
    Ok(true)
}
