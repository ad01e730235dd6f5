use std::fmt;

use super::{leq, Block, Ground, Kind, PartitionError, PointedPartition};

/// One of the poset families, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// All pointed partitions of `[n]`.
    A { n: usize },
    /// Pointed partitions of `[n]` with `1..=i` pointed.
    AFixed { n: usize, i: usize },
    /// Pointed partitions of `[n]` plus a synthetic top element.
    AExtended { n: usize },
    /// All multi-pointed partitions of `[n]`.
    MA { n: usize },
    /// Multi-pointed partitions of `[n]` with `1..=i` pointed.
    MAFixed { n: usize, i: usize },
    /// The interval below the single block `[n]` pointed at `1..=i`.
    MAInterval { n: usize, i: usize },
    /// All pointed partitions of type B.
    B { n: usize },
    /// Type B with `±1..=±i` pointed; `i = 0` is the whole family.
    BFixed { n: usize, i: usize },
    /// The maximal interval of type B below the zero block `[±n]` pointed at `n`.
    BInterval { n: usize },
    /// Type B partitions with unpointed zero block.
    Beta { n: usize },
    /// Type B partitions with at most one pointed element in the zero block.
    BetaB { n: usize },
    /// The maximal interval of `BetaB` below the zero block `[±n]` pointed at `n`.
    BetaBInterval { n: usize },
}

/// An element of a family poset: a partition, or the synthetic top of the
/// extended family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Partition(PointedPartition),
    Top,
}

impl Element {
    pub fn as_partition(&self) -> Option<&PointedPartition> {
        match self {
            Element::Partition(p) => Some(p),
            Element::Top => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Partition(p) => write!(f, "{p}"),
            Element::Top => write!(f, "TOP"),
        }
    }
}

/// Largest `n` representable with 32-bit block masks.
const MAX_PLAIN_N: usize = 32;
const MAX_SIGNED_N: usize = 16;

impl FamilySpec {
    /// Parse a family tag as used on the command line.
    pub fn from_parts(name: &str, n: usize, i: Option<usize>) -> Result<Self, PartitionError> {
        let need_i = || {
            i.ok_or_else(|| PartitionError::BadSpec(format!("family {name} needs --i")))
        };
        let spec = match name {
            "A" => FamilySpec::A { n },
            "A_fixed" => FamilySpec::AFixed { n, i: need_i()? },
            "A_extended" => FamilySpec::AExtended { n },
            "MA" => FamilySpec::MA { n },
            "MA_fixed" => FamilySpec::MAFixed { n, i: need_i()? },
            "MA_interval" => FamilySpec::MAInterval { n, i: need_i()? },
            "B" => FamilySpec::B { n },
            "B_fixed" => FamilySpec::BFixed { n, i: need_i()? },
            "B_interval" | "B_prime" => FamilySpec::BInterval { n },
            "beta" => FamilySpec::Beta { n },
            "betaB" => FamilySpec::BetaB { n },
            "betaB_interval" => FamilySpec::BetaBInterval { n },
            other => return Err(PartitionError::BadSpec(format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::A { .. } => "A",
            FamilySpec::AFixed { .. } => "A_fixed",
            FamilySpec::AExtended { .. } => "A_extended",
            FamilySpec::MA { .. } => "MA",
            FamilySpec::MAFixed { .. } => "MA_fixed",
            FamilySpec::MAInterval { .. } => "MA_interval",
            FamilySpec::B { .. } => "B",
            FamilySpec::BFixed { .. } => "B_fixed",
            FamilySpec::BInterval { .. } => "B_interval",
            FamilySpec::Beta { .. } => "beta",
            FamilySpec::BetaB { .. } => "betaB",
            FamilySpec::BetaBInterval { .. } => "betaB_interval",
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            FamilySpec::A { n }
            | FamilySpec::AFixed { n, .. }
            | FamilySpec::AExtended { n }
            | FamilySpec::MA { n }
            | FamilySpec::MAFixed { n, .. }
            | FamilySpec::MAInterval { n, .. }
            | FamilySpec::B { n }
            | FamilySpec::BFixed { n, .. }
            | FamilySpec::BInterval { n }
            | FamilySpec::Beta { n }
            | FamilySpec::BetaB { n }
            | FamilySpec::BetaBInterval { n } => n,
        }
    }

    pub fn i(&self) -> Option<usize> {
        match *self {
            FamilySpec::AFixed { i, .. }
            | FamilySpec::MAFixed { i, .. }
            | FamilySpec::MAInterval { i, .. }
            | FamilySpec::BFixed { i, .. } => Some(i),
            _ => None,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            FamilySpec::A { .. } | FamilySpec::AFixed { .. } | FamilySpec::AExtended { .. } => {
                Kind::Pointed
            }
            FamilySpec::MA { .. } | FamilySpec::MAFixed { .. } | FamilySpec::MAInterval { .. } => {
                Kind::MultiPointed
            }
            FamilySpec::B { .. } | FamilySpec::BFixed { .. } | FamilySpec::BInterval { .. } => {
                Kind::TypeB
            }
            FamilySpec::Beta { .. } => Kind::TypeBeta,
            FamilySpec::BetaB { .. } | FamilySpec::BetaBInterval { .. } => Kind::TypeBetaB,
        }
    }

    pub fn ground(&self) -> Ground {
        Ground::new(self.n(), self.kind().is_signed())
    }

    pub fn validate(&self) -> Result<(), PartitionError> {
        let n = self.n();
        if n == 0 {
            return Err(PartitionError::BadSpec("n must be at least 1".into()));
        }
        let max = if self.kind().is_signed() { MAX_SIGNED_N } else { MAX_PLAIN_N };
        if n > max {
            return Err(PartitionError::BadSpec(format!("n must be at most {max}")));
        }
        match *self {
            FamilySpec::AFixed { i, .. }
            | FamilySpec::MAFixed { i, .. }
            | FamilySpec::MAInterval { i, .. }
                if !(1..=n).contains(&i) =>
            {
                Err(PartitionError::BadSpec(format!("i must satisfy 1 <= i <= n, got {i}")))
            }
            FamilySpec::BFixed { i, .. } if i > n => {
                Err(PartitionError::BadSpec(format!("i must satisfy 0 <= i <= n, got {i}")))
            }
            _ => Ok(()),
        }
    }

    /// The family whose enumeration is filtered to obtain this one.
    pub fn parent(&self) -> FamilySpec {
        let n = self.n();
        match self.kind() {
            Kind::Pointed => FamilySpec::A { n },
            Kind::MultiPointed => FamilySpec::MA { n },
            Kind::TypeB => FamilySpec::B { n },
            Kind::TypeBeta => FamilySpec::Beta { n },
            Kind::TypeBetaB => FamilySpec::BetaB { n },
        }
    }

    /// The maximal element of an interval family.
    pub fn interval_top(&self) -> Option<PointedPartition> {
        let g = self.ground();
        match *self {
            FamilySpec::MAInterval { i, .. } => Some(PointedPartition::new(
                g,
                None,
                vec![Block {
                    members: g.full(),
                    pointed: super::low_bits(i as u32),
                }],
            )),
            FamilySpec::BInterval { n } | FamilySpec::BetaBInterval { n } => {
                Some(PointedPartition::new(
                    g,
                    Some(Block {
                        members: g.full(),
                        pointed: g.bit(n as i32),
                    }),
                    Vec::new(),
                ))
            }
            _ => None,
        }
    }

    /// Whether a partition of the parent family belongs to this one.
    pub fn admits(&self, p: &PointedPartition) -> bool {
        let g = self.ground();
        match *self {
            FamilySpec::AFixed { i, .. } | FamilySpec::MAFixed { i, .. } => {
                let need = super::low_bits(i as u32);
                p.pointed_mask() & need == need
            }
            FamilySpec::BFixed { i, .. } => {
                let pos = super::low_bits(i as u32);
                let need = pos | g.negate(pos);
                p.pointed_mask() & need == need
            }
            FamilySpec::MAInterval { .. }
            | FamilySpec::BInterval { .. }
            | FamilySpec::BetaBInterval { .. } => {
                let top = self.interval_top().expect("interval family has a top");
                leq(self.kind(), p, &top).unwrap_or(false)
            }
            _ => true,
        }
    }

    /// Order relation on elements of this family (handles the synthetic top).
    pub fn leq(&self, a: &Element, b: &Element) -> Result<bool, PartitionError> {
        match (a, b) {
            (_, Element::Top) => Ok(true),
            (Element::Top, Element::Partition(_)) => Ok(false),
            (Element::Partition(p), Element::Partition(q)) => leq(self.kind(), p, q),
        }
    }

    pub fn rank_of(&self, e: &Element) -> usize {
        match e {
            Element::Partition(p) => p.rank(),
            Element::Top => self.n(),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.i() {
            Some(i) => write!(f, "{}(n={}, i={})", self.name(), self.n(), i),
            None => write!(f, "{}(n={})", self.name(), self.n()),
        }
    }
}
