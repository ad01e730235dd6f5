use super::{canonical_string, Block, Element, FamilySpec, Ground, Kind, PartitionError, PointedPartition};

/// Default bound on the number of elements a family may have before
/// enumeration is refused.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// All set partitions of `mask` (as lists of block masks).
fn set_partitions(mask: u32) -> Vec<Vec<u32>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask ^ low;
    let mut out = Vec::new();
    for with in submasks(rest) {
        for mut tail in set_partitions(rest ^ with) {
            tail.push(low | with);
            out.push(tail);
        }
    }
    out
}

/// All submasks of `mask`, including 0 and `mask` itself.
fn submasks(mask: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(1 << mask.count_ones());
    let mut s = mask;
    loop {
        out.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & mask;
    }
    out
}

fn single_bits(mask: u32) -> impl Iterator<Item = u32> {
    (0..32).map(|k| 1u32 << k).filter(move |b| mask & b != 0)
}

/// Cartesian product over per-slot choice lists.
fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect()
    })
}

fn enumerate_plain(n: usize, multi: bool) -> Vec<PointedPartition> {
    let g = Ground::new(n, false);
    let mut out = Vec::new();
    for parts in set_partitions(g.full()) {
        let choices: Vec<Vec<Block>> = parts
            .iter()
            .map(|&m| {
                let pointings: Vec<u32> = if multi {
                    submasks(m).into_iter().filter(|&s| s != 0).collect()
                } else {
                    single_bits(m).collect()
                };
                pointings
                    .into_iter()
                    .map(|p| Block { members: m, pointed: p })
                    .collect()
            })
            .collect();
        for blocks in product(&choices) {
            out.push(PointedPartition::new(g, None, blocks));
        }
    }
    out
}

fn enumerate_signed(n: usize, kind: Kind) -> Vec<PointedPartition> {
    let g = Ground::new(n, true);
    let mut out = Vec::new();
    for zero_pos in submasks(g.positives()) {
        let zero_members = zero_pos | g.negate(zero_pos);
        let zero_choices: Vec<Option<Block>> = if zero_members == 0 {
            vec![None]
        } else {
            let pointed = single_bits(zero_members).map(|b| Some(Block { members: zero_members, pointed: b }));
            let unpointed = Some(Block { members: zero_members, pointed: 0 });
            match kind {
                Kind::TypeB => pointed.collect(),
                Kind::TypeBeta => vec![unpointed],
                _ => std::iter::once(unpointed).chain(pointed).collect(),
            }
        };
        let rest = g.positives() ^ zero_pos;
        for parts in set_partitions(rest) {
            // each positive block: choose signs of all but its least element,
            // then one pointed element; the opposite block mirrors it
            let choices: Vec<Vec<(Block, Block)>> = parts
                .iter()
                .map(|&b| {
                    let low = b & b.wrapping_neg();
                    let mut opts = Vec::new();
                    for flip in submasks(b ^ low) {
                        let members = (b ^ flip) | g.negate(flip);
                        for pt in single_bits(members) {
                            let blk = Block { members, pointed: pt };
                            let opp = Block {
                                members: g.negate(members),
                                pointed: g.negate(pt),
                            };
                            opts.push((blk, opp));
                        }
                    }
                    opts
                })
                .collect();
            for pairs in product(&choices) {
                let blocks: Vec<Block> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
                for z in &zero_choices {
                    out.push(PointedPartition::new(g, *z, blocks.clone()));
                }
            }
        }
    }
    out
}

/// Number of set partitions of an `m`-set weighted by `∏ weight(block size)`.
fn weighted_partitions(m: usize, weight: impl Fn(usize) -> u128) -> u128 {
    let mut binom = vec![vec![0u128; m + 1]; m + 1];
    for a in 0..=m {
        binom[a][0] = 1;
        for b in 1..=a {
            binom[a][b] = binom[a - 1][b - 1].saturating_add(binom[a - 1][b]);
        }
    }
    let mut t = vec![0u128; m + 1];
    t[0] = 1;
    for k in 1..=m {
        t[k] = (1..=k)
            .map(|s| binom[k - 1][s - 1].saturating_mul(weight(s)).saturating_mul(t[k - s]))
            .fold(0u128, u128::saturating_add);
    }
    t[m]
}

/// Number of elements of the (unfiltered) parent family, used to refuse
/// enumerations that would exceed the cap.
pub fn projected_count(spec: &FamilySpec) -> u128 {
    let n = spec.n();
    let pow2 = |s: usize| 1u128.checked_shl(s as u32).unwrap_or(u128::MAX);
    let base = match spec.kind() {
        Kind::Pointed => weighted_partitions(n, |s| s as u128),
        Kind::MultiPointed => weighted_partitions(n, |s| pow2(s).saturating_sub(1)),
        kind => {
            let mut total = 0u128;
            let mut binom = 1u128;
            for z in 0..=n {
                if z > 0 {
                    binom = binom.saturating_mul((n - z + 1) as u128) / z as u128;
                }
                let zero_ways = match (kind, z) {
                    (_, 0) | (Kind::TypeBeta, _) => 1,
                    (Kind::TypeB, _) => 2 * z as u128,
                    _ => 2 * z as u128 + 1,
                };
                let pairs = weighted_partitions(n - z, |s| (s as u128).saturating_mul(pow2(s - 1)));
                total = total.saturating_add(binom.saturating_mul(zero_ways).saturating_mul(pairs));
            }
            total
        }
    };
    match spec {
        FamilySpec::AExtended { .. } => base.saturating_add(1),
        _ => base,
    }
}

/// Every element of the family, sorted by rank and then by canonical string.
///
/// The extended family additionally ends with [`Element::Top`].
pub fn enumerate_family(spec: &FamilySpec, cap: usize) -> Result<Vec<Element>, PartitionError> {
    spec.validate()?;
    let projected = projected_count(spec);
    if projected > cap as u128 {
        return Err(PartitionError::LimitExceeded { projected, cap });
    }
    let n = spec.n();
    let raw = match spec.kind() {
        Kind::Pointed => enumerate_plain(n, false),
        Kind::MultiPointed => enumerate_plain(n, true),
        kind => enumerate_signed(n, kind),
    };
    let mut keyed: Vec<(usize, String, PointedPartition)> = raw
        .into_iter()
        .filter(|p| spec.admits(p))
        .map(|p| (p.rank(), canonical_string(&p), p))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut out: Vec<Element> = keyed.into_iter().map(|(_, _, p)| Element::Partition(p)).collect();
    if matches!(spec, FamilySpec::AExtended { .. }) {
        out.push(Element::Top);
    }
    Ok(out)
}

/// Number of elements of each rank.
pub fn graded_counts(spec: &FamilySpec, cap: usize) -> Result<Vec<u64>, PartitionError> {
    let elements = enumerate_family(spec, cap)?;
    let mut counts = Vec::new();
    for e in &elements {
        let r = spec.rank_of(e);
        if counts.len() <= r {
            counts.resize(r + 1, 0);
        }
        counts[r] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(spec: FamilySpec) -> usize {
        enumerate_family(&spec, DEFAULT_ELEMENT_CAP).unwrap().len()
    }

    #[test]
    fn figure_sizes() {
        assert_eq!(count(FamilySpec::A { n: 3 }), 10);
        assert_eq!(count(FamilySpec::B { n: 2 }), 13);
        assert_eq!(count(FamilySpec::MA { n: 3 }), 17);
        assert_eq!(count(FamilySpec::A { n: 4 }), 41);
        assert_eq!(count(FamilySpec::B { n: 1 }), 3);
    }

    #[test]
    fn figure_graded_counts() {
        assert_eq!(graded_counts(&FamilySpec::A { n: 3 }, DEFAULT_ELEMENT_CAP).unwrap(), vec![1, 6, 3]);
        assert_eq!(graded_counts(&FamilySpec::B { n: 2 }, DEFAULT_ELEMENT_CAP).unwrap(), vec![1, 8, 4]);
        assert_eq!(graded_counts(&FamilySpec::MA { n: 3 }, DEFAULT_ELEMENT_CAP).unwrap(), vec![1, 9, 7]);
    }

    #[test]
    fn projected_counts_match_enumeration() {
        for n in 1..=5 {
            for spec in [FamilySpec::A { n }, FamilySpec::MA { n }] {
                assert_eq!(projected_count(&spec), count(spec) as u128, "{spec}");
            }
        }
        for n in 1..=3 {
            for spec in [FamilySpec::B { n }, FamilySpec::Beta { n }, FamilySpec::BetaB { n }] {
                assert_eq!(projected_count(&spec), count(spec) as u128, "{spec}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_family(&FamilySpec::MA { n: 8 }, DEFAULT_ELEMENT_CAP).unwrap_err();
        assert!(matches!(err, PartitionError::LimitExceeded { projected: 265_186, .. }));
    }

    #[test]
    fn bottom_elements() {
        let a = enumerate_family(&FamilySpec::A { n: 3 }, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(a[0].to_string(), "{1*|2*|3*}");
        let b = enumerate_family(&FamilySpec::B { n: 2 }, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(b[0].to_string(), "{-1*|1*|-2*|2*}");
        let beta = enumerate_family(&FamilySpec::Beta { n: 2 }, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(beta.last().unwrap().to_string(), "{-11-22}");
    }

    #[test]
    fn interval_families_are_below_their_tops() {
        let b1 = enumerate_family(&FamilySpec::BInterval { n: 2 }, DEFAULT_ELEMENT_CAP).unwrap();
        // bottom, 5 middles, top
        assert_eq!(b1.len(), 7);
        let ma = enumerate_family(&FamilySpec::MAInterval { n: 3, i: 1 }, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(ma.last().unwrap().to_string(), "{1*23}");
    }
}
