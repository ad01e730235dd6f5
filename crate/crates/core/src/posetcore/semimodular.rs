use fixedbitset::FixedBitSet;

use super::FinitePoset;

/// Two distinct elements `x`, `y` covering `t` inside `[bottom, top]` with no
/// common upper cover in that interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemimodularityViolation {
    pub bottom: usize,
    pub top: Option<usize>,
    pub t: usize,
    pub x: usize,
    pub y: usize,
}

fn cover_sets(p: &FinitePoset) -> Vec<FixedBitSet> {
    (0..p.len())
        .map(|a| {
            let mut s = FixedBitSet::with_capacity(p.len());
            for &b in p.upper_covers(a) {
                s.insert(b);
            }
            s
        })
        .collect()
}

/// Search `{c : bottom ≤ c ≤ top}` (no upper bound when `top` is `None`).
fn violation_in(
    p: &FinitePoset,
    covers: &[FixedBitSet],
    bottom: usize,
    top: Option<usize>,
) -> Option<SemimodularityViolation> {
    let inside = |c: usize| top.is_none_or(|b| p.leq(c, b));
    for t in p.up_set(bottom).ones().filter(|&t| inside(t)) {
        let ups: Vec<usize> = p.upper_covers(t).iter().copied().filter(|&x| inside(x)).collect();
        for (k, &x) in ups.iter().enumerate() {
            for &y in &ups[k + 1..] {
                let mut common = covers[x].clone();
                common.intersect_with(&covers[y]);
                let found = match top {
                    None => common.count_ones(..) > 0,
                    Some(b) => !common.is_disjoint(p.down_set(b)),
                };
                if !found {
                    return Some(SemimodularityViolation { bottom, top, t, x, y });
                }
            }
        }
    }
    None
}

pub fn semimodularity_violation(p: &FinitePoset) -> Option<SemimodularityViolation> {
    violation_in(p, &cover_sets(p), p.bottom(), None)
}

/// Whenever distinct `x`, `y` cover a common `t`, some `z` covers both.
pub fn is_semimodular(p: &FinitePoset) -> bool {
    semimodularity_violation(p).is_none()
}

/// First closed interval `[a, b]` (in index order) that is not semimodular.
pub fn total_semimodularity_violation(p: &FinitePoset) -> Option<SemimodularityViolation> {
    let covers = cover_sets(p);
    for a in 0..p.len() {
        for b in p.up_set(a).ones() {
            if p.rank(b) >= p.rank(a) + 2 {
                if let Some(v) = violation_in(p, &covers, a, Some(b)) {
                    return Some(v);
                }
            }
        }
    }
    None
}

/// Every closed interval is semimodular.
pub fn is_totally_semimodular(p: &FinitePoset) -> bool {
    total_semimodularity_violation(p).is_none()
}

#[cfg(test)]
mod tests {
    use super::super::{build_poset, chain, poset_product};
    use super::*;

    #[test]
    fn lattices_and_non_examples() {
        let sq = poset_product(&chain(2), &chain(2));
        assert!(is_totally_semimodular(&sq));
        // bottom with two atoms and nothing above: not semimodular
        let v = build_poset(vec!["0".into(), "a".into(), "b".into()], |x, y| x == y || x == 0).unwrap();
        let w = semimodularity_violation(&v).unwrap();
        assert_eq!((w.t, w.x, w.y), (0, 1, 2));
        // it has no interval of rank 2, so every closed interval is fine
        assert!(is_totally_semimodular(&v));
    }

    #[test]
    fn rank_three_examples() {
        // bottom, atoms 1 and 2, coatoms 3 and 4 above both atoms
        let rel = [(1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)];
        let with_top = build_poset((0..6).map(|k| k.to_string()).collect(), |a, b| {
            a == b || a == 0 || b == 5 || rel.contains(&(a, b))
        })
        .unwrap();
        assert!(is_totally_semimodular(&with_top));
        // without the top, 3 and 4 cover 1 and have no common cover
        let no_top = build_poset((0..5).map(|k| k.to_string()).collect(), |a, b| {
            a == b || a == 0 || rel.contains(&(a, b))
        })
        .unwrap();
        let w = semimodularity_violation(&no_top).unwrap();
        assert_eq!((w.x, w.y), (3, 4));
        // but every proper interval is a chain or a square
        let sub = no_top.interval(0, 3).unwrap();
        assert!(is_totally_semimodular(&sub));
    }
}
