use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{FinitePoset, PosetError};

/// Largest poset size for which [`are_isomorphic`] runs the exact search.
pub const ISOMORPHISM_LIMIT: usize = 5000;

/// Outcome of [`compare_posets`]: an exact answer, or the verdict of the
/// invariant comparison used beyond the size limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoCheck {
    Exact(bool),
    Weak(bool),
}

impl IsoCheck {
    pub fn holds(self) -> bool {
        matches!(self, IsoCheck::Exact(true) | IsoCheck::Weak(true))
    }
}

pub fn are_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Result<bool, PosetError> {
    are_isomorphic_within(p, q, ISOMORPHISM_LIMIT)
}

/// Exact order-isomorphism test by backtracking over refined vertex colours.
pub fn are_isomorphic_within(p: &FinitePoset, q: &FinitePoset, limit: usize) -> Result<bool, PosetError> {
    for size in [p.len(), q.len()] {
        if size > limit {
            return Err(PosetError::SizeLimitExceeded { size, limit });
        }
    }
    if p.len() != q.len() || p.covers().len() != q.covers().len() {
        return Ok(false);
    }
    let (cp, cq) = refine_colours(p, q);
    let histogram = |c: &[usize]| {
        let mut h = c.to_vec();
        h.sort_unstable();
        h
    };
    if histogram(&cp) != histogram(&cq) {
        return Ok(false);
    }
    Ok(search(p, q, &cp, &cq))
}

/// Exact test up to [`ISOMORPHISM_LIMIT`], invariant comparison beyond it.
pub fn compare_posets(p: &FinitePoset, q: &FinitePoset) -> IsoCheck {
    match are_isomorphic(p, q) {
        Ok(b) => IsoCheck::Exact(b),
        Err(_) => IsoCheck::Weak(invariants(p) == invariants(q)),
    }
}

type Invariants = (Vec<usize>, usize, Vec<(usize, BigInt)>);

/// Rank-generating function, cover count and sorted (rank, μ(0̂, a)) pairs.
fn invariants(p: &FinitePoset) -> Invariants {
    let mut by_rank = Vec::new();
    for &r in p.ranks() {
        if by_rank.len() <= r {
            by_rank.resize(r + 1, 0);
        }
        by_rank[r] += 1;
    }
    let row = p.mobius_row(p.bottom());
    let mut mu: Vec<(usize, BigInt)> = (0..p.len()).map(|a| (p.rank(a), row[a].clone())).collect();
    mu.sort();
    (by_rank, p.covers().len(), mu)
}

/// Colour refinement run jointly on both posets so colours are comparable.
fn refine_colours(p: &FinitePoset, q: &FinitePoset) -> (Vec<usize>, Vec<usize>) {
    let posets = [p, q];
    let initial = |s: &FinitePoset, a: usize| {
        vec![
            s.rank(a),
            s.upper_covers(a).len(),
            s.lower_covers(a).len(),
            s.up_set(a).count_ones(..),
            s.down_set(a).count_ones(..),
        ]
    };
    let mut colours: Vec<Vec<usize>> = {
        let keys: Vec<Vec<Vec<usize>>> = posets
            .iter()
            .map(|s| (0..s.len()).map(|a| initial(s, a)).collect())
            .collect();
        relabel(&keys)
    };
    let mut classes = count_classes(&colours);
    loop {
        let keys: Vec<Vec<Vec<usize>>> = posets
            .iter()
            .zip(&colours)
            .map(|(s, col)| {
                (0..s.len())
                    .map(|a| {
                        let mut ups: Vec<usize> = s.upper_covers(a).iter().map(|&b| col[b]).collect();
                        let mut downs: Vec<usize> = s.lower_covers(a).iter().map(|&b| col[b]).collect();
                        ups.sort_unstable();
                        downs.sort_unstable();
                        let mut key = vec![col[a], ups.len()];
                        key.extend(ups);
                        key.extend(downs);
                        key
                    })
                    .collect()
            })
            .collect();
        let next = relabel(&keys);
        let next_classes = count_classes(&next);
        colours = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let mut it = colours.into_iter();
    (it.next().unwrap(), it.next().unwrap())
}

fn relabel(keys: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let mut ids: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    for k in keys.iter().flatten() {
        ids.insert(k, 0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    keys.iter().map(|side| side.iter().map(|k| ids[k]).collect()).collect()
}

fn count_classes(colours: &[Vec<usize>]) -> usize {
    let mut all: Vec<usize> = colours.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Iterative backtracking: vertices of `p` in rank order are matched to
/// same-coloured vertices of `q`, keeping the order relation consistent.
fn search(p: &FinitePoset, q: &FinitePoset, cp: &[usize], cq: &[usize]) -> bool {
    let n = p.len();
    let order = p.linear_extension();
    let mut by_colour: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (w, &c) in cq.iter().enumerate() {
        by_colour.entry(c).or_default().push(w);
    }
    let candidates: Vec<&[usize]> = order.iter().map(|&v| by_colour[&cp[v]].as_slice()).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut cursor = vec![0usize; n];
    let mut depth = 0;
    loop {
        if depth == n {
            return true;
        }
        let v = order[depth];
        let mut placed = false;
        while cursor[depth] < candidates[depth].len() {
            let w = candidates[depth][cursor[depth]];
            cursor[depth] += 1;
            if used[w] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                let fu = image[u];
                p.leq(u, v) == q.leq(fu, w) && p.leq(v, u) == q.leq(w, fu)
            });
            if consistent {
                image[v] = w;
                used[w] = true;
                placed = true;
                break;
            }
        }
        if placed {
            depth += 1;
            if depth < n {
                cursor[depth] = 0;
            }
        } else {
            if depth == 0 {
                return false;
            }
            depth -= 1;
            let u = order[depth];
            used[image[u]] = false;
            image[u] = usize::MAX;
        }
    }
}
