//! Smith normal form over the integers.
//!
//! Boundary matrices of order complexes are sparse with many unit entries, so
//! unit pivots are eliminated first on machine integers; whatever remains is
//! reduced densely with arbitrary precision.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major sparse integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::new(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.push(i, j, v);
            }
        }
        m
    }

    /// Add `value` at `(row, col)`; zero values are ignored.
    pub fn push(&mut self, row: usize, col: usize, value: i64) {
        assert!(row < self.rows && col < self.cols, "entry outside the matrix");
        if value == 0 {
            return;
        }
        match self.data[row].iter_mut().find(|(c, _)| *c == col) {
            Some(e) => e.1 += value,
            None => self.data[row].push((col, value)),
        }
        self.data[row].retain(|&(_, v)| v != 0);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.data[i]
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (i, r) in self.data.iter().enumerate() {
            for &(j, v) in r {
                out[i][j] = v;
            }
        }
        out
    }

    /// `self · other`, or `None` on overflow.
    pub fn checked_mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = SparseMatrix::new(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(k, a) in r {
                for &(j, b) in &other.data[k] {
                    let e = acc.entry(j).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            let mut row: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
            row.sort_unstable();
            out.data[i] = row;
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }
}

/// Invariant factors `d_1 | d_2 | …` (all positive) of a dense matrix.
pub fn smith_normal_form(rows: &[Vec<i64>]) -> Vec<BigInt> {
    invariant_factors(&SparseMatrix::from_dense(rows))
}

/// Invariant factors of a sparse matrix; their count is the rank.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut factors = match eliminate_units(m) {
        Some((units, residual)) => {
            let mut f = vec![BigInt::one(); units];
            f.extend(dense_snf(residual));
            f
        }
        None => dense_snf(
            m.to_dense()
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        ),
    };
    normalize(&mut factors);
    factors
}

/// Eliminate unit pivots; returns their number and the dense residual, or
/// `None` if an intermediate entry overflows `i64`.
fn eliminate_units(m: &SparseMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut rows: Vec<HashMap<usize, i64>> = m
        .data
        .iter()
        .map(|r| r.iter().copied().collect())
        .collect();
    let mut col_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_index[c].insert(i);
        }
    }
    let mut units = 0;
    loop {
        let mut progress = false;
        for c in 0..m.cols {
            let pivot = col_index[c]
                .iter()
                .filter(|&&r| rows[r][&c].abs() == 1)
                .min_by_key(|&&r| rows[r].len())
                .copied();
            let Some(p) = pivot else { continue };
            let sign = rows[p][&c];
            let pivot_row: Vec<(usize, i64)> = rows[p].iter().map(|(&k, &v)| (k, v)).collect();
            let others: Vec<usize> = col_index[c].iter().copied().filter(|&r| r != p).collect();
            for r in others {
                let f = rows[r][&c].checked_mul(sign)?;
                for &(k, v) in &pivot_row {
                    let entry = rows[r].entry(k).or_insert(0);
                    *entry = entry.checked_sub(f.checked_mul(v)?)?;
                    if *entry == 0 {
                        rows[r].remove(&k);
                        col_index[k].remove(&r);
                    } else {
                        col_index[k].insert(r);
                    }
                }
            }
            // the pivot column is now zero elsewhere, so column operations
            // clear the pivot row without touching other rows
            for &(k, _) in &pivot_row {
                col_index[k].remove(&p);
            }
            rows[p].clear();
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&c| !col_index[c].is_empty()).collect();
    let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let residual = live_rows
        .iter()
        .map(|&r| {
            let mut dense = vec![BigInt::zero(); live_cols.len()];
            for (&c, &v) in &rows[r] {
                dense[col_pos[&c]] = BigInt::from(v);
            }
            dense
        })
        .collect();
    Some((units, residual))
}

fn min_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Classical elimination with minimal-absolute-value pivots.
fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_nonzero(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..n {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a smaller remainder sits in row or column t; make it the pivot
                let col_best = (t + 1..m).filter(|&i| !a[i][t].is_zero()).min_by_key(|&i| a[i][t].abs());
                let row_best = (t + 1..n).filter(|&j| !a[t][j].is_zero()).min_by_key(|&j| a[t][j].abs());
                match (col_best, row_best) {
                    (Some(i), Some(j)) if a[t][j].abs() < a[i][t].abs() => swap_cols(&mut a, t, j),
                    (Some(i), _) => a.swap(t, i),
                    (None, Some(j)) => swap_cols(&mut a, t, j),
                    (None, None) => unreachable!("unclean pivot with nothing left"),
                }
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    for row in a.iter_mut() {
        row.swap(x, y);
    }
}

/// Restore `d_1 | d_2 | …` for any diagonal (gcd/lcm exchange).
fn normalize(d: &mut [BigInt]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
}
