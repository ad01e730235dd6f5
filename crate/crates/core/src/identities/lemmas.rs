//! Exact checks of the auxiliary summation identities.
//!
//! Identities between rational functions of `x` (and of `y`, `u`) are checked
//! by evaluating both sides at integer points that avoid every pole. Clearing
//! the denominators turns each identity into a polynomial one whose degree in
//! each variable is bounded by `d`; agreement on `d + 1` values per variable
//! (a full grid for several variables) then proves it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

type Q = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lemma {
    InductionStep,
    DominantA,
    UsefulB,
    DominantB,
    Convolution,
    Facteur,
    Mdominant,
    F32Vanishing,
}

impl Lemma {
    pub const ALL: [Lemma; 8] = [
        Lemma::InductionStep,
        Lemma::DominantA,
        Lemma::UsefulB,
        Lemma::DominantB,
        Lemma::Convolution,
        Lemma::Facteur,
        Lemma::Mdominant,
        Lemma::F32Vanishing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::InductionStep => "induction_step",
            Lemma::DominantA => "dominantA",
            Lemma::UsefulB => "usefulB",
            Lemma::DominantB => "dominantB",
            Lemma::Convolution => "convolution",
            Lemma::Facteur => "facteur",
            Lemma::Mdominant => "Mdominant",
            Lemma::F32Vanishing => "f32_vanishing",
        }
    }

    pub fn from_name(name: &str) -> Option<Lemma> {
        Lemma::ALL.into_iter().find(|l| l.name() == name)
    }

    /// Default bound on the main parameter.
    pub fn default_max(self) -> usize {
        match self {
            Lemma::UsefulB | Lemma::F32Vanishing => 8,
            _ => 10,
        }
    }
}

/// Which identity to check, up to which size, and whether to add one to its
/// left-hand side (a control that must fail).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaSpec {
    pub lemma: Lemma,
    pub max_n: usize,
    pub perturb: bool,
}

impl LemmaSpec {
    pub fn new(lemma: Lemma) -> Self {
        Self {
            lemma,
            max_n: lemma.default_max(),
            perturb: false,
        }
    }

    pub fn perturbed(mut self) -> Self {
        self.perturb = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaFailure {
    pub params: Vec<(String, i64)>,
    pub point: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub max_n: usize,
    pub perturbed: bool,
    pub cases: usize,
    pub evaluations: usize,
    pub failures: Vec<LemmaFailure>,
    pub pass: bool,
}

fn q(k: i64) -> Q {
    Q::from_integer(BigInt::from(k))
}

fn factorial(k: i64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn qi(b: BigInt) -> Q {
    Q::from_integer(b)
}

/// `base^e` for any integer `e`; `None` for `0` to a negative power.
fn pow(base: &Q, e: i64) -> Option<Q> {
    if e >= 0 {
        Some(num_traits::pow(base.clone(), e as usize))
    } else if base.is_zero() {
        None
    } else {
        Some(num_traits::pow(base.recip(), (-e) as usize))
    }
}

/// `⟨a⟩ = ∏_{j=1}^{a} (x - j)`, and `1 / ∏_{j=a+1}^{0} (x - j)` for `a < 0`.
fn bracket(a: i64, x: &Q) -> Option<Q> {
    if a >= 0 {
        Some((1..=a).fold(Q::one(), |acc, j| acc * (x - q(j))))
    } else {
        let den = (a + 1..=0).fold(Q::one(), |acc, j| acc * (x - q(j)));
        (!den.is_zero()).then(|| den.recip())
    }
}

/// `0, 1, -1, 2, -2, …`
fn integer_points() -> impl Iterator<Item = i64> {
    (0..).flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] })
}

struct Checker {
    perturb: bool,
    cases: usize,
    evaluations: usize,
    failures: Vec<LemmaFailure>,
}

impl Checker {
    fn compare(&mut self, params: &[(&str, i64)], point: &[(&str, &Q)], lhs: Q, rhs: Q) {
        let lhs = if self.perturb { lhs + Q::one() } else { lhs };
        self.evaluations += 1;
        if lhs != rhs {
            self.failures.push(LemmaFailure {
                params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
                point: point.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    /// Compare at `degree + 1` non-pole integer points.
    fn univariate(
        &mut self,
        params: &[(&str, i64)],
        degree: usize,
        lhs: impl Fn(&Q) -> Option<Q>,
        rhs: impl Fn(&Q) -> Option<Q>,
    ) {
        self.cases += 1;
        let mut done = 0;
        for x in integer_points().map(q) {
            if done > degree {
                break;
            }
            if let (Some(l), Some(r)) = (lhs(&x), rhs(&x)) {
                self.compare(params, &[("x", &x)], l, r);
                done += 1;
            }
        }
    }

    fn numeric(&mut self, params: &[(&str, i64)], lhs: Q, rhs: Q) {
        self.cases += 1;
        self.compare(params, &[], lhs, rhs);
    }
}

/// Coefficients of `(Σ_{k≥1} k^(k-1)/k! t^k)^parts · tail(t)` up to `t^n`.
fn tree_power_times(parts: i64, n: i64, tail: impl Fn(i64) -> Q) -> Vec<Q> {
    let weight = |k: i64| qi(num_traits::pow(BigInt::from(k), (k - 1) as usize)) / qi(factorial(k));
    let len = n as usize + 1;
    let mut acc: Vec<Q> = (0..=n).map(&tail).collect();
    for _ in 0..parts {
        let mut next = vec![Q::zero(); len];
        for (a, ca) in acc.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for k in 1..len - a {
                next[a + k] += ca * weight(k as i64);
            }
        }
        acc = next;
    }
    acc
}

fn induction_step(c: &mut Checker, max_n: i64) {
    for n in 1..=max_n {
        for i in 0..=n {
            let lhs = |x: &Q| -> Option<Q> {
                let mut s = qi(BigInt::from(i)) * pow(&q(n), n - 1 - i)? * q(if (n - i) % 2 == 0 { 1 } else { -1 });
                for j in 1..=n - i {
                    let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
                    s += q(sign) * qi(binom(n - i, j)) * (x - q(j + i)) * pow(&(x - q(n)), n - 1 - i - j)? * pow(x, j)?;
                }
                Some(s)
            };
            let rhs = |x: &Q| Some((x - q(i)) * pow(&(x - q(n)), n - 1 - i)?);
            // cleared by (x - n): degree n - i + 1
            c.univariate(&[("n", n), ("i", i)], (n - i + 1) as usize, lhs, rhs);
        }
    }
}

fn dominant_a(c: &mut Checker, max_n: i64) {
    for n in 1..=max_n {
        for i in 1..=n {
            let unit = |m: i64| if m == 0 { Q::one() } else { Q::zero() };
            let lhs = tree_power_times(i, n, unit)[n as usize].clone();
            let rhs = q(i) * pow(&q(n), n - 1 - i).expect("n > 0") / qi(factorial(n - i));
            c.numeric(&[("n", n), ("i", i)], lhs, rhs);
        }
    }
}

fn useful_b(c: &mut Checker, max_n: i64) {
    for n in 1..=max_n {
        c.cases += 1;
        // degree at most n - 1 in each variable once multiplied by x
        let xs: Vec<Q> = integer_points().filter(|&v| v != 0).take(n as usize).map(q).collect();
        let others: Vec<Q> = (0..n).map(q).collect();
        for x in &xs {
            for y in &others {
                for u in &others {
                    let mut lhs = Q::zero();
                    for j in 0..n {
                        let a = pow(&(y + u * q(j)), n - j - 1).expect("nonnegative power");
                        let b = pow(&(x - u * q(j)), j - 1).expect("x avoids the pole");
                        lhs += qi(binom(n - 1, j)) * a * b;
                    }
                    let rhs = pow(&(x + y), n - 1).expect("nonnegative power") / x;
                    c.compare(&[("n", n)], &[("x", x), ("y", y), ("u", u)], lhs, rhs);
                }
            }
        }
    }
}

fn dominant_b(c: &mut Checker, max_n: i64) {
    for n in 1..=max_n {
        for i in 1..=n {
            // m^m / m! with 0^0 = 1
            let tail = |m: i64| qi(num_traits::pow(BigInt::from(m), m as usize)) / qi(factorial(m));
            let lhs = tree_power_times(i, n, tail)[n as usize].clone();
            let rhs = qi(num_traits::pow(BigInt::from(n), (n - i) as usize)) / qi(factorial(n - i));
            c.numeric(&[("n", n), ("i", i)], lhs, rhs);
        }
    }
}

fn convolution(c: &mut Checker, max_n: i64) {
    for m in 0..=max_n {
        for j in 1..=max_n - m {
            for k in 1..=max_n - m - j {
                let lhs = |x: &Q| -> Option<Q> {
                    let mut s = Q::zero();
                    for t in 0..=m {
                        let sign = if t % 2 == 0 { 1 } else { -1 };
                        let coef = qi(binom(m, t) * BigInt::from(sign) * BigInt::from(j) * factorial(2 * t + j - 1))
                            / qi(factorial(t + j));
                        let ratio = (x - q(k)) * bracket(2 * (m - t) + k - 1, x)? / nonzero(bracket(m - t + k, x)?)?;
                        s += coef * ratio;
                    }
                    Some(s)
                };
                let rhs = |x: &Q| -> Option<Q> {
                    Some((x - q(j + k)) * bracket(2 * m + j + k - 1, x)? / nonzero(bracket(m + j + k, x)?)?)
                };
                // cleared by ⟨m+j+k⟩: degree 2m + j + k
                c.univariate(&[("m", m), ("j", j), ("k", k)], (2 * m + j + k) as usize, lhs, rhs);
            }
        }
    }
}

fn nonzero(v: Q) -> Option<Q> {
    (!v.is_zero()).then_some(v)
}

fn facteur(c: &mut Checker, max_n: i64) {
    for k in 1..=max_n {
        let lhs = |x: &Q| -> Option<Q> {
            let mut s = Q::zero();
            for j in 1..=k {
                let sign = if (j - 1) % 2 == 0 { 1 } else { -1 };
                s += qi(binom(k - 1, j - 1) * BigInt::from(sign) * factorial(j - 1)) * bracket(k - j - 1, x)?;
            }
            Some(x * s)
        };
        let rhs = |x: &Q| bracket(k - 1, x);
        // cleared by x: degree k
        c.univariate(&[("k", k)], k as usize, lhs, rhs);
    }
}

fn m_dominant(c: &mut Checker, max_n: i64) {
    for n in 1..=max_n {
        for i in 1..=n {
            let lhs: Q = (i..=n)
                .map(|j| qi(binom(n - i, j - i) * factorial(j) * factorial(2 * n - j - 1)) / qi(factorial(n)))
                .sum();
            let rhs = qi(BigInt::from(2) * factorial(i) * factorial(2 * n - 1)) / qi(factorial(n + i));
            c.numeric(&[("n", n), ("i", i)], lhs, rhs);
        }
    }
}

fn f32_vanishing(c: &mut Checker, max_n: i64) {
    for n in 1..=max_n {
        let lhs = |x: &Q| -> Option<Q> {
            let mut s = Q::zero();
            for j in 0..=n {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                s += qi(binom(n, j) * BigInt::from(sign)) * (x - q(2 * j)) * bracket(j - 1, x)?
                    / nonzero(bracket(n + j, x)?)?;
            }
            Some(s)
        };
        // cleared by x⟨2n⟩: degree n + 1
        c.univariate(&[("n", n)], (n + 1) as usize, lhs, |_| Some(Q::zero()));
    }
}

/// Check one identity over its whole parameter range.
pub fn verify_lemma(spec: &LemmaSpec) -> LemmaReport {
    let mut c = Checker {
        perturb: spec.perturb,
        cases: 0,
        evaluations: 0,
        failures: Vec::new(),
    };
    let max_n = spec.max_n as i64;
    match spec.lemma {
        Lemma::InductionStep => induction_step(&mut c, max_n),
        Lemma::DominantA => dominant_a(&mut c, max_n),
        Lemma::UsefulB => useful_b(&mut c, max_n),
        Lemma::DominantB => dominant_b(&mut c, max_n),
        Lemma::Convolution => convolution(&mut c, max_n),
        Lemma::Facteur => facteur(&mut c, max_n),
        Lemma::Mdominant => m_dominant(&mut c, max_n),
        Lemma::F32Vanishing => f32_vanishing(&mut c, max_n),
    }
    LemmaReport {
        lemma: spec.lemma.name().to_string(),
        max_n: spec.max_n,
        perturbed: spec.perturb,
        cases: c.cases,
        evaluations: c.evaluations,
        pass: c.failures.is_empty() && c.evaluations > 0,
        failures: c.failures,
    }
}
