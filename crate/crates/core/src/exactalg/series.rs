use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactAlgError;

/// The two formal variables the generating functions need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    U,
    X,
}

impl Var {
    fn slot(self) -> usize {
        match self {
            Var::U => 0,
            Var::X => 1,
        }
    }
}

/// Truncated power series in `u` and `x` with exact rational coefficients.
///
/// `precision[v]` is an exclusive bound on the exponent of `v`: a series known
/// "through order N" in `v` has precision `Some(N + 1)`. `None` means the series
/// is exact (not truncated) in that variable; a univariate series in `x` is
/// `None` in `u` and only uses exponent 0 there.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalSeries {
    precision: [Option<u32>; 2],
    coeffs: BTreeMap<[u32; 2], BigRational>,
}

fn min_bound(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

impl RationalSeries {
    /// The zero series known through the given orders in `u` and `x`.
    pub fn zero(order_u: u32, order_x: u32) -> Self {
        Self {
            precision: [Some(order_u + 1), Some(order_x + 1)],
            coeffs: BTreeMap::new(),
        }
    }

    /// Univariate zero series in `var` known through `order`.
    pub fn zero_in(var: Var, order: u32) -> Self {
        let mut precision = [None, None];
        precision[var.slot()] = Some(order + 1);
        Self {
            precision,
            coeffs: BTreeMap::new(),
        }
    }

    /// The series `var`, known through `order`.
    pub fn variable(var: Var, order: u32) -> Self {
        Self::from_univariate(var, &[BigRational::zero(), BigRational::one()], order)
    }

    pub fn constant_in(var: Var, c: BigRational, order: u32) -> Self {
        Self::from_univariate(var, &[c], order)
    }

    /// Univariate series with `coeffs[k]` the coefficient of `var^k`; entries
    /// beyond `order` are dropped.
    pub fn from_univariate(var: Var, coeffs: &[BigRational], order: u32) -> Self {
        let mut s = Self::zero_in(var, order);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = [0, 0];
            e[var.slot()] = k as u32;
            s.set(e, c.clone());
        }
        s
    }

    /// `var · e^var` truncated at `order`.
    pub fn var_times_exp(var: Var, order: u32) -> Self {
        let mut coeffs = vec![BigRational::zero()];
        let mut fact = BigInt::one();
        for k in 1..=order {
            coeffs.push(BigRational::new(BigInt::one(), fact.clone()));
            fact *= BigInt::from(k);
        }
        Self::from_univariate(var, &coeffs, order)
    }

    /// `e^var` truncated at `order`.
    pub fn exp_of_var(var: Var, order: u32) -> Self {
        let mut coeffs = Vec::new();
        let mut fact = BigInt::one();
        for k in 0..=order {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            coeffs.push(BigRational::new(BigInt::one(), fact.clone()));
        }
        Self::from_univariate(var, &coeffs, order)
    }

    pub fn precision(&self) -> [Option<u32>; 2] {
        self.precision
    }

    pub fn coefficient(&self, u_exp: u32, x_exp: u32) -> BigRational {
        self.coeffs.get(&[u_exp, x_exp]).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of `var^k` in a univariate series.
    pub fn coefficient_of(&self, var: Var, k: u32) -> BigRational {
        let mut e = [0, 0];
        e[var.slot()] = k;
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u32; 2], &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    fn in_range(&self, e: [u32; 2]) -> bool {
        (0..2).all(|s| self.precision[s].is_none_or(|p| e[s] < p))
    }

    fn set(&mut self, e: [u32; 2], c: BigRational) {
        if !self.in_range(e) {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    fn accumulate(&mut self, e: [u32; 2], c: BigRational) {
        if c.is_zero() || !self.in_range(e) {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(0, 0)
    }

    /// The single variable this series lives in: truncated in that variable,
    /// exact in the other and free of it.
    pub fn univariate_var(&self) -> Option<Var> {
        [Var::U, Var::X].into_iter().find(|&v| {
            let other = 1 - v.slot();
            self.precision[v.slot()].is_some()
                && self.precision[other].is_none()
                && self.coeffs.keys().all(|e| e[other] == 0)
        })
    }

    fn combined_precision(&self, other: &Self) -> [Option<u32>; 2] {
        [
            min_bound(self.precision[0], other.precision[0]),
            min_bound(self.precision[1], other.precision[1]),
        ]
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self {
            precision: self.combined_precision(other),
            coeffs: BTreeMap::new(),
        };
        for (e, c) in self.terms().chain(other.terms()) {
            out.accumulate(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self {
            precision: self.precision,
            coeffs: BTreeMap::new(),
        };
        for (e, c) in self.terms() {
            out.set(e, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self {
            precision: self.combined_precision(other),
            coeffs: BTreeMap::new(),
        };
        for (ea, a) in self.terms() {
            for (eb, b) in other.terms() {
                out.accumulate([ea[0] + eb[0], ea[1] + eb[1]], a * b);
            }
        }
        out
    }

    /// Divide by `var`; every term must carry at least one factor of `var`.
    pub fn divide_by(&self, var: Var) -> Result<Self, ExactAlgError> {
        let slot = var.slot();
        let mut precision = self.precision;
        precision[slot] = precision[slot].map(|p| p.saturating_sub(1).max(1));
        let mut out = Self {
            precision,
            coeffs: BTreeMap::new(),
        };
        for (mut e, c) in self.terms() {
            if e[slot] == 0 {
                return Err(ExactAlgError::NotDivisibleByVariable);
            }
            e[slot] -= 1;
            out.set(e, c.clone());
        }
        Ok(out)
    }

    /// `exp(self)`; requires a zero constant term and every term to involve a
    /// truncated variable, so that the exponential series terminates.
    pub fn exp(&self) -> Result<Self, ExactAlgError> {
        if !self.constant_term().is_zero() {
            return Err(ExactAlgError::NonzeroConstantTerm);
        }
        let truncated_degree = |e: &[u32; 2]| -> u32 {
            (0..2).filter(|&s| self.precision[s].is_some()).map(|s| e[s]).sum()
        };
        let valuation = self.coeffs.keys().map(truncated_degree).min();
        let budget: u32 = self.precision.iter().flatten().map(|p| p - 1).sum();
        let max_power = match valuation {
            None => 0,
            Some(0) => return Err(ExactAlgError::NonTerminatingExp),
            Some(v) => budget / v,
        };
        let mut result = Self {
            precision: self.precision,
            coeffs: BTreeMap::new(),
        };
        result.set([0, 0], BigRational::one());
        let mut power = result.clone();
        for k in 1..=max_power {
            power = power.mul(self).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if power.coeffs.is_empty() {
                break;
            }
            result = result.add(&power);
        }
        Ok(result)
    }

    /// Truncate to the given order in `var` (never extends known precision).
    pub fn truncate(&self, var: Var, order: u32) -> Self {
        let mut out = self.clone();
        let slot = var.slot();
        out.precision[slot] = min_bound(out.precision[slot], Some(order + 1));
        let bound = out.precision;
        out.coeffs
            .retain(|e, _| (0..2).all(|s| bound[s].is_none_or(|p| e[s] < p)));
        out
    }
}

impl fmt::Debug for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalSeries(prec={:?}, ", self.precision)?;
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})u^{}x^{}", e[0], e[1])?;
        }
        write!(f, ")")
    }
}

fn common_var(f: &RationalSeries, g: &RationalSeries) -> Result<Var, ExactAlgError> {
    match (f.univariate_var(), g.univariate_var()) {
        (Some(a), Some(b)) if a == b => Ok(a),

        _ => Err(ExactAlgError::VariableMismatch),
    }
}

/// `f ∘ g` through `order`, for univariate series in the same variable.
///
/// The result is only known as far as both inputs are known, so its precision
/// is the minimum of `order + 1` and the inputs' precisions.
pub fn series_compose(
    f: &RationalSeries,
    g: &RationalSeries,
    order: u32,
) -> Result<RationalSeries, ExactAlgError> {
    let var = common_var(f, g)?;
    if !g.constant_term().is_zero() {
        return Err(ExactAlgError::NonzeroConstantTerm);
    }
    let slot = var.slot();
    let known = |s: &RationalSeries| s.precision[slot].unwrap_or(u32::MAX);
    let prec = (order + 1).min(known(g)).min(known(f));
    let g = g.truncate(var, prec - 1);
    let top = prec - 1;
    // Horner: (((f_N) g + f_{N-1}) g + ...) + f_0
    let mut acc = RationalSeries::constant_in(var, f.coefficient_of(var, top), prec - 1);
    for k in (0..top).rev() {
        acc = acc.mul(&g);
        acc.accumulate([0, 0], f.coefficient_of(var, k));
    }
    Ok(acc.truncate(var, prec - 1))
}

/// `exp(f)` through `order` in every variable present.
pub fn series_exp(f: &RationalSeries, order: u32) -> Result<RationalSeries, ExactAlgError> {
    let mut t = f.clone();
    for var in [Var::U, Var::X] {
        if t.precision[var.slot()].is_some() {
            t = t.truncate(var, order);
        }
    }
    t.exp()
}

/// Compositional inverse `g` of `f` through `order`: `f ∘ g = g ∘ f = x`.
///
/// `f` must be univariate with zero constant term and linear coefficient 1.
pub fn series_reversion(f: &RationalSeries, order: u32) -> Result<RationalSeries, ExactAlgError> {
    let var = f.univariate_var().ok_or(ExactAlgError::VariableMismatch)?;
    if !f.constant_term().is_zero() {
        return Err(ExactAlgError::NonzeroConstantTerm);
    }
    if !f.coefficient_of(var, 1).is_one() {
        return Err(ExactAlgError::NotReversible);
    }
    let order = order.min(f.precision[var.slot()].map_or(u32::MAX, |p| p - 1));
    let mut g = RationalSeries::variable(var, order);
    // f(g) = g + (higher terms of f)(g); the x^m coefficient of f(g) is
    // g_m plus terms depending only on g_1..g_{m-1}
    for m in 2..=order {
        let fg = series_compose(f, &g, m)?;
        let c = fg.coefficient_of(var, m);
        let mut e = [0, 0];
        e[var.slot()] = m;
        g.set(e, -c);
    }
    Ok(g)
}
