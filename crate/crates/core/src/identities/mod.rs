//! Closed forms for the characteristic polynomials of every family, the
//! constants and homology ranks they predict, and checks of the auxiliary
//! identities behind them.

mod egf;
mod lemmas;
mod theorems;

pub use egf::{egf_counts, EgfFamily, MAX_EGF_ORDER};
pub use lemmas::{verify_lemma, Lemma, LemmaFailure, LemmaReport, LemmaSpec};
pub use theorems::{
    check_family, theorem_specs, verify_theorems, verify_theorems_with, TheoremGroup, TheoremReport, TheoremRow,
};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::exactalg::{ExactAlgError, IntPolynomial};
use crate::partitions::{FamilySpec, PartitionError};
use crate::posetcore::PosetError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("no closed form is known for {0}")]
    NoClosedForm(String),
    #[error("{0} has no single top element")]
    NotBounded(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    ExactAlg(#[from] ExactAlgError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

fn big(k: usize) -> BigInt {
    BigInt::from(k)
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * big(j))
}

/// `k^e` with `0^0 = 1`.
fn power(k: usize, e: usize) -> BigInt {
    num_traits::pow(big(k), e)
}

fn sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn x_minus(k: usize) -> IntPolynomial {
    IntPolynomial::x_minus(big(k))
}

/// `⟨a⟩⟨b⟩ / ⟨c⟩` with `⟨n⟩ = (x-1)(x-2)⋯(x-n)`.
fn bracket_ratio(a: usize, b: usize, c: usize) -> Result<IntPolynomial, IdentityError> {
    let num = IntPolynomial::descending(a) * IntPolynomial::descending(b);
    Ok(num.exact_div(&IntPolynomial::descending(c))?)
}

/// The predicted characteristic polynomial of a family.
pub fn closed_form(spec: &FamilySpec) -> Result<IntPolynomial, IdentityError> {
    spec.validate()?;
    let p = match *spec {
        FamilySpec::A { n } => x_minus(n).pow(n as u32 - 1),
        FamilySpec::AFixed { n, i } if i == n => IntPolynomial::one(),
        FamilySpec::AFixed { n, i } => x_minus(i) * x_minus(n).pow((n - 1 - i) as u32),
        FamilySpec::AExtended { n } => {
            let shifted = IntPolynomial::x() * x_minus(n).pow(n as u32 - 1);
            let correction = sign(n - 1) * power(n - 1, n - 1);
            shifted - IntPolynomial::constant(correction)
        }
        FamilySpec::B { n } => x_minus(2 * n).pow(n as u32),
        FamilySpec::BFixed { n, i } => x_minus(2 * n).pow((n - i) as u32),
        FamilySpec::BInterval { n } => x_minus(1) * x_minus(2 * n).pow(n as u32 - 1),
        FamilySpec::Beta { n } => x_minus(1) * x_minus(2 * n + 1).pow(n as u32 - 1),
        FamilySpec::MA { n } => bracket_ratio(0, 2 * n - 1, n)?,
        FamilySpec::MAInterval { n, i } => bracket_ratio(i, 2 * n - i - 1, n)?,
        FamilySpec::MAFixed { n, i } => {
            let num = x_minus(2 * i) * IntPolynomial::descending(i) * IntPolynomial::descending(2 * n - 1);
            let den = x_minus(i) * IntPolynomial::descending(n + i);
            num.exact_div(&den)?
        }
        FamilySpec::BetaB { .. } | FamilySpec::BetaBInterval { .. } => {
            return Err(IdentityError::NoClosedForm(spec.to_string()))
        }
    };
    Ok(p)
}

/// The predicted constant term, from its own closed form.
pub fn expected_constant(spec: &FamilySpec) -> Result<BigInt, IdentityError> {
    spec.validate()?;
    let c = match *spec {
        FamilySpec::A { n } => sign(n - 1) * power(n, n - 1),
        FamilySpec::AFixed { n, i } if i == n => BigInt::one(),
        FamilySpec::AFixed { n, i } => sign(n - i) * big(i) * power(n, n - 1 - i),
        FamilySpec::AExtended { n } => sign(n) * power(n - 1, n - 1),
        FamilySpec::B { n } => sign(n) * power(2 * n, n),
        FamilySpec::BFixed { n, i } => sign(n - i) * power(2 * n, n - i),
        FamilySpec::BInterval { n } => sign(n) * power(2 * n, n - 1),
        FamilySpec::Beta { n } => sign(n) * power(2 * n + 1, n - 1),
        FamilySpec::MA { n } => sign(n - 1) * factorial(2 * n - 1) / factorial(n),
        FamilySpec::MAInterval { n, i } => {
            sign(n - 1) * factorial(i) * factorial(2 * n - i - 1) / factorial(n)
        }
        FamilySpec::MAFixed { n, i } => {
            sign(n - 1) * big(2) * factorial(i) * factorial(2 * n - 1) / factorial(n + i)
        }
        FamilySpec::BetaB { .. } | FamilySpec::BetaBInterval { .. } => {
            return Err(IdentityError::NoClosedForm(spec.to_string()))
        }
    };
    Ok(c)
}

/// Predicted rank of the top reduced homology of the proper part, or for the
/// whole families `A`, `B` and `MA`, its sum over the maximal intervals.
pub fn expected_top_rank(spec: &FamilySpec) -> Result<BigInt, IdentityError> {
    spec.validate()?;
    match *spec {
        FamilySpec::A { n } => Ok(power(n, n - 1)),
        FamilySpec::B { n } | FamilySpec::BFixed { n, i: 0 } => Ok(power(2 * n, n)),
        FamilySpec::MA { n } => Ok((1..=n)
            .map(|i| {
                let choose = factorial(n) / (factorial(i) * factorial(n - i));
                choose * factorial(i) * factorial(2 * n - i - 1) / factorial(n)
            })
            .sum()),
        FamilySpec::AFixed { i, n } if i == 1 || i == n => Ok(expected_constant(spec)?.abs()),
        FamilySpec::BFixed { n, i } if i == n => Ok(BigInt::one()),
        FamilySpec::MAFixed { n, i } if i == n => Ok(expected_constant(spec)?.abs()),
        FamilySpec::AExtended { .. }
        | FamilySpec::BInterval { .. }
        | FamilySpec::Beta { .. }
        | FamilySpec::MAInterval { .. } => Ok(expected_constant(spec)?.abs()),
        _ => Err(IdentityError::NotBounded(spec.to_string())),
    }
}

/// `χ(1)`; zero for every bounded family with more than one element.
pub fn value_at_one(p: &IntPolynomial) -> BigInt {
    p.eval(&BigInt::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form(&FamilySpec::A { n: 3 }).unwrap(), poly(&[9, -6, 1]));
        assert_eq!(closed_form(&FamilySpec::BInterval { n: 2 }).unwrap(), poly(&[4, -5, 1]));
        assert_eq!(closed_form(&FamilySpec::MAInterval { n: 2, i: 1 }).unwrap(), poly(&[-1, 1]));
        assert_eq!(closed_form(&FamilySpec::MAFixed { n: 3, i: 1 }).unwrap(), poly(&[10, -7, 1]));
        assert_eq!(closed_form(&FamilySpec::AExtended { n: 1 }).unwrap(), poly(&[-1, 1]));
        assert!(matches!(
            closed_form(&FamilySpec::BetaB { n: 2 }),
            Err(IdentityError::NoClosedForm(_))
        ));
    }

    #[test]
    fn constants_and_ranks() {
        assert_eq!(expected_constant(&FamilySpec::AFixed { n: 4, i: 1 }).unwrap(), BigInt::from(-16));
        assert_eq!(expected_top_rank(&FamilySpec::A { n: 3 }).unwrap(), BigInt::from(9));
        assert_eq!(expected_top_rank(&FamilySpec::AExtended { n: 2 }).unwrap(), BigInt::from(1));
        assert!(expected_top_rank(&FamilySpec::AFixed { n: 4, i: 2 }).is_err());
    }

    #[test]
    fn constant_terms_agree_with_constants() {
        for n in 1..=7 {
            let mut specs = vec![
                FamilySpec::A { n },
                FamilySpec::AExtended { n },
                FamilySpec::B { n },
                FamilySpec::BInterval { n },
                FamilySpec::Beta { n },
                FamilySpec::MA { n },
            ];
            for i in 1..=n {
                specs.push(FamilySpec::AFixed { n, i });
                specs.push(FamilySpec::MAInterval { n, i });
                specs.push(FamilySpec::MAFixed { n, i });
            }
            for i in 0..=n {
                specs.push(FamilySpec::BFixed { n, i });
            }
            for s in specs {
                let p = closed_form(&s).unwrap();
                assert_eq!(p.constant_term(), expected_constant(&s).unwrap(), "{s}");
                assert_eq!(p.leading_coefficient(), Some(&BigInt::one()), "{s}");
            }
        }
    }

    #[test]
    fn bounded_families_vanish_at_one() {
        for n in 2..=7 {
            let mut specs = vec![
                FamilySpec::BInterval { n },
                FamilySpec::Beta { n },
                FamilySpec::AFixed { n, i: 1 },
                FamilySpec::AExtended { n },
            ];
            for i in 1..=n {
                specs.push(FamilySpec::MAInterval { n, i });
            }
            for s in specs {
                assert!(value_at_one(&closed_form(&s).unwrap()).is_zero(), "{s}");
            }
        }
    }

    #[test]
    fn specializations_at_i_equal_n() {
        for n in 1..=7 {
            let classical = IntPolynomial::descending(n - 1);
            assert_eq!(closed_form(&FamilySpec::MAInterval { n, i: n }).unwrap(), classical);
            assert_eq!(closed_form(&FamilySpec::MAFixed { n, i: n }).unwrap(), classical);
        }
    }
}
