use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{factorial, IdentityError};
use crate::exactalg::{RationalSeries, Var};

/// Largest size for which generating-function tables are computed.
pub const MAX_EGF_ORDER: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EgfFamily {
    /// pointed partitions: `(exp(x u e^u) - 1) / x`
    A,
    /// multi-pointed partitions: `(exp(x e^u (e^u - 1)) - 1) / x`
    MA,
}

/// `table[n-1][k-1]` is the number of elements on `n` points with `k` blocks,
/// read off as `n!` times the coefficient of `u^n x^(k-1)`.
pub fn egf_counts(family: EgfFamily, max_n: usize) -> Result<Vec<Vec<BigInt>>, IdentityError> {
    if max_n == 0 || max_n > MAX_EGF_ORDER {
        return Err(IdentityError::OutOfRange(format!(
            "series order must be between 1 and {MAX_EGF_ORDER}, got {max_n}"
        )));
    }
    let order = max_n as u32;
    let block = match family {
        EgfFamily::A => RationalSeries::var_times_exp(Var::U, order),
        EgfFamily::MA => {
            // e^u (e^u - 1) = e^{2u} - e^u
            let coeffs: Vec<BigRational> = (0..=max_n)
                .map(|k| {
                    let two_k = num_traits::pow(BigInt::from(2), k);
                    BigRational::new(two_k - BigInt::one(), factorial(k))
                })
                .collect();
            RationalSeries::from_univariate(Var::U, &coeffs, order)
        }
    };
    let inner = RationalSeries::variable(Var::X, order).mul(&block);
    let one = RationalSeries::constant_in(Var::U, BigRational::one(), order);
    let series = inner.exp()?.sub(&one).divide_by(Var::X)?;
    let mut table = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let scale = BigRational::from_integer(factorial(n));
        let row: Vec<BigInt> = (1..=n)
            .map(|k| {
                let c = series.coefficient(n as u32, k as u32 - 1) * &scale;
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        table.push(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_tables() {
        let a = egf_counts(EgfFamily::A, 3).unwrap();
        assert_eq!(a[0], ints(&[1]));
        assert_eq!(a[2], ints(&[3, 6, 1]));
        let ma = egf_counts(EgfFamily::MA, 3).unwrap();
        assert_eq!(ma[2], ints(&[7, 9, 1]));
        assert!(egf_counts(EgfFamily::A, 0).is_err());
    }

    #[test]
    fn totals() {
        let a = egf_counts(EgfFamily::A, 8).unwrap();
        let totals: Vec<BigInt> = a.iter().map(|r| r.iter().sum()).collect();
        assert_eq!(totals, ints(&[1, 3, 10, 41, 196, 1057, 6322, 41393]));
        let ma = egf_counts(EgfFamily::MA, 8).unwrap();
        let totals: Vec<BigInt> = ma.iter().map(|r| r.iter().sum()).collect();
        assert_eq!(totals, ints(&[1, 4, 17, 89, 552, 3895, 30641, 265186]));
    }
}
