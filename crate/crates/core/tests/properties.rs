mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::{mobius_multiplicative, mobius_sums_vanish, philip_hall_holds, poset};
use pointed_posets::exactalg::{series_compose, series_reversion, IntPolynomial, RationalSeries, Var};
use pointed_posets::homology::{open_interval_complex, smith_normal_form};
use pointed_posets::partitions::{canonical_string, parse_element, Element, FamilySpec, DEFAULT_ELEMENT_CAP};
use pointed_posets::posetcore::family_poset;

fn small_specs() -> Vec<FamilySpec> {
    let mut v = Vec::new();
    for n in 1..=3 {
        v.push(FamilySpec::A { n });
        v.push(FamilySpec::AExtended { n });
        v.push(FamilySpec::MA { n });
        v.push(FamilySpec::B { n });
        v.push(FamilySpec::Beta { n });
        v.push(FamilySpec::BetaB { n });
        v.push(FamilySpec::BetaBInterval { n });
        v.push(FamilySpec::BInterval { n });
        for i in 1..=n {
            v.push(FamilySpec::AFixed { n, i });
            v.push(FamilySpec::MAFixed { n, i });
            v.push(FamilySpec::MAInterval { n, i });
        }
        for i in 0..=n {
            v.push(FamilySpec::BFixed { n, i });
        }
    }
    v.push(FamilySpec::AFixed { n: 4, i: 1 });
    v.push(FamilySpec::MAInterval { n: 4, i: 2 });
    v
}

fn spec_strategy() -> impl Strategy<Value = FamilySpec> {
    prop::sample::select(small_specs())
}

/// Exact determinant by rational elimination.
fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det.to_integer()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn element_text_round_trips(spec in spec_strategy(), pick in any::<prop::sample::Index>()) {
        let fp = family_poset(&spec, DEFAULT_ELEMENT_CAP).unwrap();
        let e = &fp.elements[pick.index(fp.elements.len())];
        let text = e.to_string();
        prop_assert_eq!(&parse_element(&text, &spec).unwrap(), e);
        if let Element::Partition(p) = e {
            prop_assert_eq!(canonical_string(p), text);
        }
    }

    #[test]
    fn mobius_sums_are_zero(spec in spec_strategy()) {
        prop_assert!(mobius_sums_vanish(&poset(spec)));
    }

    #[test]
    fn philip_hall(spec in spec_strategy()) {
        prop_assert!(philip_hall_holds(&poset(spec)));
    }

    #[test]
    fn mobius_is_multiplicative(a in spec_strategy(), b in spec_strategy()) {
        let (p, q) = (poset(a), poset(b));
        prop_assume!(p.len() * q.len() <= 400);
        prop_assert!(mobius_multiplicative(&p, &q));
    }

    #[test]
    fn boundary_squares_to_zero(spec in spec_strategy(), pick in any::<prop::sample::Index>()) {
        let p = poset(spec);
        let b = pick.index(p.len());
        let c = open_interval_complex(&p, p.bottom(), b).unwrap();
        for d in 1..=c.dimension().max(0) as usize {
            let product = c.boundary_matrix(d).checked_mul(&c.boundary_matrix(d - 1)).unwrap();
            prop_assert!(product.is_zero());
        }
    }

    #[test]
    fn smith_form_matches_determinant(m in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 4)) {
        let factors = smith_normal_form(&m);
        let det = determinant(&m);
        if factors.len() < 4 {
            prop_assert!(det.is_zero());
        } else {
            let product: BigInt = factors.iter().product();
            prop_assert_eq!(product, det.abs());
        }
        for w in factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn polynomial_evaluation_is_a_ring_map(
        a in prop::collection::vec(-20i64..=20, 0..6),
        b in prop::collection::vec(-20i64..=20, 0..6),
        x in -9i64..=9,
    ) {
        let (p, q) = (IntPolynomial::from_i64s(&a), IntPolynomial::from_i64s(&b));
        let x = BigInt::from(x);
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        if !q.is_zero() {
            prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
        }
    }

    #[test]
    fn reversion_inverts_composition(c in prop::collection::vec(-5i64..=5, 4)) {
        let order = 6;
        let mut coeffs = vec![BigRational::zero(), BigRational::one()];
        coeffs.extend(c.iter().map(|&k| BigRational::from_integer(k.into())));
        let f = RationalSeries::from_univariate(Var::X, &coeffs, order);
        let g = series_reversion(&f, order).unwrap();
        let x = RationalSeries::variable(Var::X, order);
        prop_assert_eq!(series_compose(&f, &g, order).unwrap(), x.clone());
        prop_assert_eq!(series_compose(&g, &f, order).unwrap(), x);
    }
}

#[test]
fn mobius_suites_on_the_stated_families() {
    let mut specs = vec![];
    for n in 1..=5 {
        specs.push(FamilySpec::A { n });
    }
    for n in 1..=3 {
        specs.push(FamilySpec::B { n });
    }
    for n in 1..=4 {
        specs.push(FamilySpec::MA { n });
    }
    for spec in specs {
        let p = poset(spec);
        assert!(mobius_sums_vanish(&p), "{spec}");
        assert!(philip_hall_holds(&p), "{spec}");
    }
}
