use super::{build_poset, FinitePoset, PosetError};
use crate::partitions::{enumerate_family, Element, FamilySpec};

/// A family poset together with the elements its indices refer to.
#[derive(Debug, Clone)]
pub struct FamilyPoset {
    pub spec: FamilySpec,
    pub elements: Vec<Element>,
    pub poset: FinitePoset,
}

impl FamilyPoset {
    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }
}

/// Enumerate a family (refusing beyond `cap` elements) and build its poset.
pub fn family_poset(spec: &FamilySpec, cap: usize) -> Result<FamilyPoset, PosetError> {
    let elements = enumerate_family(spec, cap)?;
    let labels = elements.iter().map(|e| e.to_string()).collect();
    let poset = build_poset(labels, |a, b| {
        spec.leq(&elements[a], &elements[b]).expect("same ground set")
    })?;
    Ok(FamilyPoset {
        spec: *spec,
        elements,
        poset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntPolynomial;
    use crate::partitions::DEFAULT_ELEMENT_CAP;
    use num_bigint::BigInt;

    fn build(spec: FamilySpec) -> FinitePoset {
        family_poset(&spec, DEFAULT_ELEMENT_CAP).unwrap().poset
    }

    #[test]
    fn figure_one_edges() {
        let p = build(FamilySpec::A { n: 3 });
        assert_eq!(p.len(), 10);
        // 6 middle elements over the bottom, each top over 4 middles
        assert_eq!(p.covers().len(), 18);
        assert_eq!(p.maximal_elements().len(), 3);
    }

    #[test]
    fn charpoly_examples() {
        let cases = [
            (FamilySpec::A { n: 3 }, vec![9, -6, 1]),
            (FamilySpec::B { n: 2 }, vec![16, -8, 1]),
            (FamilySpec::Beta { n: 2 }, vec![5, -6, 1]),
        ];
        for (spec, coeffs) in cases {
            assert_eq!(build(spec).characteristic_polynomial().unwrap(), IntPolynomial::from_i64s(&coeffs), "{spec}");
        }
    }

    #[test]
    fn mobius_examples() {
        let a = build(FamilySpec::AFixed { n: 3, i: 1 });
        assert_eq!(a.mobius(a.bottom(), a.top().unwrap()).unwrap(), BigInt::from(3));
        let b = build(FamilySpec::BInterval { n: 2 });
        assert_eq!(b.mobius(b.bottom(), b.top().unwrap()).unwrap(), BigInt::from(4));
    }

    #[test]
    fn maximal_counts() {
        for n in 1..=4 {
            assert_eq!(build(FamilySpec::A { n }).maximal_elements().len(), n);
        }
        for n in 1..=3 {
            assert_eq!(build(FamilySpec::B { n }).maximal_elements().len(), 2 * n);
        }
    }

    #[test]
    fn small_intervals() {
        let fp = family_poset(&FamilySpec::A { n: 3 }, DEFAULT_ELEMENT_CAP).unwrap();
        let p = &fp.poset;
        let top = p.index_of("{1*2|3*}").unwrap();
        assert_eq!(p.interval(p.bottom(), top).unwrap().len(), 2);
        assert_eq!(p.interval(top, top).unwrap().len(), 1);
        let max = p.index_of("{1*23}").unwrap();
        let sub = p.interval(p.bottom(), max).unwrap();
        let fixed = build(FamilySpec::AFixed { n: 3, i: 1 });
        assert!(super::super::are_isomorphic(&sub, &fixed).unwrap());
    }
}
