use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use wittstack::arith::{LaurentSeries, RatFunc};
use wittstack::asw::{upper_jumps, LocalWitt};
use wittstack::cover::{analyze_cover, CoverSpec};
use wittstack::ramification::{lower_to_upper, upper_to_lower};
use wittstack::witt::{from_zpn, to_zpn, witt_add, witt_mul, wp, WittVector};

fn laurent_poly(p: u64, coeffs: &[u8], lo: i64) -> RatFunc {
    coeffs
        .iter()
        .enumerate()
        .fold(RatFunc::zero(p), |acc, (i, &c)| acc.add(&RatFunc::monomial(p, c as i64, lo + i as i64)))
}

/// Sorted upper-jump vectors of every branch point.
fn jump_profile(spec: &CoverSpec) -> Option<Vec<Vec<u64>>> {
    let mut v: Vec<Vec<u64>> = analyze_cover(spec).ok()?.branch.iter().map(|b| b.upper_jumps.clone()).collect();
    v.sort();
    Some(v)
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zpn_is_a_ring_map(p in prime(), n in 1usize..=3, a in 0u64..1000, b in 0u64..1000) {
        let q = p.pow(n as u32);
        let (a, b) = (a % q, b % q);
        let (x, y) = (from_zpn(p, n, a).unwrap(), from_zpn(p, n, b).unwrap());
        prop_assert_eq!(to_zpn(&x).unwrap(), a);
        prop_assert_eq!(to_zpn(&witt_add(&x, &y).unwrap()).unwrap(), (a + b) % q);
        prop_assert_eq!(to_zpn(&witt_mul(&x, &y).unwrap()).unwrap(), (a * b) % q);
    }

    #[test]
    fn herbrand_inverse(p in prime(), r in 1u64..=4, raw in prop::collection::vec(1u64..40, 1..=3)) {
        prop_assume!(r % p != 0);
        // any increasing rational sequence works here
        let mut up = vec![];
        let mut acc = BigRational::from_integer(BigInt::from(0));
        for d in raw {
            acc += BigRational::new(BigInt::from(d), BigInt::from(r));
            up.push(acc.clone());
        }
        let low = upper_to_lower(&up, r, p).unwrap();
        prop_assert_eq!(lower_to_upper(&low, r, p).unwrap(), up);
    }

    #[test]
    fn gauge_invariance(p in prime(), xs in prop::collection::vec(0u8..5, 8..=8), bs in prop::collection::vec(0u8..5, 4..=4)) {
        let series = |c: &[u8]| {
            let terms: Vec<(i64, i64)> = c.iter().enumerate().map(|(i, &v)| (i as i64 - 6, v as i64)).collect();
            LaurentSeries::from_terms(p, &terms)
        };
        let x = WittVector::new(p, vec![series(&xs[..4]), series(&xs[4..])]).unwrap();
        let b = WittVector::new(p, vec![series(&bs[..2]), series(&bs[2..])]).unwrap();
        let y = witt_add(&x, &wp(&b).unwrap()).unwrap();
        let ux = upper_jumps(&LocalWitt::from_witt(x).unwrap()).unwrap();
        let uy = upper_jumps(&LocalWitt::from_witt(y).unwrap()).unwrap();
        prop_assert_eq!(ux, uy);
    }

    #[test]
    fn coordinate_invariance(
        p in prime(),
        f in prop::collection::vec(0u8..5, 7),
        g in prop::collection::vec(0u8..5, 7),
        c in 1i64..5,
    ) {
        let spec = CoverSpec::new(p, vec![laurent_poly(p, &f, -3), laurent_poly(p, &g, -3)], None);
        prop_assume!(spec.is_ok());
        let spec = spec.unwrap();
        let base = jump_profile(&spec);
        prop_assume!(base.is_some());
        let moved = spec.map_components(|h| h.translate(c)).unwrap();
        let flipped = spec.map_components(|h| h.invert_variable()).unwrap();
        prop_assert_eq!(&jump_profile(&moved), &base);
        prop_assert_eq!(&jump_profile(&flipped), &base);
    }
}

#[test]
fn constant_term_does_not_ramify() {
    let x = LocalWitt::new(3, vec![LaurentSeries::monomial(3, 1, 0), LaurentSeries::monomial(3, 2, 3)]).unwrap();
    assert!(upper_jumps(&x).unwrap().iter().all(|&u| u == 0));
}
