use colorful_selection::bounds::*;
use colorful_selection::rational::{int, ratio};
use colorful_selection::{Error, Rational};
use proptest::prelude::*;

#[test]
fn ordering_holds_through_dimension_twelve() {
    for d in 1..=12 {
        let r = bounds_row(d).unwrap();
        assert!(r.is_ordered(), "d={d}");
        assert!(r.barany <= r.gromov && r.gromov <= r.upper_bmn, "d={d}");
        assert_eq!(r.gromov == r.upper_bmn, d <= 2, "d={d}");
        if d >= 2 {
            assert!(r.karasev_uncolored < r.gromov, "d={d}");
        }
    }
}

#[test]
fn three_dimensional_reference_interval() {
    let r = bounds_row(3).unwrap();
    let (lo, hi) = r.c3_interval_exact().unwrap();
    assert_eq!(hi, ratio(3, 32));
    assert!(r.gromov < lo && hi <= r.upper_bmn);
    assert!(bounds_row(2).unwrap().c3_interval_exact().is_none());
}

#[test]
fn parity_gap_rejects_out_of_range() {
    assert!(matches!(parity_gap_lemma_check(&ratio(-1, 2), &int(0)), Err(Error::OutOfRange(_))));
    assert!(matches!(parity_gap_lemma_check(&int(0), &ratio(3, 2)), Err(Error::OutOfRange(_))));
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (1i64..1000).prop_flat_map(|q| (0..=q, Just(q))).prop_map(|(p, q)| ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn parity_gap_difference_is_half_square(a in unit_rational(), b in unit_rational()) {
        let r = parity_gap_lemma_check(&a, &b).unwrap();
        prop_assert!(r.holds);
        let diff = &a - &b;
        prop_assert_eq!(&r.lhs - &r.rhs, &diff * &diff / int(2));
    }
}
