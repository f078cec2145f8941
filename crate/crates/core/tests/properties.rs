mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn right_negative_products(a in right_negative(6), b in right_negative(6)) {
        check_right_negative_closure(&a, &b)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn weight_is_multiplicative_d5(a in any_monomial(5), b in any_monomial(5), i in 1usize..=5, r in -10i64..=10) {
        check_wt_homomorphism(&minaff::Diagram::d(5).unwrap(), &a, &b, i, r)?;
    }

    #[test]
    fn weight_is_multiplicative_e6(a in any_monomial(6), b in any_monomial(6), i in 1usize..=6, r in -10i64..=10) {
        check_wt_homomorphism(&minaff::Diagram::e(6).unwrap(), &a, &b, i, r)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn kr_fragments_grow_by_single_steps(r in -6i64..=6, m in 1u32..=4) {
        for d in grid_diagrams() {
            for l in d.nodes() {
                check_fm_reconstruction(&d, l, r, m)?;
            }
        }
    }
}

#[test]
fn fm_reconstruction_covers_every_pair() {
    let pairs = fm_reconstruction_exhaustive().unwrap();
    let expected: usize =
        grid_diagrams().iter().map(|d| d.connected_subdiagrams().iter().map(|j| j.len()).sum::<usize>()).sum();
    assert_eq!(pairs, expected);
}

#[test]
fn weight_of_a_string() {
    let d = minaff::Diagram::d(4).unwrap();
    let w = minaff::LMonomial::string(2, 5, 3).weight(d.rank());
    assert_eq!(w, minaff::Weight::fundamental(4, 2).scaled(3));
}
