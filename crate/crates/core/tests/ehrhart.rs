mod common;

use lattice_pip::constructions::{construct_pip, t_xyz};
use lattice_pip::ehrhart::{all_edges_reticular, check_reciprocity, is_pseudointegral, reconstruct_quasipolynomial};
use lattice_pip::vieta::VietaSolution;
use lattice_pip::{Rational, RationalPolygon, Vec2};
use num_bigint::BigInt;
use proptest::prelude::*;

use common::{brute_counts, integral_polygon, pt, q, rational_polygon, unimodular};

#[test]
fn unit_square_is_t_plus_one_squared() {
    let sq = RationalPolygon::hull(&[Vec2::from_ints(0, 0), Vec2::from_ints(1, 0), Vec2::from_ints(1, 1), Vec2::from_ints(0, 1)]).unwrap();
    let qp = reconstruct_quasipolynomial(&sq).unwrap();
    assert_eq!(qp.period(), 1);
    assert_eq!(qp.coeffs(0), &[q(1, 1), q(2, 1), q(1, 1)]);
    assert!(check_reciprocity(&sq, 5).unwrap());
}

#[test]
fn four_gon_has_two_residue_classes() {
    let p = RationalPolygon::hull(&[pt((1, 1), (0, 1)), pt((0, 1), (2, 3)), pt((-1, 1), (0, 1)), pt((0, 1), (-2, 3))]).unwrap();
    let qp = reconstruct_quasipolynomial(&p).unwrap();
    let distinct: std::collections::BTreeSet<_> = qp.residues().map(|(_, c)| c.clone()).collect();
    assert!(distinct.len() >= 2);
    for t in 1..=12 {
        assert_eq!(qp.eval(&BigInt::from(t)), Rational::from_integer(brute_counts(&p, t).0.into()));
    }
}

#[test]
fn certificates_of_examples() {
    let t = t_xyz(&VietaSolution::new(3, 6, 9).unwrap()).unwrap();
    let cert = is_pseudointegral(&t).unwrap();
    assert!(cert.is_pip);
    assert_eq!(cert.profile, Some((BigInt::from(1), BigInt::from(2))));

    let eight = RationalPolygon::hull(&[
        pt((1, 2), (0, 1)),
        pt((1, 3), (1, 3)),
        pt((0, 1), (1, 2)),
        pt((-1, 3), (1, 3)),
        pt((-1, 2), (0, 1)),
        pt((-1, 3), (-1, 3)),
        pt((0, 1), (-1, 2)),
        pt((1, 3), (-1, 3)),
    ])
    .unwrap();
    assert!(!is_pseudointegral(&eight).unwrap().is_pip);
}

#[test]
fn reciprocity_examples() {
    let t111 = RationalPolygon::hull(&[Vec2::from_ints(-3, 2), Vec2::from_ints(0, -1), Vec2::from_ints(3, -1)]).unwrap();
    assert!(check_reciprocity(&t111, 6).unwrap());
    assert!(check_reciprocity(&construct_pip(4, 2, 12).unwrap(), 12).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn quasipolynomial_predicts_counts(p in rational_polygon(8, 4), t in 1i64..30) {
        let qp = reconstruct_quasipolynomial(&p).unwrap();
        prop_assert_eq!(qp.eval(&BigInt::from(t)), Rational::from_integer(brute_counts(&p, t).0.into()));
        for (_, c) in qp.residues() {
            prop_assert_eq!(&c[2], p.area());
        }
    }

    #[test]
    fn reciprocity_holds(p in rational_polygon(8, 4)) {
        let t_max = 2 * u64::try_from(p.denominator()).unwrap();
        prop_assert!(check_reciprocity(&p, t_max).unwrap());
    }

    #[test]
    fn integral_polygons_are_pips(p in integral_polygon(5)) {
        let cert = is_pseudointegral(&p).unwrap();
        prop_assert!(cert.is_pip);
        prop_assert_eq!(cert.ehrhart.period(), 1);
        prop_assert!(all_edges_reticular(&p));
    }

    #[test]
    fn verdict_is_lattice_invariant(p in rational_polygon(8, 4), m in unimodular()) {
        let image = p.apply_map(&m).unwrap();
        prop_assert_eq!(is_pseudointegral(&p).unwrap().is_pip, is_pseudointegral(&image).unwrap().is_pip);
    }

    #[test]
    fn pips_have_reticular_edges(d in prop::sample::select(vec![3u64, 4, 10]), i in 1u64..5, k in 0u64..100, m in unimodular()) {
        let max_b = match d { 3 => 3 * i + 5, 4 => 4 * i + 4, _ => 5 * i + 4 };
        let b = 2 + k % (max_b - 1);
        let p = construct_pip(d, i, b).unwrap().apply_map(&m).unwrap();
        let cert = is_pseudointegral(&p).unwrap();
        prop_assert!(cert.is_pip);
        prop_assert!(all_edges_reticular(&p));
    }
}
