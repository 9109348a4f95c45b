use tmf3_core::exact_arith::{int, rat, Rational};
use tmf3_core::levelmaps::{delta, LevelOneForm};
use tmf3_core::polyring::{a1, a3, MultiPoly};
use tmf3_core::qexp::*;

fn ints(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

#[test]
fn c4_and_delta_coefficients() {
    assert_eq!(series_c4(3).coeffs(), &ints(&[1, 240, 2160, 6720])[..]);
    assert_eq!(series_c6(2).coeffs(), &ints(&[1, -504, -16632])[..]);
    assert_eq!(series_delta(3).coeffs(), &ints(&[0, 1, -24, 252])[..]);
}

#[test]
fn delta_is_c4_cubed_minus_c6_squared_over_1728() {
    let n = 50;
    let lhs = &series_c4(n).pow(3) - &series_c6(n).pow(2);
    let rhs = series_delta(n).scale(&int(1728));
    assert_eq!(lhs, rhs);
}

#[test]
fn eisenstein_low_weights() {
    assert_eq!(eisenstein_g(4, 2).unwrap().coeffs(), &[rat(1, 240), int(1), int(9)][..]);
    assert_eq!(eisenstein_g(6, 1).unwrap().coeffs(), &[rat(-1, 504), int(1)][..]);
    assert!(eisenstein_g(5, 3).is_err());
}

#[test]
fn eisenstein_decompositions() {
    assert_eq!(eisenstein_in_c4c6(4).unwrap(), LevelOneForm::c4().scale(&rat(1, 240)));
    assert_eq!(eisenstein_in_c4c6(6).unwrap(), LevelOneForm::c6().scale(&rat(-1, 504)));
    assert_eq!(eisenstein_in_c4c6(8).unwrap(), LevelOneForm::c4().pow(2).scale(&rat(1, 480)));
}

#[test]
fn g6_plus_c6_vanishes() {
    let g6 = eisenstein_in_c4c6(6).unwrap();
    assert!((g6.scale(&int(504)) + LevelOneForm::c6()).is_zero());
}

#[test]
fn decompositions_reproduce_the_series_through_weight_40() {
    for two_n in (4..=40).step_by(2) {
        let g = eisenstein_in_c4c6(two_n).unwrap();
        assert_eq!(g.weight_of(), Some(two_n), "weight {two_n}");
        let n = holomorphic_basis(two_n).len() + 10;
        let ser = series_of(&g, n).unwrap();
        assert_eq!(ser, eisenstein_g(two_n, n).unwrap(), "weight {two_n}");
    }
}

#[test]
fn weight_two_has_no_holomorphic_model() {
    assert!(eisenstein_in_c4c6(2).is_err());
}

#[test]
fn e_alpha_low_cases() {
    let (x, y) = e_alpha(4).unwrap();
    assert_eq!(x.as_poly(), Some(&(a1() * a3())));
    assert_eq!(y, LevelOneForm::c4().scale(&rat(1, 3)));

    let (x, y) = e_alpha(6).unwrap();
    let want = (a1().pow(3) * a3() + a3().pow(2).scale(&int(12))).scale(&int(-2));
    assert_eq!(x.as_poly(), Some(&want));
    let want_y = LevelOneForm::c6().scale(&(rat(-2, 504) * int(728)));
    assert_eq!(y, want_y);

    let (x, y) = e_alpha(8).unwrap();
    let g8 = LevelOneForm::c4().pow(2).scale(&rat(1, 480));
    assert_eq!(x, delta(&g8));
    assert_eq!(y, g8.scale(&int(6560)));
}

#[test]
fn e_alpha_is_a_cocycle_pair() {
    // first component lies in the polynomial ring and has the expected weight
    for n in 2..=10 {
        let (x, y) = e_alpha(2 * n).unwrap();
        assert_eq!(x.weight_of(), Some(2 * n));
        assert_eq!(y.weight_of(), Some(2 * n));
        let p: &MultiPoly = x.as_poly().expect("polynomial");
        assert!(p.num_terms() > 0);
    }
}

#[test]
fn display_marks_truncation() {
    assert_eq!(series_delta(2).to_string(), "0 + 1*q + -24*q^2 + O(q^3)");
    assert!(e_alpha(2).is_err());
    assert!(e_alpha(7).is_err());
}
