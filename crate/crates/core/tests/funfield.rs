use proptest::prelude::*;
use tmf3_core::exact_arith::{int, rat, Rational};
use tmf3_core::funfield::{
    closed_forms, curve_through, expected_cprime, spot_check, triple_pullback_check, velu3, verify_isogeny, FFElem,
};
use tmf3_core::polyring::{MultiPoly, A1A3X};
use tmf3_core::report::all_pass;
use tmf3_core::ring::Ring;
use tmf3_core::weierstrass::{WCurve, WPoint};

#[test]
fn isogeny_identities_hold_symbolically() {
    let v = velu3().unwrap();
    assert_eq!(v.cprime, expected_cprime());
    let checks = verify_isogeny(&v);
    for c in &checks {
        assert!(c.pass, "{}: {}", c.name, c.detail);
    }
    assert!(checks.len() >= 9);
}

#[test]
fn sigma_cubed_is_identity_on_generators() {
    let x = FFElem::x();
    let y = FFElem::y();
    assert_eq!(x.sigma().sigma().sigma(), x);
    assert_eq!(y.sigma().sigma().sigma(), y);
    let (cx, cy) = closed_forms();
    assert_eq!(cx.sigma(), cx);
    assert_eq!(cy.sigma(), cy);
}

#[test]
fn sigma_moves_points_by_p0() {
    // Near a point Q of a specialized curve, sigma*(f)(Q) = f(Q + P0).
    let (a1, x0, y0) = (int(2), int(3), int(1));
    let a3 = curve_through(&a1, &x0, &y0).unwrap();
    let c = WCurve::normal_form(a1.clone(), a3.clone());
    let q = WPoint::Affine(x0.clone(), y0.clone());
    let moved = c.add(&q, &WPoint::Affine(int(0), int(0))).unwrap();
    let WPoint::Affine(mx, my) = moved else { panic!("unexpected infinity") };
    assert_eq!(FFElem::x().sigma().eval(&a1, &a3, &x0, &y0).unwrap(), mx);
    assert_eq!(FFElem::y().sigma().eval(&a1, &a3, &x0, &y0).unwrap(), my);
    // sigma(P0) = 2 P0 = (0, -a3).
    assert_eq!(c.smul(2, &WPoint::Affine(int(0), int(0))).unwrap(), WPoint::Affine(int(0), -a3));
}

#[test]
fn zero_has_no_inverse() {
    assert!(FFElem::zero().try_inv().is_none());
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-7i64..8, 1i64..4).prop_map(|(n, d)| rat(n, d))
}

fn element() -> impl Strategy<Value = FFElem> {
    let poly = proptest::collection::vec((0u32..2, 0u32..2, 0u32..3, -3i64..4), 0..3)
        .prop_map(|ts| MultiPoly::from_terms(A1A3X, ts.into_iter().map(|(i, j, k, c)| (vec![i, j, k], int(c)))));
    (poly.clone(), poly).prop_map(|(u, v)| FFElem::new(u, v, MultiPoly::one(A1A3X)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn field_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.try_inv().unwrap(), FFElem::constant(int(1)));
        }
    }

    #[test]
    fn sigma_is_multiplicative(a in element(), b in element()) {
        prop_assert_eq!((a.clone() * b.clone()).sigma(), a.sigma() * b.sigma());
        prop_assert_eq!((a.clone() + b.clone()).sigma(), a.sigma() + b.sigma());
    }

    #[test]
    fn numeric_spot_checks(a1 in small_rat(), x0 in small_rat(), y0 in small_rat()) {
        let v = velu3().unwrap();
        if let Some(checks) = spot_check(&v, &a1, &x0, &y0) {
            prop_assert!(all_pass(&checks), "{:?}", checks);
        }
    }

    #[test]
    fn multiplication_by_three_scales_differential(a1 in small_rat(), x0 in small_rat(), y0 in small_rat()) {
        if let Some(c) = triple_pullback_check(&a1, &x0, &y0) {
            prop_assert!(c.pass, "{}", c.detail);
        }
    }
}

#[test]
fn ring_helpers_on_elements() {
    let x = FFElem::x();
    assert_eq!(x.pow_u(3), x.clone() * x.clone() * x);
}
