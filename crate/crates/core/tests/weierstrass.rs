use num_traits::Zero;
use proptest::prelude::*;
use tmf3_core::exact_arith::{int, rat, Rational};
use tmf3_core::ring::Ring;
use tmf3_core::polyring::{a1, a3, c, disc_cofactor, mono, MultiPoly, RatFunc, A1A3};
use tmf3_core::weierstrass::{qcurve, qpoint, CurveError, FlexReason, WCurve, WPoint, WTransform};

fn universal() -> WCurve<MultiPoly> {
    WCurve::normal_form(a1(), a3())
}

#[test]
fn discriminant_of_normal_form() {
    let d = universal().discriminant();
    assert_eq!(d, mono(1, 3, 3) - mono(27, 0, 4));
    assert_eq!(d, a3().pow(3) * disc_cofactor());
}

#[test]
fn discriminant_of_isogenous_curve() {
    let cp = WCurve::new(a1(), c(0), c(3) * a3(), c(-6) * a1() * a3(), -(c(9) * a3().pow(2) + a1().pow(3) * a3()));
    assert_eq!(cp.discriminant(), a3() * disc_cofactor().pow(3));
}

#[test]
fn fundamental_relation_symbolic() {
    let names = ["a1", "a2", "a3", "a4", "a6"];
    let v = |n: &str| MultiPoly::var(tmf3_core::polyring::WEIERSTRASS, n);
    let cu = WCurve::new(v(names[0]), v(names[1]), v(names[2]), v(names[3]), v(names[4]));
    let inv = cu.invariants();
    let lhs = inv.c4.pow(3) - inv.c6.pow(2);
    assert_eq!(lhs, inv.disc.scale(&int(1728)));
    assert_eq!(inv.c4.weight_of(), Some(4));
    assert_eq!(inv.c6.weight_of(), Some(6));
    assert_eq!(inv.disc.weight_of(), Some(12));
}

#[test]
fn scaling_transform_on_normal_form() {
    let l = RatFunc::var(A1A3, "a1") + RatFunc::constant(A1A3, int(2));
    let cu = universal().map_coeffs(|p| RatFunc::from_poly(p.clone()));
    let z = l.zero_like();
    let t = WTransform::new(l.clone(), z.clone(), z.clone(), z.clone());
    let out = cu.transform(&t).unwrap();
    assert_eq!(out.a1, l.clone() * cu.a1.clone());
    assert_eq!(out.a3, l.clone() * l.clone() * l.clone() * cu.a3.clone());
    assert!(out.a2.is_zero() && out.a4.is_zero() && out.a6.is_zero());
}

#[test]
fn identity_transform() {
    let cu = qcurve([1, -1, 1, -5, 7]);
    let id = WTransform::identity_like(&int(0));
    assert_eq!(cu.transform(&id).unwrap(), cu);
    let zero = WTransform::new(int(0), int(1), int(0), int(0));
    assert_eq!(cu.transform(&zero), Err(CurveError::ZeroLambda));
}

#[test]
fn negation_and_order_three_on_normal_form() {
    let cu = qcurve([1, 0, 1, 0, 0]);
    let p = qpoint(0, 0);
    assert_eq!(cu.neg(&p).unwrap(), qpoint(0, -1));
    assert_eq!(cu.add(&p, &WPoint::Infinity).unwrap(), p);
    assert_eq!(cu.smul(3, &p).unwrap(), WPoint::Infinity);
    assert_eq!(cu.smul(2, &p).unwrap(), qpoint(0, -1));
    assert!(cu.is_flex(&p).unwrap());
}

#[test]
fn symbolic_negation() {
    let cu = universal().map_coeffs(|p| RatFunc::from_poly(p.clone()));
    let zero = RatFunc::constant(A1A3, int(0));
    let p = WPoint::Affine(zero.clone(), zero.clone());
    assert_eq!(cu.neg(&p).unwrap(), WPoint::Affine(zero, -RatFunc::var(A1A3, "a3")));
    assert!(cu.is_flex(&p).unwrap());
    assert_eq!(cu.smul(3, &p).unwrap(), WPoint::Infinity);
}

#[test]
fn flex_negatives() {
    let cu = qcurve([0, 0, 0, -1, 0]);
    let r = cu.flex_test(&qpoint(0, 0)).unwrap();
    assert!(!r.is_flex);
    assert_eq!(r.reason, FlexReason::VerticalTangent);
    // Infinite-order points.
    let e1 = qcurve([0, 0, 1, -1, 0]);
    assert!(!e1.is_flex(&qpoint(0, 0)).unwrap());
    let e2 = qcurve([0, 0, 0, 0, -2]);
    assert!(!e2.is_flex(&qpoint(3, 5)).unwrap());
    let e3 = qcurve([0, 0, 0, 0, 17]);
    assert!(!e3.is_flex(&qpoint(-2, 3)).unwrap());
    assert_eq!(e3.order_up_to(&qpoint(-2, 3), 12).unwrap(), None);
    assert_eq!(cu.is_flex(&WPoint::Infinity), Err(CurveError::PointAtInfinity));
    assert!(matches!(cu.is_flex(&qpoint(1, 1)), Err(CurveError::NotOnCurve(_))));
}

#[test]
fn normalize_rejects_wrong_order() {
    let cu = qcurve([0, 0, 0, -1, 0]);
    assert!(matches!(cu.gamma1_normalize(&qpoint(0, 0)), Err(CurveError::WrongOrder(o)) if o == "2"));
    assert!(matches!(cu.gamma1_normalize(&WPoint::Infinity), Err(CurveError::WrongOrder(_))));
    let e3 = qcurve([0, 0, 0, 0, 17]);
    assert!(matches!(e3.gamma1_normalize(&qpoint(-2, 3)), Err(CurveError::WrongOrder(_))));
}

#[test]
fn normalize_fixed_point() {
    let cu = qcurve([1, 0, 1, 0, 0]);
    let n = cu.gamma1_normalize(&qpoint(0, 0)).unwrap();
    assert_eq!((n.a1, n.a3), (int(1), int(1)));
    assert!(n.transform.is_identity());
}

#[test]
fn normalize_symbolic_fixed_point() {
    let cu = universal().map_coeffs(|p| RatFunc::from_poly(p.clone()));
    let zero = RatFunc::constant(A1A3, int(0));
    let n = cu.gamma1_normalize(&WPoint::Affine(zero.clone(), zero)).unwrap();
    assert_eq!(n.a1, RatFunc::var(A1A3, "a1"));
    assert!(n.transform.is_identity());
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..10, 1i64..5).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |q| !q.is_zero())
}

fn transform() -> impl Strategy<Value = WTransform<Rational>> {
    (nonzero_rat(), small_rat(), small_rat(), small_rat()).prop_map(|(l, r, s, t)| WTransform::new(l, r, s, t))
}

fn curve() -> impl Strategy<Value = WCurve<Rational>> {
    (small_rat(), small_rat(), small_rat(), small_rat(), small_rat())
        .prop_map(|(a, b, c, d, e)| WCurve::new(a, b, c, d, e))
        .prop_filter("smooth", |c| c.is_smooth())
}

/// A curve with a rational point at (0, 0): a6 = 0.
fn pointed_curve() -> impl Strategy<Value = WCurve<Rational>> {
    (small_rat(), small_rat(), small_rat(), small_rat())
        .prop_map(|(a, b, c, d)| WCurve::new(a, b, c, d, int(0)))
        .prop_filter("smooth", |c| c.is_smooth())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn invariants_scale(cu in curve(), t in transform()) {
        let a = cu.invariants();
        let b = cu.transform(&t).unwrap().invariants();
        let l = t.lambda.clone();
        prop_assert_eq!(&a.c4.clone() * num_traits::pow(l.clone(), 4), b.c4.clone());
        prop_assert_eq!(&a.c6 * num_traits::pow(l.clone(), 6), b.c6.clone());
        prop_assert_eq!(&a.disc * num_traits::pow(l, 12), b.disc.clone());
        prop_assert_eq!(cu.j_invariant().unwrap(), cu.transform(&t).unwrap().j_invariant().unwrap());
        prop_assert_eq!(a.c4.pow(3) - a.c6.pow(2), a.disc * int(1728));
    }

    #[test]
    fn right_action_and_inverse(cu in curve(), t1 in transform(), t2 in transform()) {
        let step = cu.transform(&t1).unwrap().transform(&t2).unwrap();
        prop_assert_eq!(step, cu.transform(&t1.compose(&t2).unwrap()).unwrap());
        let back = cu.transform(&t1).unwrap().transform(&t1.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, cu.clone());
    }

    #[test]
    fn transforms_carry_points(cu in pointed_curve(), t in transform()) {
        let p = qpoint(0, 0);
        let img = t.map_point(&p);
        prop_assert!(cu.transform(&t).unwrap().contains(&img));
    }

    #[test]
    fn group_law_axioms(cu in pointed_curve(), t in transform()) {
        // Points 0, P, 2P, 3P and their images under a transform.
        let p = qpoint(0, 0);
        let q = cu.smul(2, &p).unwrap();
        let r = cu.smul(5, &p).unwrap();
        prop_assert_eq!(cu.add(&p, &q).unwrap(), cu.add(&q, &p).unwrap());
        let lhs = cu.add(&cu.add(&p, &q).unwrap(), &r).unwrap();
        let rhs = cu.add(&p, &cu.add(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(cu.neg(&cu.neg(&p).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(cu.add(&p, &cu.neg(&p).unwrap()).unwrap(), WPoint::Infinity);
        let mut acc = WPoint::Infinity;
        for _ in 0..4 {
            acc = cu.add(&acc, &p).unwrap();
        }
        prop_assert_eq!(acc, cu.smul(4, &p).unwrap());
        let c2 = cu.transform(&t).unwrap();
        prop_assert_eq!(t.map_point(&cu.add(&p, &q).unwrap()), c2.add(&t.map_point(&p), &t.map_point(&q)).unwrap());
    }

    #[test]
    fn flex_iff_order_three(cu in pointed_curve()) {
        let p = qpoint(0, 0);
        let two_torsion = cu.smul(2, &p).unwrap().is_infinity();
        let order3 = cu.smul(3, &p).unwrap().is_infinity();
        prop_assert_eq!(cu.is_flex(&p).unwrap(), order3 && !two_torsion);
    }

    #[test]
    fn flex_points_are_order_three(a1v in nonzero_rat(), a3v in nonzero_rat(), t in transform()) {
        let nf = WCurve::normal_form(a1v, a3v);
        prop_assume!(nf.is_smooth());
        let cu = nf.transform(&t.inverse().unwrap()).unwrap();
        let p = t.inverse().unwrap().map_point(&qpoint(0, 0));
        prop_assert!(cu.is_flex(&p).unwrap());
        prop_assert!(cu.smul(3, &p).unwrap().is_infinity());
    }

    #[test]
    fn normalize_round_trip(a1v in small_rat(), a3v in nonzero_rat(), t in transform()) {
        let nf = WCurve::normal_form(a1v.clone(), a3v.clone());
        prop_assume!(nf.is_smooth());
        let tinv = t.inverse().unwrap();
        let cu = nf.transform(&tinv).unwrap();
        let p = tinv.map_point(&qpoint(0, 0));
        let n = cu.gamma1_normalize(&p).unwrap();
        let l = t.lambda.clone().recip();
        prop_assert_eq!(n.a1.clone(), &a1v * &l);
        prop_assert_eq!(n.a3.clone(), &a3v * num_traits::pow(l, 3));
        let out = cu.transform(&n.transform).unwrap();
        prop_assert_eq!(out, WCurve::normal_form(n.a1.clone(), n.a3.clone()));
        prop_assert_eq!(n.transform.map_point(&p), qpoint(0, 0));
        let disc = num_traits::pow(n.a3.clone(), 3) * (num_traits::pow(n.a1.clone(), 3) - n.a3 * int(27));
        prop_assert!(!disc.is_zero());
    }

    #[test]
    fn normalize_recovers_transform_when_lambda_is_one(a1v in small_rat(), a3v in nonzero_rat(), r in small_rat(), s in small_rat(), tt in small_rat()) {
        let nf = WCurve::normal_form(a1v.clone(), a3v.clone());
        prop_assume!(nf.is_smooth());
        let t = WTransform::new(int(1), r, s, tt);
        let tinv = t.inverse().unwrap();
        let cu = nf.transform(&tinv).unwrap();
        let n = cu.gamma1_normalize(&tinv.map_point(&qpoint(0, 0))).unwrap();
        prop_assert_eq!((n.a1, n.a3), (a1v, a3v));
        prop_assert_eq!(n.transform, t);
    }
}
