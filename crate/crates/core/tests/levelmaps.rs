use proptest::prelude::*;
use tmf3_core::exact_arith::{int, pow3, rat, Valuation};
use tmf3_core::levelmaps::*;
use tmf3_core::polyring::{a1, a3, mono, MultiPoly};
use tmf3_core::ring::Ring;

fn g(p: MultiPoly) -> Gamma03Form {
    Gamma03Form::from_poly(p).unwrap()
}

fn c4() -> LevelOneForm {
    LevelOneForm::c4()
}
fn c6() -> LevelOneForm {
    LevelOneForm::c6()
}
fn dl() -> LevelOneForm {
    LevelOneForm::delta()
}

#[test]
fn published_images() {
    assert_eq!(fstar(&c4()), g(mono(1, 4, 0) - mono(24, 1, 1)));
    assert_eq!(fstar(&c6()), g(mono(-1, 6, 0) + mono(36, 3, 1) - mono(216, 0, 2)));
    assert_eq!(fstar(&dl()), g(mono(1, 3, 3) - mono(27, 0, 4)));
    assert_eq!(qstar(&c4()), g(mono(1, 4, 0) + mono(216, 1, 1)));
    assert_eq!(qstar(&c6()), g(mono(-1, 6, 0) + mono(540, 3, 1) + mono(5832, 0, 2)));
    assert_eq!(
        qstar(&dl()),
        g(mono(1, 9, 1) - mono(81, 6, 2) + mono(2187, 3, 3) - mono(19683, 0, 4))
    );
    assert_eq!(fstar(&LevelOneForm::one()), g(MultiPoly::one(tmf3_core::polyring::A1A3)));
    assert_eq!(hstar(&c4()), c4().scale(&int(81)));
    assert_eq!(hstar(&c6()), c6().scale(&int(729)));
    assert_eq!(hstar(&dl()), dl().scale(&pow3(12)));
}

#[test]
fn fundamental_relation_on_images() {
    for map in [fstar, qstar] {
        let lhs = map(&c4()).pow_u(3) - map(&c6()).pow_u(2);
        assert_eq!(lhs, map(&dl()).scale(&int(1728)));
    }
    assert_eq!(c4().pow(3) - c6().pow(2), dl().scale(&int(1728)));
}

#[test]
fn tstar_on_generators() {
    assert_eq!(tstar(&g(a1().pow(2))), g(a1().pow(2).scale(&int(-3))));
    assert_eq!(tstar(&g(a1() * a3())), g(a1().pow(4).scale(&rat(1, 3)) - mono(9, 1, 1)));
    assert_eq!(tstar(&tstar(&g(a1() * a3()))), g(mono(81, 1, 1)));
    assert_eq!(tstar(&g(MultiPoly::one(tmf3_core::polyring::A1A3))), g(MultiPoly::one(tmf3_core::polyring::A1A3)));
    // Steps of the derivation of t*.
    assert_eq!(tstar(&g(mono(10, 4, 0))), g(mono(90, 4, 0)));
    assert_eq!(tstar(&g(mono(240, 1, 1))), g(mono(80, 4, 0) - mono(2160, 1, 1)));
}

#[test]
fn tstar_relations_on_generators() {
    for m in [c4(), c6(), dl(), LevelOneForm::delta_pow(-1), c4() * c6() * LevelOneForm::delta_pow(-2)] {
        assert_eq!(tstar(&fstar(&m)), qstar(&m), "t* f* = q* on {m}");
        assert_eq!(tstar(&qstar(&m)), fstar(&hstar(&m)), "t* q* = f* h* on {m}");
    }
}

#[test]
fn invariance_is_checked() {
    assert!(Gamma03Form::from_poly(a1()).is_err());
    assert!(Gamma03Form::from_poly(a1() * a3()).is_ok());
}

#[test]
fn coboundaries() {
    let (u, v) = cochain_d0(&c4());
    assert_eq!(u, g(mono(240, 1, 1)));
    assert_eq!(v, c4().scale(&int(80)));
    assert!(cochain_d1(&u, &v).is_zero());
    let (u, v) = cochain_d0(&LevelOneForm::one());
    assert!(u.is_zero() && v.is_zero());
}

#[test]
fn d1_d0_vanishes_up_to_weight_48() {
    for a in 0..=12u32 {
        for e in 0..=1u8 {
            for d in -2..=4i64 {
                let b = (a, e, d);
                let w = basis_weight(&b);
                if w > 48 {
                    continue;
                }
                let m = LevelOneForm::monomial(b, int(1));
                let (u, v) = cochain_d0(&m);
                assert!(cochain_d1(&u, &v).is_zero(), "D1 D0 != 0 on {m}");
            }
        }
    }
}

#[test]
fn delta_examples() {
    assert_eq!(delta(&c4()), g(mono(240, 1, 1)));
    assert_eq!(delta(&c4().pow(2)), g(mono(480, 5, 1) + mono(46080, 2, 2)));
    // 2^3 (63 a1^3 a3 + 756 a3^2)
    assert_eq!(delta(&c6()), g(mono(504, 3, 1) + mono(6048, 0, 2)));
    let r = val2_delta_c4pow(2);
    assert_eq!(r.valuation, Valuation::Finite(5));
    assert_eq!(r.leading_term, "480*a1^5*a3");
    let m = delta_mod2_delta_pow(1);
    assert_eq!(m.min_a1_term, "a1^6*a3^2");
    assert!(m.pass);
}

#[test]
fn valuation_theorems() {
    for k in 1..=16 {
        let r = val2_delta_c4pow(k);
        assert!(r.pass, "{r:?}");
    }
    for k in 0..=12 {
        let r = val_delta_c4c6(k);
        assert!(r.pass, "{r:?}");
    }
    for n in 1..=12 {
        let r = delta_mod2_delta_pow(n);
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn binomial_lemma() {
    let r = lemma_binomial_check(2, 1);
    assert_eq!(r.quotient, "1*v");
    let r = lemma_binomial_check(2, 2);
    assert_eq!(r.exponent, 3);
    assert_eq!(r.quotient, "1*u*v + 2*v^2");
    assert!(r.pass);
    assert_eq!(lemma_binomial_check(3, 4).exponent, 5);
    for d in 2..=5 {
        for k in 1..=12 {
            assert!(lemma_binomial_check(d, k).pass, "d={d} k={k}");
        }
    }
}

fn basis_monomial() -> impl Strategy<Value = LevelOneForm> {
    (0u32..4, 0u8..2, -1i64..2, -3i64..4).prop_map(|(a, e, d, c)| LevelOneForm::monomial((a, e, d), int(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn maps_are_ring_homomorphisms(x in basis_monomial(), y in basis_monomial()) {
        prop_assert_eq!(fstar(&(x.clone() * y.clone())), fstar(&x) * fstar(&y));
        prop_assert_eq!(qstar(&(x.clone() + y.clone())), qstar(&x) + qstar(&y));
        prop_assert_eq!(hstar(&(x.clone() * y.clone())), hstar(&x) * hstar(&y));
        let fx = fstar(&x);
        let fy = fstar(&y);
        prop_assert_eq!(tstar(&(fx.clone() * fy.clone())), tstar(&fx) * tstar(&fy));
    }

    #[test]
    fn tstar_squared_scales_by_weight(x in basis_monomial()) {
        let fx = fstar(&x);
        if let Some(w) = fx.weight_of() {
            prop_assert_eq!(tstar(&tstar(&fx)), fx.scale(&pow3(w)));
        }
        prop_assert_eq!(fstar(&x).weight_of(), x.weight_of());
    }
}
