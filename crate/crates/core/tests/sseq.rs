use tmf3_core::sseq::chart::{apply_d3, d3_squared_failures, d7_low};
use tmf3_core::sseq::local::{d7_on_model, h20_fourth_check, model_check, stabilize};
use tmf3_core::sseq::pres::{h1, h2, h20, PresMonomial};
use tmf3_core::sseq::table::{oracle, periodic_48, pi_row, pi_table};
use tmf3_core::sseq::*;

fn x_delta(a: u32, k: i64) -> F2Elem {
    F2Elem::monomial(PresMonomial::new(0, 0, 0, a, k))
}

#[test]
fn e2_examples() {
    let e2 = build_e2(&Window::default());
    assert!(e2.cells[&(1, 18)].basis.contains(&F2Elem::gen_x()));
    for t in (1..100).step_by(2) {
        assert_eq!(e2.dim(0, t), 0, "t={t}");
    }
    assert_eq!(h1().bidegree(), Some((1, 2)));
    assert_eq!(h2().bidegree(), Some((3, 6)));
    assert_eq!(h20().bidegree(), Some((1, 6)));
}

#[test]
fn d3_squares_to_zero_on_default_window() {
    let e2 = build_e2(&Window::default());
    assert!(d3_squared_failures(&e2).is_empty());
    assert!(apply_d3(&e2).is_ok());
}

#[test]
fn leibniz_agrees_with_closed_form() {
    assert!(leibniz_matches_closed_form(&Window::new(6, 60, 4).unwrap()).is_empty());
}

#[test]
fn displayed_d3_values() {
    for v in tmf3_core::sseq::displayed_d3_values() {
        assert!(v.pass, "{v:?}");
    }
    assert!(d3(&F2Elem::gen_b()).is_zero());
    assert!(d3(&F2Elem::delta_pow(1)).is_zero());
    assert!(d3(&F2Elem::gen_x()).is_zero());
    for c in square_rule_checks(5) {
        assert!(c.pass, "{c:?}");
    }
}

#[test]
fn h20_fourth_power_agrees_with_x4_delta_inverse_squared() {
    let c = h20_fourth_check(8);
    assert!(c.distinct_at_e2);
    assert!(c.equal_at_e7_from.is_some(), "{c:?}");
    assert_eq!(c.delta_minus_one_bidegree, (4, 48));
}

#[test]
fn localized_lines_match_the_model() {
    for s in 3..=12 {
        for n in -24..=100 {
            let m = model_check(s, n + s, 8);
            assert!(m.pass, "{m:?}");
        }
    }
}

#[test]
fn delta_acts_injectively_and_periodically() {
    for s in 3..=6 {
        for t in (18 * s..18 * s + 24).step_by(2) {
            let a = stabilize(s, t, 8);
            let b = stabilize(s, t + 24, 8);
            assert!(a.stable.is_none() || a.injective_after_shift(), "({s},{t})");
            assert_eq!(a.stable.map(|x| x.0), b.stable.map(|x| x.0), "({s},{t})");
        }
    }
}

#[test]
fn d7_on_generators() {
    assert_eq!(d7_on_model(0), None);
    assert_eq!(d7_on_model(1), Some(-4));
    assert_eq!(d7_on_model(2), None);
    assert!(d7_low(&F2Elem::gen_x()).is_zero());
    assert_eq!(d7_low(&F2Elem::delta_pow(1)), x_delta(7, -4));
    assert!(d7_low(&F2Elem::delta_pow(2)).is_zero());
}

#[test]
fn e_infinity_over_the_default_window() {
    let w = Window::default();
    let [e3, e4, e7, einf] = run_pipeline(&w, 8).unwrap();
    assert_eq!([e3.page, e4.page, e7.page, einf.page], [3, 4, 7, 8]);
    // x^7 = 0 and nothing survives above line 6
    for s in 7..=w.s_max {
        for t in 0..=w.stem_bound + s {
            assert_eq!(einf.dim(s, t), 0, "({s},{t})");
        }
    }
    assert!(einf.dim(1, 18) >= 1);
    assert_eq!(einf.dim(4, 24), 1);
    let json = einf.to_json();
    assert_eq!(json["page"], 8);
    assert!(json["cells"].as_array().is_some_and(|c| !c.is_empty()));
    assert!(einf.ascii(0..=40).contains("stems 0..40"));
}

#[test]
fn homotopy_table_matches_through_stem_96() {
    let w = Window::default();
    for row in pi_table(&w, 0..=96) {
        assert!(row.pass(), "stem {}: {:?}", row.stem, row.mismatches);
    }
    assert_eq!(oracle(17, 12).model_low, [1, 0]);
    assert_eq!(pi_row(&w, 20).torsion.get(3), Some(&1));
    for n in 0..=48 {
        assert!(periodic_48(&w, n), "stem {n}");
    }
}
