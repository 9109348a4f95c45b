use num_bigint::BigInt;
use proptest::prelude::*;
use tmf3_cli::eval::Evaluator;
use tmf3_cli::expr::{parse, parse_list, BinOp, Expr, Func, Ident};
use tmf3_cli::run_from;

fn tmf3(args: &[&str]) -> tmf3_cli::Outcome {
    run_from(std::iter::once("tmf3").chain(args.iter().copied()))
}

fn right_hand_sides(text: &str) -> Vec<String> {
    text.lines()
        .filter(|l| !l.starts_with("ok ") && !l.starts_with("FAIL"))
        .filter_map(|l| l.split_once(" = ").map(|(_, r)| r.to_string()))
        .collect()
}

#[test]
fn documented_examples() {
    let out = tmf3(&["maps", "--apply", "tstar", "--expr", "a1*a3"]);
    assert_eq!((out.stdout.as_str(), out.code), ("1/3*a1^4 + -9*a1*a3\n", 0));
    let out = tmf3(&["delta", "--c4-pow", "2", "--val2"]);
    assert_eq!((out.stdout.as_str(), out.code), ("5\n", 0));
    let fc4 = Evaluator::default().eval(&parse("fstar(c4)").unwrap()).unwrap();
    let lit = Evaluator::default().eval(&parse("a1^4 - 24*a1*a3").unwrap()).unwrap();
    assert_eq!(fc4, lit);
    let d = parse("qstar(c4) - fstar(c4)").unwrap();
    assert!(matches!(d, Expr::Bin(BinOp::Sub, ..)));
    assert_eq!(tmf3(&["maps", "--expr", "qstar(c4) - fstar(c4)"]).stdout, "240*a1*a3\n");
}

#[test]
fn exit_codes() {
    let out = tmf3(&["maps", "--expr", "c4^^2"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 1, column 4"), "{}", out.stderr);
    assert_eq!(tmf3(&["maps", "--frobnicate"]).code, 2);
    assert_eq!(tmf3(&["maps", "--apply", "tstar", "--expr", "a1"]).code, 1);
    assert_eq!(tmf3(&["normalize", "--curve", "0,0,0,-1,0", "--point", "0,0"]).code, 1);
    assert_eq!(tmf3(&["qexp", "--expr", "1/Delta"]).code, 1);
    assert_eq!(tmf3(&["verify"]).code, 2);
    assert_eq!(tmf3(&["--help"]).code, 0);
}

#[test]
fn json_schema() {
    let out = tmf3(&["--json", "delta", "--family", "c4", "--range", "1..8"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["command"], "delta");
    assert_eq!(v["inputs"]["range"], "1..8");
    assert_eq!(v["result"].as_array().unwrap().len(), 8);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true && c["name"].is_string() && c["detail"].is_string()));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["isogeny"][..],
        &["--json", "invariants", "--curve", "1,2,3,4,5"],
        &["qexp", "--expr", "Delta", "--precision", "12"],
        &["chart", "--window", "4,30,3", "--page", "3"],
    ] {
        assert_eq!(tmf3(args), tmf3(args), "{args:?}");
    }
}

#[test]
fn emitted_expressions_reparse() {
    let mut texts = Vec::new();
    texts.extend(right_hand_sides(&tmf3(&["invariants"]).stdout));
    texts.extend(right_hand_sides(&tmf3(&["isogeny"]).stdout).into_iter().skip(1));
    texts.extend(right_hand_sides(&tmf3(&["maps"]).stdout));
    texts.extend(right_hand_sides(&tmf3(&["qexp", "--eisenstein", "16"]).stdout));
    texts.extend(right_hand_sides(&tmf3(&["qexp", "--e-alpha", "8"]).stdout));
    for args in [
        &["maps", "--expr", "tstar(a3^2/fstar(Delta))"][..],
        &["maps", "--expr", "hstar(c4^2*c6/Delta^3)"],
        &["qexp", "--expr", "c6*Delta", "--precision", "8"],
        &["delta", "--delta-pow", "3"],
    ] {
        texts.push(tmf3(args).stdout.trim_end().to_string());
    }
    assert!(texts.len() > 20);
    for t in &texts {
        let e = parse(t).unwrap_or_else(|err| panic!("{t}: {err}"));
        assert_eq!(parse(&e.to_string()).unwrap(), e);
    }
    // the isogenous curve reads back as a coefficient list
    let cp = right_hand_sides(&tmf3(&["isogeny"]).stdout)[0].clone();
    assert_eq!(parse_list(&cp).unwrap().len(), 5);
    assert_eq!(tmf3(&["invariants", "--curve", &cp]).code, 0);
}

#[test]
fn values_survive_printing() {
    for src in ["tstar(a1^2*a3^2) / fstar(Delta)^2", "delta(c4^3*c6)", "c4^2 + 1/5*c6*Delta^-1", "(1 + q)^-3 + O(q^7)", "7/3"] {
        let ev = Evaluator { precision: 10 };
        let v = ev.eval(&parse(src).unwrap()).unwrap();
        let again = ev.eval(&parse(&v.to_string()).unwrap()).unwrap();
        assert_eq!(v, again, "{src}");
    }
}

#[test]
fn series_arithmetic() {
    let ev = Evaluator { precision: 6 };
    let v = ev.eval(&parse("(c4^3 - c6^2)/1728 - Delta").unwrap()).unwrap();
    assert_eq!(v.to_string(), "0");
    let v = ev.eval(&parse("1/(1 - q)").unwrap()).unwrap();
    assert_eq!(v.to_string(), "1 + 1*q + 1*q^2 + 1*q^3 + 1*q^4 + 1*q^5 + 1*q^6 + O(q^7)");
    assert!(ev.eval(&parse("a1 + q").unwrap()).is_err());
    assert!(ev.eval(&parse("c4 + a1").unwrap()).is_err());
    assert!(ev.eval(&parse("1/c4").unwrap()).is_err());
}

fn ident() -> impl Strategy<Value = Ident> {
    prop_oneof![
        Just(Ident::A1),
        Just(Ident::A3),
        Just(Ident::C4),
        Just(Ident::C6),
        Just(Ident::Delta),
        Just(Ident::Q),
        Just(Ident::X),
        Just(Ident::Y)
    ]
}

fn func() -> impl Strategy<Value = Func> {
    prop_oneof![Just(Func::Fstar), Just(Func::Qstar), Just(Func::Hstar), Just(Func::Tstar), Just(Func::Delta), Just(Func::BigO)]
}

fn binop() -> impl Strategy<Value = BinOp> {
    prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div)]
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(0u64..1000).prop_map(|n| Expr::Int(BigInt::from(n))), ident().prop_map(Expr::Var)];
    leaf.prop_recursive(5, 48, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (binop(), inner.clone(), inner.clone()).prop_map(|(op, l, r)| Expr::Bin(op, Box::new(l), Box::new(r))),
            (inner.clone(), inner.clone()).prop_map(|(b, e)| Expr::Pow(Box::new(b), Box::new(e))),
            (func(), inner).prop_map(|(f, e)| Expr::Call(f, Box::new(e))),
        ]
    })
}

fn small_poly_expr() -> impl Strategy<Value = String> {
    proptest::collection::vec((-20i64..20, 1i64..4, 0u32..4, 0u32..3), 1..5).prop_map(|ts| {
        ts.iter().map(|(c, d, i, j)| format!("({c}/{d})*a1^{i}*a3^{j}")).collect::<Vec<_>>().join(" + ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn printed_polynomials_evaluate_back(src in small_poly_expr()) {
        let ev = Evaluator::default();
        let v = ev.eval(&parse(&src).unwrap()).unwrap();
        let again = ev.eval(&parse(&v.to_string()).unwrap()).unwrap();
        prop_assert_eq!(v, again);
    }
}
