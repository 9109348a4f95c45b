use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value as Json};
use tmf3_core::exact_arith::{fmt_rational, Rational};
use tmf3_core::funfield::{velu3, verify_isogeny, FFElem};
use tmf3_core::levelmaps::{
    delta, delta_mod2_delta_pow, lemma_binomial_check, val2_delta_c4pow, val_delta_c4c6, LevelOneForm,
};
use tmf3_core::polyring::MultiPoly;
use tmf3_core::qexp::{e_alpha, eisenstein_g, eisenstein_in_c4c6, holomorphic_basis, series_of};
use tmf3_core::report::Check;
use tmf3_core::sseq::table::pi_table;
use tmf3_core::sseq::{build_e2, run_pipeline, ChartPage, Window};
use tmf3_core::verify;
use tmf3_core::weierstrass::{WCurve, WPoint};

use crate::eval::{Evaluator, Value};
use crate::expr::{parse, parse_list};
use crate::{CliError, Output};

#[derive(Debug, Parser)]
#[command(name = "tmf3", version, about = "Exact computations for topological modular forms of level three")]
pub struct Cli {
    /// Emit {command, inputs, result, checks} as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// `A..B`, inclusive at both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub start: i64,
    pub end: i64,
}

impl FromStr for Range {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got '{s}'"))?;
        let start = a.trim().parse::<i64>().map_err(|e| format!("bad range start '{a}': {e}"))?;
        let end = b.trim().trim_start_matches('=').parse::<i64>().map_err(|e| format!("bad range end '{b}': {e}"))?;
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(Range { start, end })
    }
}

/// `S,W,D`: filtrations up to S, stems up to W, Delta exponents in [-D, D].
#[derive(Debug, Clone, Copy)]
pub struct WindowArg(pub Window);

impl FromStr for WindowArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<i64> =
            s.split(',').map(|p| p.trim().parse::<i64>()).collect::<Result<_, _>>().map_err(|e| format!("bad window '{s}': {e}"))?;
        let [sm, w, d] = parts[..] else {
            return Err(format!("expected S,W,D, got '{s}'"));
        };
        Window::new(sm, w, d).map(WindowArg).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapName {
    Fstar,
    Qstar,
    Hstar,
    Tstar,
    Delta,
}

impl MapName {
    fn name(self) -> &'static str {
        match self {
            MapName::Fstar => "fstar",
            MapName::Qstar => "qstar",
            MapName::Hstar => "hstar",
            MapName::Tstar => "tstar",
            MapName::Delta => "delta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// delta(c4^k)
    C4,
    /// delta(c4^k c6)
    C4c6,
    /// delta(Delta^N) mod 2
    Delta,
    /// the binomial lemma, for 2 <= d <= 6
    Binomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Page {
    #[value(name = "2")]
    E2,
    #[value(name = "3")]
    E3,
    #[value(name = "4")]
    E4,
    #[value(name = "7")]
    E7,
    #[value(name = "inf", alias = "8")]
    Infinity,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// b-invariants, c4, c6 and the discriminant of a Weierstrass curve.
    Invariants {
        /// Coefficients a1,a2,a3,a4,a6 as expressions in a1, a3.
        #[arg(long, default_value = "a1,0,a3,0,0")]
        curve: String,
    },
    /// Moves a point of order three to (0,0), giving y^2 + A1 xy + A3 y = x^3.
    Normalize {
        /// Rational coefficients a1,a2,a3,a4,a6.
        #[arg(long)]
        curve: String,
        /// Rational coordinates X,Y of a point of exact order three.
        #[arg(long)]
        point: String,
    },
    /// The degree-three isogeny with kernel {O, (0,0), (0,-a3)}.
    Isogeny,
    /// Evaluates an expression, optionally applying one of the level maps.
    Maps {
        #[arg(long, value_enum)]
        apply: Option<MapName>,
        #[arg(long)]
        expr: Option<String>,
    },
    /// The coboundary delta = q* - f* and its 2-adic behaviour.
    Delta {
        #[arg(long)]
        c4_pow: Option<u32>,
        /// Multiply by c6, i.e. delta(c4^k c6).
        #[arg(long)]
        c6: bool,
        #[arg(long)]
        delta_pow: Option<u32>,
        #[arg(long)]
        expr: Option<String>,
        /// Print the 2-adic valuation of the content instead of the polynomial.
        #[arg(long)]
        val2: bool,
        /// Print the lowest a1-power term of the reduction mod 2.
        #[arg(long)]
        mod2: bool,
        #[arg(long, value_enum, requires = "range")]
        family: Option<Family>,
        #[arg(long, requires = "family")]
        range: Option<Range>,
    },
    /// q-expansions, Eisenstein series and the classes e(alpha).
    Qexp {
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, default_value_t = 20)]
        precision: usize,
        /// Only print the coefficients of q^A..q^B.
        #[arg(long)]
        range: Option<Range>,
        /// Write G_W in the basis c4^a c6^e Delta^d.
        #[arg(long, value_name = "W")]
        eisenstein: Option<i64>,
        /// The pair e(alpha_W).
        #[arg(long, value_name = "W")]
        e_alpha: Option<i64>,
    },
    /// Pages of the descent spectral sequence and the homotopy table.
    Chart {
        #[arg(long, default_value = "12,100,8")]
        window: WindowArg,
        #[arg(long, value_enum, default_value = "inf")]
        page: Page,
        /// Compare E-infinity with the homotopy table, stem by stem.
        #[arg(long)]
        table: bool,
        /// Stems to draw or tabulate.
        #[arg(long)]
        range: Option<Range>,
        /// Delta-filtration steps allowed for stabilization.
        #[arg(long, default_value_t = 8)]
        budget: usize,
    },
    /// Runs the acceptance suite.
    Verify {
        #[arg(long)]
        all: bool,
        /// Run only these criteria.
        #[arg(long, value_name = "N")]
        criterion: Vec<u8>,
    },
}

fn output(command: &'static str, inputs: Map<String, Json>, result: Json, text: String, checks: Vec<Check>) -> Output {
    Output { command, inputs, result, checks, text, show_checks: false }
}

fn inputs<const N: usize>(pairs: [(&str, Json); N]) -> Map<String, Json> {
    pairs.into_iter().filter(|(_, v)| !v.is_null()).map(|(k, v)| (k.to_string(), v)).collect()
}

/// Returns the output and any progress text meant for stderr.
pub fn dispatch(cli: Cli) -> Result<(Output, String), CliError> {
    let mut stderr = String::new();
    let out = match cli.command {
        Command::Invariants { curve } => invariants(&curve)?,
        Command::Normalize { curve, point } => normalize(&curve, &point)?,
        Command::Isogeny => isogeny()?,
        Command::Maps { apply, expr } => maps(apply, expr.as_deref())?,
        Command::Delta { c4_pow, c6, delta_pow, expr, val2, mod2, family, range } => {
            delta_cmd(DeltaArgs { c4_pow, c6, delta_pow, expr, val2, mod2, family, range })?
        }
        Command::Qexp { expr, precision, range, eisenstein, e_alpha } => qexp(expr.as_deref(), precision, range, eisenstein, e_alpha)?,
        Command::Chart { window, page, table, range, budget } => chart(window.0, page, table, range, budget)?,
        Command::Verify { all, criterion } => verify_cmd(all, &criterion, &mut stderr)?,
    };
    Ok((out, stderr))
}

fn poly_list(text: &str, n: usize) -> Result<Vec<MultiPoly>, CliError> {
    let exprs = parse_list(text)?;
    if exprs.len() != n {
        return Err(CliError::Usage(format!("expected {n} comma-separated entries, got {}", exprs.len())));
    }
    let ev = Evaluator::default();
    exprs
        .iter()
        .map(|e| {
            let v = ev.eval(e)?;
            v.as_poly().ok_or_else(|| CliError::Usage(format!("'{e}' is not a polynomial in a1, a3")))
        })
        .collect()
}

fn rational_list(text: &str, n: usize) -> Result<Vec<Rational>, CliError> {
    poly_list(text, n)?
        .into_iter()
        .map(|p| if p.is_constant() { Ok(p.constant_term()) } else { Err(CliError::Usage(format!("'{p}' is not a number"))) })
        .collect()
}

fn invariants(curve: &str) -> Result<Output, CliError> {
    let c = poly_list(curve, 5)?;
    let cu = WCurve::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone());
    let inv = cu.invariants();
    let rows = [
        ("b2", &inv.b2),
        ("b4", &inv.b4),
        ("b6", &inv.b6),
        ("b8", &inv.b8),
        ("c4", &inv.c4),
        ("c6", &inv.c6),
        ("Delta", &inv.disc),
    ];
    let mut text = String::new();
    let mut result = Map::new();
    for (name, p) in rows {
        let _ = writeln!(text, "{name} = {p}");
        result.insert(name.into(), json!(p.to_string()));
    }
    if inv.disc.is_constant() && !inv.disc.is_zero() {
        let j = num_traits::pow(inv.c4.constant_term(), 3) / inv.disc.constant_term();
        let _ = writeln!(text, "j = {}", fmt_rational(&j));
        result.insert("j".into(), json!(fmt_rational(&j)));
    }
    let lhs = inv.c4.pow(3) - inv.c6.pow(2);
    let checks = vec![Check::new("c4^3 - c6^2 = 1728 Delta", lhs == inv.disc.scale(&Rational::from_integer(1728.into())), "")];
    Ok(output("invariants", inputs([("curve", json!(curve))]), Json::Object(result), text, checks))
}

fn normalize(curve: &str, point: &str) -> Result<Output, CliError> {
    let c = rational_list(curve, 5)?;
    let p = rational_list(point, 2)?;
    let cu = WCurve::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone());
    let pt = WPoint::Affine(p[0].clone(), p[1].clone());
    let n = cu.gamma1_normalize(&pt).map_err(|e| CliError::Domain(e.to_string()))?;
    let t = &n.transform;
    let f = fmt_rational;
    let text = format!(
        "A1 = {}\nA3 = {}\nlambda = {}, r = {}, s = {}, t = {}\n",
        f(&n.a1),
        f(&n.a3),
        f(&t.lambda),
        f(&t.r),
        f(&t.s),
        f(&t.t)
    );
    let target = WCurve::normal_form(n.a1.clone(), n.a3.clone());
    let moved = cu.transform(t).map_err(|e| CliError::Domain(e.to_string()))?;
    let zero = Rational::from_integer(0.into());
    let checks = vec![
        Check::new("the transform carries the curve to the normal form", moved == target, moved.to_string()),
        Check::new("the point goes to (0, 0)", t.map_point(&pt) == WPoint::Affine(zero.clone(), zero), ""),
    ];
    let result = json!({
        "A1": f(&n.a1), "A3": f(&n.a3),
        "transform": {"lambda": f(&t.lambda), "r": f(&t.r), "s": f(&t.s), "t": f(&t.t)},
    });
    Ok(output("normalize", inputs([("curve", json!(curve)), ("point", json!(point))]), result, text, checks))
}

fn isogeny() -> Result<Output, CliError> {
    let v = velu3().map_err(CliError::Domain)?;
    let mut checks = verify_isogeny(&v);
    let x = FFElem::x();
    let trace = x.clone() + x.sigma() + x.sigma().sigma();
    checks.push(Check::new("X = x + sigma*x + sigma*^2 x", trace == v.x, ""));
    let cprime = v.cprime.coeffs().map(|c| c.to_string()).join(", ");
    let text = format!("C' = {cprime}\nX = {}\nY = {}\n", v.x, v.y);
    let result = json!({"cprime": cprime, "X": v.x.to_string(), "Y": v.y.to_string()});
    let mut out = output("isogeny", Map::new(), result, text, checks);
    out.show_checks = true;
    Ok(out)
}

fn maps(apply: Option<MapName>, expr: Option<&str>) -> Result<Output, CliError> {
    let Some(expr) = expr else {
        // the table of the level maps on generators
        let ev = Evaluator::default();
        let mut text = String::new();
        let mut result = Map::new();
        for src in [
            "fstar(c4)", "fstar(c6)", "fstar(Delta)", "qstar(c4)", "qstar(c6)", "qstar(Delta)",
            "hstar(c4)", "hstar(c6)", "hstar(Delta)", "tstar(a1^2)", "tstar(a1*a3)", "tstar(a3^2)",
        ] {
            let v = ev.eval(&parse(src)?)?.to_string();
            let _ = writeln!(text, "{src} = {v}");
            result.insert(src.to_string(), json!(v));
        }
        let checks = verify::run(2).expect("criterion 2 exists").checks;
        let mut out = output("maps", Map::new(), Json::Object(result), text, checks);
        out.show_checks = true;
        return Ok(out);
    };
    let e = parse(expr)?;
    let full = match apply {
        Some(m) => parse(&format!("{}({e})", m.name()))?,
        None => e,
    };
    let v = Evaluator::default().eval(&full)?;
    let inp = inputs([("apply", apply.map_or(Json::Null, |m| json!(m.name()))), ("expr", json!(expr))]);
    Ok(output("maps", inp, json!(v.to_string()), v.to_string(), Vec::new()))
}

struct DeltaArgs {
    c4_pow: Option<u32>,
    c6: bool,
    delta_pow: Option<u32>,
    expr: Option<String>,
    val2: bool,
    mod2: bool,
    family: Option<Family>,
    range: Option<Range>,
}

fn delta_cmd(a: DeltaArgs) -> Result<Output, CliError> {
    if let (Some(f), Some(r)) = (a.family, a.range) {
        return delta_family(f, r);
    }
    let (label, form) = match (a.c4_pow, a.delta_pow, &a.expr) {
        (Some(k), None, None) => {
            let mut m = LevelOneForm::c4().pow(k);
            if a.c6 {
                m = m * LevelOneForm::c6();
            }
            (if a.c6 { format!("c4^{k}*c6") } else { format!("c4^{k}") }, m)
        }
        (None, Some(n), None) => (format!("Delta^{n}"), LevelOneForm::delta_pow(n as i64)),
        (None, None, Some(e)) => {
            let v = Evaluator::default().eval(&parse(e)?)?;
            let m = v.as_level_one().ok_or_else(|| CliError::Usage(format!("'{e}' is not a level-one form")))?;
            (e.clone(), m)
        }
        _ => return Err(CliError::Usage("give exactly one of --c4-pow, --delta-pow, --expr (or --family with --range)".into())),
    };
    let d = delta(&form);
    let inp = inputs([("form", json!(label)), ("val2", json!(a.val2)), ("mod2", json!(a.mod2))]);
    let poly = d.as_poly().cloned();
    if a.val2 {
        let p = poly.ok_or_else(|| CliError::Domain(format!("delta({label}) is not a polynomial")))?;
        let v = p.content_valuation(2).to_string();
        return Ok(output("delta", inp, json!(v), v, Vec::new()));
    }
    if a.mod2 {
        let p = poly.ok_or_else(|| CliError::Domain(format!("delta({label}) is not a polynomial")))?;
        let red = p.mod2().map_err(|e| CliError::Domain(e.to_string()))?;
        let low = red.monomials().min_by(|x, y| x[0].cmp(&y[0]).then(x.cmp(y)));
        let s = low.map_or("0".to_string(), |e| format!("a1^{}*a3^{}", e[0], e[1]));
        return Ok(output("delta", inp, json!(s), s, Vec::new()));
    }
    Ok(output("delta", inp, json!(d.to_string()), d.to_string(), Vec::new()))
}

fn delta_family(f: Family, r: Range) -> Result<Output, CliError> {
    let lo = match f {
        Family::C4c6 => 0,
        _ => 1,
    };
    if r.start < lo || r.end > 4096 {
        return Err(CliError::Usage(format!("range must lie in {lo}..4096")));
    }
    let ks = (r.start as u32)..=(r.end as u32);
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut text = String::new();
    for k in ks {
        let (line, row, check) = match f {
            Family::C4 | Family::C4c6 => {
                let rep = if f == Family::C4 { val2_delta_c4pow(k) } else { val_delta_c4c6(k) };
                let line = format!("{}: v2 = {} (expected {})", rep.input, rep.valuation, rep.expected);
                (line, serde_json::to_value(&rep).expect("serializable"), Check::new(rep.input.clone(), rep.pass, rep.leading_term.clone()))
            }
            Family::Delta => {
                let rep = delta_mod2_delta_pow(k);
                let line = format!("{}: {} (expected {})", rep.input, rep.min_a1_term, rep.expected);
                (line, serde_json::to_value(&rep).expect("serializable"), Check::new(rep.input.clone(), rep.pass, ""))
            }
            Family::Binomial => {
                let mut ok = true;
                for d in 2..=6 {
                    ok &= lemma_binomial_check(d, k).pass;
                }
                let name = format!("binomial lemma, k = {k}, 2 <= d <= 6");
                (format!("{name}: {}", if ok { "holds" } else { "fails" }), json!({"k": k, "pass": ok}), Check::new(name, ok, ""))
            }
        };
        let _ = writeln!(text, "{line}");
        rows.push(row);
        checks.push(check);
    }
    let fam = format!("{f:?}").to_lowercase();
    let inp = inputs([("family", json!(fam)), ("range", json!(format!("{}..{}", r.start, r.end)))]);
    Ok(output("delta", inp, Json::Array(rows), text, checks))
}

fn qexp(expr: Option<&str>, precision: usize, range: Option<Range>, eis: Option<i64>, ea: Option<i64>) -> Result<Output, CliError> {
    let domain = |e: tmf3_core::qexp::QexpError| CliError::Domain(e.to_string());
    if let Some(w) = eis {
        let g = eisenstein_in_c4c6(w).map_err(domain)?;
        let n = holomorphic_basis(w).len() + 10;
        let same = series_of(&g, n).map_err(domain)? == eisenstein_g(w, n).map_err(domain)?;
        let checks = vec![Check::new(format!("q-expansions agree through q^{n}"), same, "")];
        let text = format!("G{w} = {g}");
        return Ok(output("qexp", inputs([("eisenstein", json!(w))]), json!(g.to_string()), text, checks));
    }
    if let Some(w) = ea {
        let (first, second) = e_alpha(w).map_err(domain)?;
        let text = format!("first = {first}\nsecond = {second}");
        let result = json!({"first": first.to_string(), "second": second.to_string()});
        return Ok(output("qexp", inputs([("e_alpha", json!(w))]), result, text, Vec::new()));
    }
    let expr = expr.ok_or_else(|| CliError::Usage("give --expr, --eisenstein or --e-alpha".into()))?;
    let ev = Evaluator { precision };
    let v = ev.eval(&parse(expr)?)?;
    let s = match &v {
        Value::LevelThree(_) => return Err(CliError::Usage(format!("'{expr}' has no q-expansion at level one"))),
        other => ev.to_series(other)?,
    };
    let inp = inputs([("expr", json!(expr)), ("precision", json!(precision))]);
    let Some(r) = range else {
        return Ok(output("qexp", inp, json!(s.to_string()), s.to_string(), Vec::new()));
    };
    if r.start < 0 || r.end as usize > s.precision() {
        return Err(CliError::Usage(format!("range must lie in 0..{}", s.precision())));
    }
    let mut text = String::new();
    let mut coeffs = Vec::new();
    for m in r.start as usize..=r.end as usize {
        let c = fmt_rational(s.coeff(m));
        let _ = writeln!(text, "{m}: {c}");
        coeffs.push(json!(c));
    }
    Ok(output("qexp", inp, Json::Array(coeffs), text, Vec::new()))
}

fn chart(window: Window, page: Page, table: bool, range: Option<Range>, budget: usize) -> Result<Output, CliError> {
    let stems = range.map_or(0..=window.stem_bound, |r| r.start..=r.end);
    let win = json!({"s_max": window.s_max, "stem_bound": window.stem_bound, "d": window.d_hi});
    if table {
        let rows = pi_table(&window, stems.clone());
        let checks: Vec<Check> =
            rows.iter().map(|r| Check::new(format!("stem {}", r.stem), r.pass(), r.mismatches.join("; "))).collect();
        let mut text = String::new();
        for r in &rows {
            let _ = writeln!(
                text,
                "{:>4}  free {}  index2 {}  torsion {:?}{}",
                r.stem,
                r.free_rank,
                r.index2,
                r.torsion,
                if r.expected.names.is_empty() { String::new() } else { format!("  {}", r.expected.names.join(" ")) }
            );
        }
        let inp = inputs([("window", win), ("stems", json!(format!("{}..{}", stems.start(), stems.end())))]);
        return Ok(output("chart", inp, serde_json::to_value(&rows).expect("serializable"), text, checks));
    }
    let p: ChartPage = match page {
        Page::E2 => build_e2(&window),
        _ => {
            let [e3, e4, e7, einf] = run_pipeline(&window, budget).map_err(|e| CliError::Domain(e.to_string()))?;
            match page {
                Page::E3 => e3,
                Page::E4 => e4,
                Page::E7 => e7,
                _ => einf,
            }
        }
    };
    let inp = inputs([("window", win), ("page", json!(p.page)), ("budget", json!(budget))]);
    Ok(output("chart", inp, p.to_json(), p.ascii(stems), Vec::new()))
}

fn verify_cmd(all: bool, only: &[u8], stderr: &mut String) -> Result<Output, CliError> {
    let ids: Vec<u8> = match (all, only.is_empty()) {
        (true, true) => verify::CRITERIA.iter().map(|c| c.0).collect(),
        (false, false) => only.to_vec(),
        _ => return Err(CliError::Usage("give either --all or one or more --criterion N".into())),
    };
    let mut checks = Vec::new();
    let mut summary = Vec::new();
    let mut text = String::new();
    for id in ids {
        let r = verify::run(id).ok_or_else(|| CliError::Usage(format!("no criterion {id}")))?;
        let _ = writeln!(stderr, "criterion {id}: {:.1}s", r.seconds);
        let _ = writeln!(
            text,
            "criterion {id} ({}): {} ({} checks)",
            r.title,
            if r.pass() { "pass" } else { "FAIL" },
            r.checks.len()
        );
        summary.push(json!({"id": id, "title": r.title, "pass": r.pass(), "checks": r.checks.len()}));
        for c in &r.checks {
            checks.push(Check::new(format!("{id}: {}", c.name), c.pass, c.detail.clone()));
        }
        if !r.within_budget() {
            let budget = r.budget_seconds.unwrap_or_default();
            checks.push(Check::new(format!("{id}: finished within {budget}s"), false, format!("took {:.1}s", r.seconds)));
        }
    }
    let failures = checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(text, "{} checks, {failures} failures", checks.len());
    let inp = inputs([("all", json!(all)), ("criterion", json!(only))]);
    Ok(output("verify", inp, Json::Array(summary), text, checks))
}
