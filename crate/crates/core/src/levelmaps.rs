//! Modular forms of level one and of level `Gamma_0(3)`, the maps
//! `f*, q*, h*, t*` between them, the cochain complex they form, and the
//! 2-adic valuation statements about `delta = q* - f*`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact_arith::{fmt_rational, int, pow3, Rational, Valuation};
use crate::polyring::{a1, a3, c, disc_cofactor, LocElem, MultiPoly, PolyError, A1A3, UV};
use crate::ring::Ring;
use crate::weierstrass::WCurve;

/// Exponents `(a, e, d)` of the basis monomial `c4^a c6^e Delta^d`, with
/// `e` in `{0, 1}`.
pub type Basis = (u32, u8, i64);

pub fn basis_weight(b: &Basis) -> i64 {
    4 * b.0 as i64 + 6 * b.1 as i64 + 12 * b.2
}

/// An element of `Z[1/3][c4, c6, Delta^(+-1)] / (c4^3 - c6^2 - 1728 Delta)`
/// in the basis `c4^a c6^e Delta^d`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LevelOneForm {
    terms: BTreeMap<Basis, Rational>,
}

impl LevelOneForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial((0, 0, 0), c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn monomial(b: Basis, c: Rational) -> Self {
        assert!(b.1 <= 1, "c6 exponent must be 0 or 1");
        let mut f = Self::zero();
        f.add_term(b, c);
        f
    }

    pub fn c4() -> Self {
        Self::monomial((1, 0, 0), Rational::one())
    }

    pub fn c6() -> Self {
        Self::monomial((0, 1, 0), Rational::one())
    }

    pub fn delta() -> Self {
        Self::delta_pow(1)
    }

    pub fn delta_pow(k: i64) -> Self {
        Self::monomial((0, 0, k), Rational::one())
    }

    /// `c4^a c6^e Delta^d` for any `e >= 0`.
    pub fn basis_element(a: u32, e: u32, d: i64) -> Self {
        Self::c4().pow(a) * Self::c6().pow(e) * Self::delta_pow(d)
    }

    fn add_term(&mut self, b: Basis, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(b).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &Basis) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (b, x) in &self.terms {
            out.add_term(*b, x * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_u(e)
    }

    /// Common weight of all terms, `None` if zero or inhomogeneous.
    pub fn weight_of(&self) -> Option<i64> {
        let mut ws = self.terms.keys().map(basis_weight);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn map_terms<R: Ring, F: Fn(&Basis) -> R>(&self, zero: R, f: F) -> R {
        let mut acc = zero.zero_like();
        for (b, c) in &self.terms {
            acc = acc + f(b) * zero.constant_like(c.clone());
        }
        acc
    }
}

impl fmt::Display for LevelOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(a, e, d), c)| {
                let mut m = Vec::new();
                match a {
                    0 => {}
                    1 => m.push("c4".to_string()),
                    _ => m.push(format!("c4^{a}")),
                }
                if e == 1 {
                    m.push("c6".to_string());
                }
                match d {
                    0 => {}
                    1 => m.push("Delta".to_string()),
                    _ => m.push(format!("Delta^{d}")),
                }
                if m.is_empty() {
                    fmt_rational(c)
                } else {
                    format!("{}*{}", fmt_rational(c), m.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LevelOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LevelOneForm({self})")
    }
}

impl Add for LevelOneForm {
    type Output = LevelOneForm;
    fn add(mut self, rhs: LevelOneForm) -> LevelOneForm {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
        self
    }
}

impl Neg for LevelOneForm {
    type Output = LevelOneForm;
    fn neg(self) -> LevelOneForm {
        self.scale(&int(-1))
    }
}

impl Sub for LevelOneForm {
    type Output = LevelOneForm;
    fn sub(self, rhs: LevelOneForm) -> LevelOneForm {
        self + (-rhs)
    }
}

impl Mul for LevelOneForm {
    type Output = LevelOneForm;
    fn mul(self, rhs: LevelOneForm) -> LevelOneForm {
        let mut out = LevelOneForm::zero();
        for (&(a1, e1, d1), x) in &self.terms {
            for (&(a2, e2, d2), y) in &rhs.terms {
                let c = x * y;
                if e1 + e2 == 2 {
                    // c6^2 = c4^3 - 1728 Delta
                    out.add_term((a1 + a2 + 3, 0, d1 + d2), c.clone());
                    out.add_term((a1 + a2, 0, d1 + d2 + 1), c * int(-1728));
                } else {
                    out.add_term((a1 + a2, e1 + e2, d1 + d2), c);
                }
            }
        }
        out
    }
}

impl Ring for LevelOneForm {
    fn constant_like(&self, c: Rational) -> Self {
        LevelOneForm::constant(c)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// An element of `Z[1/3][a1, a3][1/Delta]` fixed by `a1 -> -a1, a3 -> -a3`,
/// i.e. a modular form for `Gamma_0(3)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gamma03Form(LocElem);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LevelError {
    #[error("{0} is not invariant under a1 -> -a1, a3 -> -a3")]
    NotInvariant(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Whether `a1 -> -a1, a3 -> -a3` fixes the element.
pub fn is_sigma_invariant(x: &LocElem) -> bool {
    let (e3, e9) = x.exponents();
    let flipped = x.numerator().scale_vars(&[int(-1), int(-1)]);
    let sign = if (e3 + e9) % 2 == 0 { int(1) } else { int(-1) };
    flipped == x.numerator().scale(&sign)
}

impl Gamma03Form {
    pub fn try_new(x: LocElem) -> Result<Self, LevelError> {
        if is_sigma_invariant(&x) {
            Ok(Gamma03Form(x))
        } else {
            Err(LevelError::NotInvariant(x.to_string()))
        }
    }

    pub fn from_poly(p: MultiPoly) -> Result<Self, LevelError> {
        Self::try_new(LocElem::from_poly(p))
    }

    pub fn inner(&self) -> &LocElem {
        &self.0
    }

    pub fn into_inner(self) -> LocElem {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.0.as_poly()
    }

    pub fn weight_of(&self) -> Option<i64> {
        self.0.weight_of()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Gamma03Form(self.0.scale(c))
    }

    pub fn pow_i(&self, k: i64) -> Result<Self, LevelError> {
        Ok(Gamma03Form(self.0.pow_i(k)?))
    }
}

impl fmt::Display for Gamma03Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Gamma03Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gamma03Form({})", self.0)
    }
}

impl Add for Gamma03Form {
    type Output = Gamma03Form;
    fn add(self, rhs: Gamma03Form) -> Gamma03Form {
        Gamma03Form(self.0 + rhs.0)
    }
}

impl Sub for Gamma03Form {
    type Output = Gamma03Form;
    fn sub(self, rhs: Gamma03Form) -> Gamma03Form {
        Gamma03Form(self.0 - rhs.0)
    }
}

impl Neg for Gamma03Form {
    type Output = Gamma03Form;
    fn neg(self) -> Gamma03Form {
        Gamma03Form(-self.0)
    }
}

impl Mul for Gamma03Form {
    type Output = Gamma03Form;
    fn mul(self, rhs: Gamma03Form) -> Gamma03Form {
        Gamma03Form(self.0 * rhs.0)
    }
}

impl Ring for Gamma03Form {
    fn constant_like(&self, c: Rational) -> Self {
        Gamma03Form(LocElem::constant(c))
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// The curve `C'` of the universal degree-three isogeny.
pub fn isogenous_curve() -> WCurve<MultiPoly> {
    WCurve::new(
        a1(),
        c(0),
        c(3) * a3(),
        c(-6) * a1() * a3(),
        -(c(9) * a3().pow(2) + a1().pow(3) * a3()),
    )
}

struct Images {
    c4: LocElem,
    c6: LocElem,
    delta: LocElem,
    delta_inv: LocElem,
}

fn images_of(curve: &WCurve<MultiPoly>) -> Images {
    let inv = curve.invariants();
    let delta = LocElem::from_poly(inv.disc);
    Images {
        c4: LocElem::from_poly(inv.c4),
        c6: LocElem::from_poly(inv.c6),
        delta_inv: delta.try_inv().expect("discriminant is a unit"),
        delta,
    }
}

fn f_images() -> &'static Images {
    static F: OnceLock<Images> = OnceLock::new();
    F.get_or_init(|| images_of(&WCurve::normal_form(a1(), a3())))
}

fn q_images() -> &'static Images {
    static Q: OnceLock<Images> = OnceLock::new();
    Q.get_or_init(|| images_of(&isogenous_curve()))
}

fn apply_images(m: &LevelOneForm, im: &Images) -> Gamma03Form {
    let zero = LocElem::constant(Rational::zero());
    let x = m.map_terms(zero, |&(a, e, d)| {
        let mut t = im.c4.pow_u(a);
        if e == 1 {
            t = t * im.c6.clone();
        }
        let dp = if d >= 0 { im.delta.pow_u(d as u32) } else { im.delta_inv.pow_u((-d) as u32) };
        t * dp
    });
    Gamma03Form::try_new(x).expect("images of level-one forms are invariant")
}

/// `f*`: evaluate on the curve `y^2 + a1 xy + a3 y = x^3`.
pub fn fstar(m: &LevelOneForm) -> Gamma03Form {
    apply_images(m, f_images())
}

/// `q*`: evaluate on the isogenous curve `C'`.
pub fn qstar(m: &LevelOneForm) -> Gamma03Form {
    apply_images(m, q_images())
}

/// `h*`: multiplies each weight-`w` component by `3^w`.
pub fn hstar(m: &LevelOneForm) -> LevelOneForm {
    let mut out = LevelOneForm::zero();
    for (b, c) in m.terms() {
        out.add_term(*b, c * pow3(basis_weight(b)));
    }
    out
}

fn a_sq() -> MultiPoly {
    a1().pow(2)
}

/// Images of `A = a1^2`, `B = a1 a3`, `C = a3^2` under `t*`.
pub fn tstar_generators() -> [MultiPoly; 3] {
    let third = Rational::new(1.into(), 3.into());
    let t_a = a_sq().scale(&int(-3));
    let t_b = a1().pow(4).scale(&third) - (a1() * a3()).scale(&int(9));
    let t_c = a1().pow(6).scale(&Rational::new((-1).into(), 27.into())) + (a1().pow(3) * a3()).scale(&int(2))
        - a3().pow(2).scale(&int(27));
    [t_a, t_b, t_c]
}

/// `t*` on a polynomial all of whose monomials `a1^i a3^j` have `i + j` even.
fn tstar_poly(p: &MultiPoly) -> MultiPoly {
    let [ta, tb, tc] = tstar_generators();
    let mut cache_a = vec![MultiPoly::one(A1A3)];
    let mut cache_b = vec![MultiPoly::one(A1A3)];
    let mut cache_c = vec![MultiPoly::one(A1A3)];
    let get = |cache: &mut Vec<MultiPoly>, base: &MultiPoly, k: usize| {
        while cache.len() <= k {
            let next = cache.last().expect("nonempty") * base;
            cache.push(next);
        }
        cache[k].clone()
    };
    let mut out = MultiPoly::zero(A1A3);
    for (e, coef) in p.terms() {
        let (i, j) = (e[0], e[1]);
        assert!((i + j) % 2 == 0, "t* applied to a non-invariant monomial");
        let (na, nb, nc) = if i >= j { ((i - j) / 2, j, 0) } else { (0, i, (j - i) / 2) };
        let term = &(&get(&mut cache_a, &ta, na as usize) * &get(&mut cache_b, &tb, nb as usize))
            * &get(&mut cache_c, &tc, nc as usize);
        out = out + term.scale(coef);
    }
    out
}

/// `t*` extended to the localization through `t*(f* Delta) = q* Delta`.
pub fn tstar(g: &Gamma03Form) -> Gamma03Form {
    let x = g.inner();
    let (e3, e9) = x.exponents();
    let k = e9.max(e3.div_ceil(3));
    // g = num' / (f* Delta)^k
    let num = x.numerator() * &(a3().pow(3 * k - e3) * disc_cofactor().pow(k - e9));
    let image = LocElem::from_poly(tstar_poly(&num));
    let q_delta_inv = q_images().delta_inv.pow_u(k);
    Gamma03Form::try_new(image * q_delta_inv).expect("t* preserves invariance")
}

/// First coboundary `m -> (q* m - f* m, h* m - m)`.
pub fn cochain_d0(m: &LevelOneForm) -> (Gamma03Form, LevelOneForm) {
    (qstar(m) - fstar(m), hstar(m) - m.clone())
}

/// Second coboundary `(u, v) -> t* u + u - f* v`.
pub fn cochain_d1(u: &Gamma03Form, v: &LevelOneForm) -> Gamma03Form {
    tstar(u) + u.clone() - fstar(v)
}

/// `delta = q* - f*`.
pub fn delta(m: &LevelOneForm) -> Gamma03Form {
    qstar(m) - fstar(m)
}

fn poly_of(g: &Gamma03Form) -> &MultiPoly {
    g.as_poly().expect("delta of a holomorphic form is a polynomial")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationReport {
    pub input: String,
    pub valuation: Valuation,
    pub expected: Valuation,
    pub leading_term: String,
    pub pass: bool,
}

fn nu2(k: u64) -> i64 {
    k.trailing_zeros() as i64
}

fn coeff_is_odd_after(p: &MultiPoly, e: &[u32], v: i64) -> bool {
    let c = p.coeff(e) / Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(2), v as usize));
    c.is_integer() && crate::exact_arith::mod2(&c) == Some(true)
}

/// The 2-adic valuation of the content of `delta(c4^k)`, which should be
/// `4 + nu2(k)`, with an odd cofactor on `a1^(4k-3) a3`.
pub fn val2_delta_c4pow(k: u32) -> ValuationReport {
    assert!(k >= 1);
    let p = poly_of(&delta(&LevelOneForm::c4().pow(k))).clone();
    let v = p.content_valuation(2);
    let expected = Valuation::Finite(4 + nu2(k as u64));
    let mono = vec![4 * k - 3, 1];
    let odd = v.finite().map(|v| coeff_is_odd_after(&p, &mono, v)).unwrap_or(false);
    ValuationReport {
        input: format!("delta(c4^{k})"),
        valuation: v,
        expected,
        leading_term: format!("{}*a1^{}*a3", fmt_rational(&p.coeff(&mono)), 4 * k - 3),
        pass: v == expected && odd,
    }
}

/// The same statement for `delta(c4^k c6)`: valuation 3 with an odd
/// cofactor on `a1^(4k+3) a3`.
pub fn val_delta_c4c6(k: u32) -> ValuationReport {
    let m = LevelOneForm::c4().pow(k) * LevelOneForm::c6();
    let p = poly_of(&delta(&m)).clone();
    let v = p.content_valuation(2);
    let mono = vec![4 * k + 3, 1];
    let odd = v.finite().map(|v| coeff_is_odd_after(&p, &mono, v)).unwrap_or(false);
    ValuationReport {
        input: format!("delta(c4^{k}*c6)"),
        valuation: v,
        expected: Valuation::Finite(3),
        leading_term: format!("{}*a1^{}*a3", fmt_rational(&p.coeff(&mono)), 4 * k + 3),
        pass: v == Valuation::Finite(3) && odd,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mod2Report {
    pub input: String,
    pub min_a1_term: String,
    pub expected: String,
    pub pass: bool,
}

/// The lowest power of `a1` in `delta(Delta^n)` mod 2, which for
/// `n = 2^r (2k+1)` should be `a1^(3 2^(r+1)) a3^(2^(r+1) (4k+1))`.
pub fn delta_mod2_delta_pow(n: u32) -> Mod2Report {
    assert!(n >= 1);
    let r = n.trailing_zeros();
    let k = (n >> r) / 2;
    let want = (3 << (r + 1), (1u32 << (r + 1)) * (4 * k + 1));
    let p = poly_of(&delta(&LevelOneForm::delta_pow(n as i64))).clone();
    let red = p.mod2().expect("integral coefficients");
    let got = red.monomials().min_by(|a, b| a[0].cmp(&b[0]).then(a.cmp(b))).cloned();
    let fmt = |e: &[u32]| format!("a1^{}*a3^{}", e[0], e[1]);
    let got = got.as_deref().map(fmt).unwrap_or_else(|| "0".into());
    let expected = fmt(&[want.0, want.1]);
    Mod2Report { input: format!("delta(Delta^{n}) mod 2"), pass: got == expected, min_a1_term: got, expected }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomialReport {
    pub d: u32,
    pub k: u32,
    pub exponent: i64,
    pub quotient: String,
    pub pass: bool,
}

/// `(u + 2^d v)^k - u^k = 2^(d + nu2(k)) g(u, v)` with `g` integral and
/// the coefficient of `u^(k-1) v` in `g` odd.
pub fn lemma_binomial_check(d: u32, k: u32) -> BinomialReport {
    assert!(d >= 2 && k >= 1);
    let u = MultiPoly::var(UV, "u");
    let v = MultiPoly::var(UV, "v");
    let two_d = Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(2), d as usize));
    let diff = (&u + &v.scale(&two_d)).pow(k) - u.pow(k);
    let exponent = d as i64 + nu2(k as u64);
    let g = diff.scale(&Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(2), exponent as usize)).recip());
    let integral = g.terms().all(|(_, c)| c.is_integer());
    let lead = g.coeff(&[k - 1, 1]);
    let odd = crate::exact_arith::mod2(&lead) == Some(true);
    let rest_higher = g.terms().all(|(e, _)| e[1] >= 1 && (e[1] >= 2 || e[0] == k - 1));
    BinomialReport { d, k, exponent, quotient: g.to_string(), pass: integral && odd && rest_higher }
}
