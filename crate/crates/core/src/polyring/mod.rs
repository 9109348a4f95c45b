//! Sparse multivariate polynomials over the rationals, their reduction mod 2,
//! fractions, and the canonical localization at the discriminant
//! `Delta = a3^3 (a1^3 - 27 a3)`.

mod gcd;
mod local;
mod mod2;
mod ratfunc;

pub use gcd::{gcd, gcd_many};
pub use local::LocElem;
pub use mod2::Mod2Poly;
pub use ratfunc::RatFunc;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_arith::{fmt_rational, Rational, Valuation};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("coefficient {0} has an even denominator and cannot be reduced mod 2")]
    EvenDenominator(String),
    #[error("the zero polynomial has no minimal term")]
    ZeroPolynomial,
    #[error("variable sets differ: {0} vs {1}")]
    VarSetMismatch(String, String),
    #[error("element is not a unit of the localized ring")]
    NotAUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Var {
    pub name: &'static str,
    pub weight: i64,
}

/// An ordered list of named, weighted variables. Polynomials only combine
/// when their variable sets agree.
#[derive(Debug, Clone, Copy)]
pub struct VarSet(pub &'static [Var]);

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0) || self.0 == other.0
    }
}
impl Eq for VarSet {}

impl VarSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v.name == name)
    }
    pub fn names(&self) -> Vec<&'static str> {
        self.0.iter().map(|v| v.name).collect()
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names().join(","))
    }
}

pub const A1A3: VarSet = VarSet(&[Var { name: "a1", weight: 1 }, Var { name: "a3", weight: 3 }]);

/// Coefficients of a general Weierstrass equation.
pub const WEIERSTRASS: VarSet = VarSet(&[
    Var { name: "a1", weight: 1 },
    Var { name: "a2", weight: 2 },
    Var { name: "a3", weight: 3 },
    Var { name: "a4", weight: 4 },
    Var { name: "a6", weight: 6 },
]);

/// `a1, a3` together with the affine coordinate `x` of the universal curve.
pub const A1A3X: VarSet = VarSet(&[
    Var { name: "a1", weight: 1 },
    Var { name: "a3", weight: 3 },
    Var { name: "x", weight: 2 },
]);

pub const UV: VarSet = VarSet(&[Var { name: "u", weight: 1 }, Var { name: "v", weight: 1 }]);

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Exponents, Rational>,
}

impl std::hash::Hash for VarSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names().hash(state)
    }
}

impl MultiPoly {
    pub fn zero(vars: VarSet) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn int(vars: VarSet, n: i64) -> Self {
        Self::constant(vars, Rational::from_integer(n.into()))
    }

    pub fn var(vars: VarSet, name: &str) -> Self {
        let idx = vars.index_of(name).unwrap_or_else(|| panic!("no variable {name} in {vars}"));
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn monomial(vars: VarSet, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, Rational)>>(vars: VarSet, it: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().all(|e| e.iter().all(|&x| x == 0)))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.len(), self.vars.len());
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "variable set mismatch: {} vs {}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &[u32], c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        MultiPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow_u(self, e)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|e| e[idx]).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn term_weight(&self, e: &[u32]) -> i64 {
        e.iter().zip(self.vars.0).map(|(&k, v)| k as i64 * v.weight).sum()
    }

    /// Common weight of all terms, or `None` when the polynomial is zero or
    /// not homogeneous.
    pub fn weight_of(&self) -> Option<i64> {
        let mut w = None;
        for e in self.terms.keys() {
            let tw = self.term_weight(e);
            match w {
                None => w = Some(tw),
                Some(x) if x != tw => return None,
                _ => {}
            }
        }
        w
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight_of().is_some()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    /// Substitutes a value of any ring for each variable.
    pub fn eval_in<R: Ring>(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.vars.len());
        let zero = point[0].zero_like();
        let mut acc = zero.clone();
        for (e, c) in &self.terms {
            let mut t = zero.constant_like(c.clone());
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t * x.pow_u(k);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    /// Panics if a variable in use is absent from `target`.
    pub fn embed(&self, target: VarSet) -> Self {
        let map: Vec<Option<usize>> = self.vars.0.iter().map(|v| target.index_of(v.name)).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let j = map[i].unwrap_or_else(|| panic!("variable {} missing from {target}", self.vars.0[i].name));
                    ne[j] += k;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            if e[idx] > 0 {
                let mut ne = e.clone();
                ne[idx] -= 1;
                out.add_term(ne, c * Rational::from_integer(e[idx].into()));
            }
        }
        out
    }

    /// Coefficients of the polynomial viewed as univariate in `idx`.
    pub fn coeffs_in(&self, idx: usize) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[idx];
            let mut ne = e.clone();
            ne[idx] = 0;
            out.entry(k).or_insert_with(|| MultiPoly::zero(self.vars)).add_term(ne, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(vars: VarSet, idx: usize, coeffs: &BTreeMap<u32, MultiPoly>) -> Self {
        let mut out = Self::zero(vars);
        for (&k, p) in coeffs {
            for (e, c) in &p.terms {
                let mut ne = e.clone();
                ne[idx] += k;
                out.add_term(ne, c.clone());
            }
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        self.check_vars(d);
        let (dle, dlc) = d.leading_term()?;
        let (dle, dlc) = (dle.clone(), dlc.clone());
        if d.is_monomial() {
            let mut q = Self::zero(self.vars);
            for (e, c) in &self.terms {
                if e.iter().zip(&dle).any(|(a, b)| a < b) {
                    return None;
                }
                q.terms.insert(e.iter().zip(&dle).map(|(a, b)| a - b).collect(), c / &dlc);
            }
            return Some(q);
        }
        let mut r = self.clone();
        let mut q = Self::zero(self.vars);
        while let Some((re, rc)) = r.leading_term() {
            if re.iter().zip(&dle).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = re.iter().zip(&dle).map(|(a, b)| a - b).collect();
            let qc = rc / &dlc;
            r = r - d.mul_monomial(&qe, &qc);
            q.add_term(qe, qc);
        }
        Some(q)
    }

    pub fn divides(&self, other: &MultiPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::zero();
        }
        Rational::new(num, den)
    }

    /// Divides out the content, with the sign chosen so the leading
    /// coefficient is positive.
    pub fn primitive_part(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_term().map(|(_, x)| x.is_negative()).unwrap_or(false) {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// 2-adic valuation of the content (minimum over coefficients).
    pub fn content_valuation(&self, p: u64) -> Valuation {
        self.terms
            .values()
            .map(|c| crate::exact_arith::val_p(c, p))
            .min()
            .unwrap_or(Valuation::Infinite)
    }

    /// Reduction mod 2. Denominators must be odd (in practice powers of 3).
    pub fn mod2(&self) -> Result<Mod2Poly, PolyError> {
        let mut out = Mod2Poly::zero(self.vars);
        for (e, c) in &self.terms {
            match crate::exact_arith::mod2(c) {
                None => return Err(PolyError::EvenDenominator(fmt_rational(c))),
                Some(true) => out.toggle(e.clone()),
                Some(false) => {}
            }
        }
        Ok(out)
    }

    /// The term of least exponent in variable `a1` (index 0), breaking ties
    /// by the remaining exponents.
    pub fn min_a1_term(&self) -> Result<(Exponents, Rational), PolyError> {
        self.terms
            .iter()
            .min_by(|(a, _), (b, _)| a[0].cmp(&b[0]).then_with(|| a.cmp(b)))
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Image under `a_i -> sign^i a_i`-style substitutions: each variable is
    /// multiplied by the given rational.
    pub fn scale_vars(&self, factors: &[Rational]) -> MultiPoly {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (f, &k) in factors.iter().zip(e) {
                t *= num_traits::pow(f.clone(), k as usize);
            }
            out.add_term(e.clone(), t);
        }
        out
    }

    /// Terms in canonical (lexicographically descending) order.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Rational)> {
        self.terms.iter().rev().collect()
    }
}

pub(crate) fn fmt_monomial(vars: VarSet, e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, &k) in vars.0.iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(v.name.to_string()),
            _ => parts.push(format!("{}^{}", v.name, k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Canonical text form: `coef*a1^i*a3^j` joined by ` + `, terms in
    /// descending lexicographic order of exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let m = fmt_monomial(self.vars, e);
                if m.is_empty() {
                    fmt_rational(c)
                } else {
                    format!("{}*{}", fmt_rational(c), m)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly{}({})", self.vars, self)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self.check_vars(&rhs);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() + rhs.clone()
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self.check_vars(&rhs);
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() - rhs.clone()
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_vars(rhs);
        let mut out = MultiPoly::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Ring for MultiPoly {
    fn constant_like(&self, c: Rational) -> Self {
        MultiPoly::constant(self.vars, c)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Shorthands for polynomials in `a1, a3`.
pub fn a1() -> MultiPoly {
    MultiPoly::var(A1A3, "a1")
}

pub fn a3() -> MultiPoly {
    MultiPoly::var(A1A3, "a3")
}

pub fn c(n: i64) -> MultiPoly {
    MultiPoly::int(A1A3, n)
}

pub fn cq(q: Rational) -> MultiPoly {
    MultiPoly::constant(A1A3, q)
}

/// `coef * a1^i * a3^j`.
pub fn mono(coef: i64, i: u32, j: u32) -> MultiPoly {
    MultiPoly::monomial(A1A3, vec![i, j], Rational::from_integer(coef.into()))
}

/// `a1^3 - 27 a3`, the non-`a3` factor of the discriminant.
pub fn disc_cofactor() -> MultiPoly {
    mono(1, 3, 0) - mono(27, 0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn discriminant_factorization() {
        let lhs = mono(1, 3, 3) - mono(27, 0, 4);
        let rhs = a3().pow(3) * disc_cofactor();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn subtraction_of_c4_images() {
        let q = mono(1, 4, 0) + mono(216, 1, 1);
        let f = mono(1, 4, 0) - mono(24, 1, 1);
        assert_eq!(q - f, mono(240, 1, 1));
    }

    #[test]
    fn binomial_square() {
        let p = (a1() + a3()).pow(2);
        assert_eq!(p, mono(1, 2, 0) + mono(2, 1, 1) + mono(1, 0, 2));
        assert_eq!(p.to_string(), "1*a1^2 + 2*a1*a3 + 1*a3^2");
    }

    #[test]
    fn zero_terms_are_not_stored() {
        let p = mono(5, 5, 1) + mono(0, 2, 2) + mono(1, 8, 0);
        assert_eq!(p.num_terms(), 2);
        let (e, c) = p.min_a1_term().unwrap();
        assert_eq!(e, vec![5, 1]);
        assert_eq!(c, int(5));
        assert_eq!(mono(1, 1, 1).min_a1_term().unwrap(), (vec![1, 1], int(1)));
        assert_eq!(MultiPoly::zero(A1A3).min_a1_term(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn mod2_reduction() {
        assert!(mono(240, 1, 1).mod2().unwrap().is_zero());
        let third = cq(rat(1, 3)).mod2().unwrap();
        assert_eq!(third, Mod2Poly::one(A1A3));
        assert!(cq(rat(1, 2)).mod2().is_err());
        let qd = mono(1, 9, 1) - mono(81, 6, 2) + mono(2187, 3, 3) - mono(19683, 0, 4);
        let expect = [vec![0, 4], vec![3, 3], vec![6, 2], vec![9, 1]];
        let r = qd.mod2().unwrap();
        assert_eq!(r.monomials().cloned().collect::<Vec<_>>(), expect.to_vec());
    }

    #[test]
    fn weights() {
        assert_eq!(mono(1, 4, 0).weight_of(), Some(4));
        assert_eq!((mono(1, 4, 0) + mono(3, 1, 1)).weight_of(), Some(4));
        assert_eq!((mono(1, 4, 0) + mono(3, 1, 0)).weight_of(), None);
    }

    #[test]
    fn exact_division() {
        let p = a3().pow(3) * disc_cofactor() * a1();
        assert_eq!(p.div_exact(&disc_cofactor()).unwrap(), a3().pow(3) * a1());
        assert!(a1().div_exact(&a3()).is_none());
        assert!((a1() + c(1)).div_exact(&disc_cofactor()).is_none());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((0u32..4, 0u32..4, -6i64..6), 0..5)
            .prop_map(|ts| MultiPoly::from_terms(A1A3, ts.into_iter().map(|(i, j, c)| (vec![i, j], int(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn division_recovers_factor(p in small_poly(), q in small_poly()) {
            prop_assume!(!q.is_zero());
            let prod = &p * &q;
            prop_assert_eq!(prod.div_exact(&q), Some(p));
        }
    }
}
