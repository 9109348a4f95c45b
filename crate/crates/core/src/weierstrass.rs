//! Weierstrass curves `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`,
//! their invariants, changes of coordinates, the chord-and-tangent group
//! law, the flex test and the normalization of a curve with a point of
//! order three to `y^2 + A1 xy + A3 y = x^3`.
//!
//! A [`WTransform`] `(lambda, r, s, t)` is the substitution
//! `x = lambda^-2 x' + r`, `y = lambda^-3 y' + lambda^-1 s x' + t`, so the
//! transformed curve has `c4' = lambda^4 c4`. Internally the formulas are
//! written with `u = 1/lambda` and `s_int = lambda s`, which is the usual
//! textbook substitution `x = u^2 x' + r`, `y = u^3 y' + s_int u^2 x' + t`.

use std::fmt;

use thiserror::Error;

use crate::exact_arith::Rational;
use crate::ring::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("curve is singular (discriminant is zero)")]
    Singular,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("operation needs an affine point, got the point at infinity")]
    PointAtInfinity,
    #[error("point has order {0}, expected exact order 3")]
    WrongOrder(String),
    #[error("tangent at the point is vertical, so the point is 2-torsion")]
    VerticalTangent,
    #[error("normalization failed: {0}")]
    Normalization(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WCurve<K> {
    pub a1: K,
    pub a2: K,
    pub a3: K,
    pub a4: K,
    pub a6: K,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invariants<K> {
    pub b2: K,
    pub b4: K,
    pub b6: K,
    pub b8: K,
    pub c4: K,
    pub c6: K,
    pub disc: K,
}

impl<K: Ring> WCurve<K> {
    pub fn new(a1: K, a2: K, a3: K, a4: K, a6: K) -> Self {
        WCurve { a1, a2, a3, a4, a6 }
    }

    /// `y^2 + a1 xy + a3 y = x^3`.
    pub fn normal_form(a1: K, a3: K) -> Self {
        let z = a1.zero_like();
        WCurve { a1, a2: z.clone(), a3, a4: z.clone(), a6: z }
    }

    pub fn coeffs(&self) -> [&K; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn map_coeffs<L, F: Fn(&K) -> L>(&self, f: F) -> WCurve<L> {
        WCurve { a1: f(&self.a1), a2: f(&self.a2), a3: f(&self.a3), a4: f(&self.a4), a6: f(&self.a6) }
    }

    pub fn invariants(&self) -> Invariants<K> {
        let (a1, a2, a3, a4, a6) =
            (self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone());
        let n = |k: i64| a1.int_like(k);
        let b2 = a1.square() + n(4) * a2.clone();
        let b4 = n(2) * a4.clone() + a1.clone() * a3.clone();
        let b6 = a3.square() + n(4) * a6.clone();
        let b8 = a1.square() * a6.clone() + n(4) * a2.clone() * a6.clone()
            - a1.clone() * a3.clone() * a4.clone()
            + a2.clone() * a3.square()
            - a4.square();
        let c4 = b2.square() - n(24) * b4.clone();
        let c6 = -b2.pow_u(3) + n(36) * b2.clone() * b4.clone() - n(216) * b6.clone();
        let disc = -b2.square() * b8.clone() - n(8) * b4.pow_u(3) - n(27) * b6.square()
            + n(9) * b2.clone() * b4.clone() * b6.clone();
        Invariants { b2, b4, b6, b8, c4, c6, disc }
    }

    pub fn discriminant(&self) -> K {
        self.invariants().disc
    }

    pub fn is_smooth(&self) -> bool {
        !self.discriminant().is_zero_elem()
    }

    /// Value of `y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6`.
    pub fn equation_at(&self, x: &K, y: &K) -> K {
        y.square() + self.a1.clone() * x.clone() * y.clone() + self.a3.clone() * y.clone()
            - x.pow_u(3)
            - self.a2.clone() * x.square()
            - self.a4.clone() * x.clone()
            - self.a6.clone()
    }

    pub fn contains(&self, p: &WPoint<K>) -> bool {
        match p {
            WPoint::Infinity => true,
            WPoint::Affine(x, y) => self.equation_at(x, y).is_zero_elem(),
        }
    }

    fn check_point(&self, p: &WPoint<K>) -> Result<(), CurveError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(CurveError::NotOnCurve(p.to_string()))
        }
    }

    /// The curve in the new coordinates of `t`. Only ring operations are
    /// needed because the formulas involve `1/u = lambda`.
    pub fn transform(&self, t: &WTransform<K>) -> Result<WCurve<K>, CurveError> {
        if t.lambda.is_zero_elem() {
            return Err(CurveError::ZeroLambda);
        }
        let l = t.lambda.clone();
        let (r, tt) = (t.r.clone(), t.t.clone());
        let s = l.clone() * t.s.clone();
        let (a1, a2, a3, a4, a6) =
            (self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone());
        let n = |k: i64| l.int_like(k);
        let b1 = l.clone() * (a1.clone() + n(2) * s.clone());
        let b2 = l.pow_u(2) * (a2.clone() - s.clone() * a1.clone() + n(3) * r.clone() - s.square());
        let b3 = l.pow_u(3) * (a3.clone() + r.clone() * a1.clone() + n(2) * tt.clone());
        let b4 = l.pow_u(4)
            * (a4.clone() - s.clone() * a3.clone() + n(2) * r.clone() * a2.clone()
                - (tt.clone() + r.clone() * s.clone()) * a1.clone()
                + n(3) * r.square()
                - n(2) * s * tt.clone());
        let b6 = l.pow_u(6)
            * (a6 + r.clone() * a4 + r.square() * a2 + r.pow_u(3)
                - tt.clone() * a3
                - tt.square()
                - r * tt * a1);
        Ok(WCurve { a1: b1, a2: b2, a3: b3, a4: b4, a6: b6 })
    }
}

impl<K: Field> WCurve<K> {
    pub fn j_invariant(&self) -> Result<K, CurveError> {
        let inv = self.invariants();
        let d = inv.disc.inv().ok_or(CurveError::Singular)?;
        Ok(inv.c4.pow_u(3) * d)
    }

    pub fn neg(&self, p: &WPoint<K>) -> Result<WPoint<K>, CurveError> {
        self.check_point(p)?;
        Ok(self.neg_unchecked(p))
    }

    fn neg_unchecked(&self, p: &WPoint<K>) -> WPoint<K> {
        match p {
            WPoint::Infinity => WPoint::Infinity,
            WPoint::Affine(x, y) => {
                WPoint::Affine(x.clone(), -y.clone() - self.a1.clone() * x.clone() - self.a3.clone())
            }
        }
    }

    pub fn add(&self, p: &WPoint<K>, q: &WPoint<K>) -> Result<WPoint<K>, CurveError> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &WPoint<K>, q: &WPoint<K>) -> WPoint<K> {
        let (x1, y1, x2, y2) = match (p, q) {
            (WPoint::Infinity, _) => return q.clone(),
            (_, WPoint::Infinity) => return p.clone(),
            (WPoint::Affine(x1, y1), WPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let n = |k: i64| x1.int_like(k);
        // Distinct x-coordinates are detected by invertibility of the
        // difference so that dual numbers over a point behave like points.
        let (slope, icept) = if let Some(dx) = (x2.clone() - x1.clone()).inv() {
            (
                (y2.clone() - y1.clone()) * dx.clone(),
                (y1.clone() * x2.clone() - y2.clone() * x1.clone()) * dx,
            )
        } else {
            let denom = y1.clone() + y2.clone() + a1.clone() * x2.clone() + a3.clone();
            let Some(d) = denom.inv() else {
                return WPoint::Infinity;
            };
            // On the curve y1 + y2 + a1 x + a3 = 2 y1 + a1 x1 + a3 when x1 = x2.
            (
                (n(3) * x1.square() + n(2) * a2.clone() * x1.clone() + a4.clone() - a1.clone() * y1.clone())
                    * d.clone(),
                (-x1.pow_u(3) + a4.clone() * x1.clone() + n(2) * a6.clone() - a3.clone() * y1.clone()) * d,
            )
        };
        let x3 = slope.square() + a1.clone() * slope.clone() - a2.clone() - x1.clone() - x2.clone();
        let y3 = -(slope + a1.clone()) * x3.clone() - icept - a3.clone();
        WPoint::Affine(x3, y3)
    }

    /// `[n] P` by double-and-add; negative `n` uses the inverse.
    pub fn smul(&self, n: i64, p: &WPoint<K>) -> Result<WPoint<K>, CurveError> {
        self.check_point(p)?;
        let mut base = if n < 0 { self.neg_unchecked(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = WPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Smallest `n` in `1..=bound` with `[n] P = O`.
    pub fn order_up_to(&self, p: &WPoint<K>, bound: u32) -> Result<Option<u32>, CurveError> {
        self.check_point(p)?;
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Ok(Some(n));
            }
            acc = self.add_unchecked(&acc, p);
        }
        Ok(None)
    }

    /// Decides whether the tangent line at `p` meets the curve with
    /// multiplicity three, by restricting the cubic to the line
    /// `(x0 + tau, y0 + m tau)` and reading off its coefficients in `tau`.
    pub fn flex_test(&self, p: &WPoint<K>) -> Result<FlexReport<K>, CurveError> {
        let (x0, y0) = match p {
            WPoint::Infinity => return Err(CurveError::PointAtInfinity),
            WPoint::Affine(x, y) => (x, y),
        };
        self.check_point(p)?;
        let n = |k: i64| x0.int_like(k);
        let fy = n(2) * y0.clone() + self.a1.clone() * x0.clone() + self.a3.clone();
        let fx = self.a1.clone() * y0.clone()
            - n(3) * x0.square()
            - n(2) * self.a2.clone() * x0.clone()
            - self.a4.clone();
        let Some(fy_inv) = fy.inv() else {
            return Ok(FlexReport { is_flex: false, reason: FlexReason::VerticalTangent, restricted: vec![] });
        };
        let m = -fx * fy_inv;
        // Univariate polynomials in tau, lowest degree first.
        let xl = vec![x0.clone(), n(1)];
        let yl = vec![y0.clone(), m];
        let c = |k: &K| vec![k.clone()];
        let terms = [
            upoly_mul(&yl, &yl),
            upoly_mul(&upoly_mul(&c(&self.a1), &xl), &yl),
            upoly_mul(&c(&self.a3), &yl),
            upoly_neg(&upoly_mul(&upoly_mul(&xl, &xl), &xl)),
            upoly_neg(&upoly_mul(&c(&self.a2), &upoly_mul(&xl, &xl))),
            upoly_neg(&upoly_mul(&c(&self.a4), &xl)),
            upoly_neg(&c(&self.a6)),
        ];
        let mut restricted = vec![x0.zero_like(); 4];
        for t in terms {
            for (i, v) in t.into_iter().enumerate() {
                restricted[i] = restricted[i].clone() + v;
            }
        }
        let vanish = restricted.iter().take_while(|v| v.is_zero_elem()).count();
        let (is_flex, reason) = if vanish >= 3 {
            (true, FlexReason::TripleContact)
        } else {
            (false, FlexReason::SimpleTangency)
        };
        Ok(FlexReport { is_flex, reason, restricted })
    }

    pub fn is_flex(&self, p: &WPoint<K>) -> Result<bool, CurveError> {
        Ok(self.flex_test(p)?.is_flex)
    }

    /// Moves a point of exact order three to `(0, 0)` with horizontal
    /// tangent, producing `y^2 + A1 xy + A3 y = x^3`. Lambda is fixed to 1.
    pub fn gamma1_normalize(&self, p: &WPoint<K>) -> Result<Normalized<K>, CurveError> {
        let (x0, y0) = match p {
            WPoint::Infinity => return Err(CurveError::WrongOrder("1".into())),
            WPoint::Affine(x, y) => (x.clone(), y.clone()),
        };
        if self.discriminant().is_zero_elem() {
            return Err(CurveError::Singular);
        }
        if !self.smul(3, p)?.is_infinity() {
            let order = match self.order_up_to(p, 12)? {
                Some(n) => n.to_string(),
                None => "greater than 12 or infinite".to_string(),
            };
            return Err(CurveError::WrongOrder(order));
        }
        let one = x0.one_like();
        let zero = x0.zero_like();
        let shift = WTransform::new(one.clone(), x0, zero.clone(), y0);
        let c1 = self.transform(&shift)?;
        // Tangent at the origin is a3 y = a4 x.
        let Some(a3_inv) = c1.a3.inv() else {
            return Err(CurveError::VerticalTangent);
        };
        let s = c1.a4.clone() * a3_inv;
        let shear = WTransform::new(one, zero.clone(), s, zero);
        let c2 = c1.transform(&shear)?;
        if !(c2.a2.is_zero_elem() && c2.a4.is_zero_elem() && c2.a6.is_zero_elem()) {
            return Err(CurveError::Normalization(format!("residual curve {c2} is not of the form (A1,0,A3,0,0)")));
        }
        Ok(Normalized { a1: c2.a1, a3: c2.a3, transform: shift.compose(&shear)? })
    }
}

fn upoly_mul<K: Ring>(a: &[K], b: &[K]) -> Vec<K> {
    let mut out = vec![a[0].zero_like(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn upoly_neg<K: Ring>(a: &[K]) -> Vec<K> {
    a.iter().map(|x| -x.clone()).collect()
}

impl<K: fmt::Display> fmt::Display for WCurve<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}, {}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

impl<K: fmt::Display> fmt::Debug for WCurve<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WCurve{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WPoint<K> {
    Infinity,
    Affine(K, K),
}

impl<K> WPoint<K> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, WPoint::Infinity)
    }
}

impl<K: fmt::Display> fmt::Display for WPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WPoint::Infinity => write!(f, "O"),
            WPoint::Affine(x, y) => write!(f, "[{x}, {y}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlexReason {
    TripleContact,
    SimpleTangency,
    VerticalTangent,
}

impl FlexReason {
    pub fn code(self) -> &'static str {
        match self {
            FlexReason::TripleContact => "triple-contact",
            FlexReason::SimpleTangency => "simple-tangency",
            FlexReason::VerticalTangent => "vertical-tangent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlexReport<K> {
    pub is_flex: bool,
    pub reason: FlexReason,
    /// Coefficients of the curve equation restricted to the tangent line,
    /// constant term first. Empty when the tangent is vertical.
    pub restricted: Vec<K>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Normalized<K> {
    pub a1: K,
    pub a3: K,
    pub transform: WTransform<K>,
}

/// The substitution `x = lambda^-2 x' + r`, `y = lambda^-3 y' + lambda^-1 s x' + t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WTransform<K> {
    pub lambda: K,
    pub r: K,
    pub s: K,
    pub t: K,
}

impl<K: Ring> WTransform<K> {
    pub fn new(lambda: K, r: K, s: K, t: K) -> Self {
        WTransform { lambda, r, s, t }
    }

    pub fn identity_like(k: &K) -> Self {
        WTransform { lambda: k.one_like(), r: k.zero_like(), s: k.zero_like(), t: k.zero_like() }
    }

    pub fn is_identity(&self) -> bool {
        self.lambda == self.lambda.one_like()
            && self.r.is_zero_elem()
            && self.s.is_zero_elem()
            && self.t.is_zero_elem()
    }

    /// Image of a point of the source curve in the new coordinates.
    pub fn map_point(&self, p: &WPoint<K>) -> WPoint<K> {
        match p {
            WPoint::Infinity => WPoint::Infinity,
            WPoint::Affine(x, y) => {
                let l = self.lambda.clone();
                let s = l.clone() * self.s.clone();
                let dx = x.clone() - self.r.clone();
                let yn = l.pow_u(3) * (y.clone() - s * dx.clone() - self.t.clone());
                WPoint::Affine(l.square() * dx, yn)
            }
        }
    }
}

impl<K: Field> WTransform<K> {
    /// Textbook parameters `(u, r, s_int, t)`.
    fn to_internal(&self) -> Result<(K, K, K, K), CurveError> {
        let u = self.lambda.inv().ok_or(CurveError::ZeroLambda)?;
        Ok((u, self.r.clone(), self.lambda.clone() * self.s.clone(), self.t.clone()))
    }

    fn from_internal(u: K, r: K, s: K, t: K) -> Result<Self, CurveError> {
        let lambda = u.inv().ok_or(CurveError::ZeroLambda)?;
        let s = s * u;
        Ok(WTransform { lambda, r, s, t })
    }

    /// The transform equal to applying `self` and then `other`, so that
    /// `C.transform(a.compose(b)) = C.transform(a).transform(b)`.
    pub fn compose(&self, other: &Self) -> Result<Self, CurveError> {
        let (u1, r1, s1, t1) = self.to_internal()?;
        let (u2, r2, s2, t2) = other.to_internal()?;
        let u = u1.clone() * u2;
        let r = u1.square() * r2.clone() + r1;
        let s = s1.clone() + u1.clone() * s2;
        let t = t1 + u1.pow_u(3) * t2 + u1.square() * s1 * r2;
        Self::from_internal(u, r, s, t)
    }

    pub fn inverse(&self) -> Result<Self, CurveError> {
        let (u, r, s, t) = self.to_internal()?;
        let ui = u.inv().ok_or(CurveError::ZeroLambda)?;
        let r2 = -r.clone() * ui.square();
        let s2 = -s.clone() * ui.clone();
        let t2 = (r * s - t) * ui.pow_u(3);
        Self::from_internal(ui, r2, s2, t2)
    }
}

/// Small rational constructors for tests and examples.
pub fn qcurve(a: [i64; 5]) -> WCurve<Rational> {
    let q = |n: i64| Rational::from_integer(n.into());
    WCurve::new(q(a[0]), q(a[1]), q(a[2]), q(a[3]), q(a[4]))
}

pub fn qpoint(x: i64, y: i64) -> WPoint<Rational> {
    WPoint::Affine(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
}
