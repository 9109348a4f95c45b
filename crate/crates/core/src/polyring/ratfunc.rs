//! The fraction field of a polynomial ring, kept reduced with a monic
//! denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{gcd, MultiPoly, VarSet};
use crate::exact_arith::Rational;
use crate::ring::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Panics if `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert!(num.vars() == den.vars());
        if num.is_zero() {
            let v = num.vars();
            return RatFunc { num, den: MultiPoly::one(v) };
        }
        let g = gcd(&num, &den);
        let mut n = num.div_exact(&g).expect("gcd divides");
        let mut d = den.div_exact(&g).expect("gcd divides");
        let lc = d.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
        let inv = lc.recip();
        n = n.scale(&inv);
        d = d.scale(&inv);
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let v = p.vars();
        RatFunc { num: p, den: MultiPoly::one(v) }
    }

    pub fn constant(vars: VarSet, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn var(vars: VarSet, name: &str) -> Self {
        Self::from_poly(MultiPoly::var(vars, name))
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> VarSet {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        if self.den.is_constant() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Evaluates at a rational point; `None` if the denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn weight_of(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.num.weight_of()? - self.den.weight_of()?)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(self.num + rhs.num, self.den);
        }
        RatFunc::new(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        self * rhs.inv().expect("division by zero")
    }
}

impl Ring for RatFunc {
    fn constant_like(&self, c: Rational) -> Self {
        RatFunc::constant(self.vars(), c)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{a1, a3, A1A3};

    #[test]
    fn cancellation() {
        let x = RatFunc::new(a1() * a3(), a3() * a3());
        assert_eq!(x, RatFunc::new(a1(), a3()));
        let y = x.clone() - x;
        assert!(y.is_zero());
        let s = RatFunc::new(a1(), a3()) * RatFunc::new(a3(), a1());
        assert_eq!(s, RatFunc::constant(A1A3, Rational::from_integer(1.into())));
    }
}
