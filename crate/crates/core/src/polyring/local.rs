//! Elements of `Q[a1, a3][1/Delta]` kept in the canonical form
//! `num / (a3^e3 * (a1^3 - 27 a3)^e9)` with neither factor dividing `num`
//! while its exponent is positive.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{a3, disc_cofactor, MultiPoly, PolyError, A1A3};
use crate::exact_arith::Rational;
use crate::ring::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocElem {
    num: MultiPoly,
    e3: u32,
    e9: u32,
}

impl LocElem {
    pub fn new(num: MultiPoly, e3: u32, e9: u32) -> Self {
        assert!(num.vars() == A1A3, "localized elements live over a1, a3");
        let mut x = LocElem { num, e3, e9 };
        x.normalize();
        x
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self::new(p, 0, 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(A1A3, c))
    }

    /// `a3^i (a1^3 - 27 a3)^j` for arbitrary signed exponents.
    pub fn delta_factors(i: i64, j: i64) -> Self {
        let mut num = MultiPoly::one(A1A3);
        if i > 0 {
            num = num * a3().pow(i as u32);
        }
        if j > 0 {
            num = num * disc_cofactor().pow(j as u32);
        }
        Self::new(num, (-i).max(0) as u32, (-j).max(0) as u32)
    }

    /// The discriminant `a3^3 (a1^3 - 27 a3)` raised to `k`.
    pub fn delta_pow(k: i64) -> Self {
        Self::delta_factors(3 * k, k)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.e3 = 0;
            self.e9 = 0;
            return;
        }
        let f3 = a3();
        while self.e3 > 0 {
            match self.num.div_exact(&f3) {
                Some(q) => {
                    self.num = q;
                    self.e3 -= 1;
                }
                None => break,
            }
        }
        let f9 = disc_cofactor();
        while self.e9 > 0 {
            match self.num.div_exact(&f9) {
                Some(q) => {
                    self.num = q;
                    self.e9 -= 1;
                }
                None => break,
            }
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn exponents(&self) -> (u32, u32) {
        (self.e3, self.e9)
    }

    pub fn denominator(&self) -> MultiPoly {
        a3().pow(self.e3) * disc_cofactor().pow(self.e9)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The underlying polynomial when there is no denominator.
    pub fn as_poly(&self) -> Option<&MultiPoly> {
        if self.e3 == 0 && self.e9 == 0 {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Weight, counting `a1` as 1 and `a3` as 3.
    pub fn weight_of(&self) -> Option<i64> {
        self.num.weight_of().map(|w| w - 3 * self.e3 as i64 - 3 * self.e9 as i64)
    }

    /// Splits `num` as `c * a3^i * (a1^3 - 27 a3)^j` if possible.
    fn unit_decomposition(&self) -> Option<(Rational, u32, u32)> {
        let mut p = self.num.clone();
        if p.is_zero() {
            return None;
        }
        let mut i = 0;
        while let Some(q) = p.div_exact(&a3()) {
            p = q;
            i += 1;
        }
        let mut j = 0;
        let f9 = disc_cofactor();
        while let Some(q) = p.div_exact(&f9) {
            p = q;
            j += 1;
        }
        if p.is_constant() {
            Some((p.constant_term(), i, j))
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.unit_decomposition().is_some()
    }

    pub fn try_inv(&self) -> Result<Self, PolyError> {
        let (c, i, j) = self.unit_decomposition().ok_or(PolyError::NotAUnit)?;
        let num = a3().pow(self.e3) * disc_cofactor().pow(self.e9);
        Ok(LocElem::new(num.scale(&c.recip()), i, j))
    }

    pub fn pow_i(&self, k: i64) -> Result<Self, PolyError> {
        let base = if k < 0 { self.try_inv()? } else { self.clone() };
        Ok(base.pow_u(k.unsigned_abs() as u32))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LocElem::new(self.num.scale(c), self.e3, self.e9)
    }
}

impl fmt::Display for LocElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut den = Vec::new();
        match self.e3 {
            0 => {}
            1 => den.push("a3".to_string()),
            e => den.push(format!("a3^{e}")),
        }
        match self.e9 {
            0 => {}
            1 => den.push("(a1^3 - 27*a3)".to_string()),
            e => den.push(format!("(a1^3 - 27*a3)^{e}")),
        }
        if den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, den.join("*"))
        }
    }
}

impl fmt::Debug for LocElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocElem({self})")
    }
}

impl Add for LocElem {
    type Output = LocElem;
    fn add(self, rhs: LocElem) -> LocElem {
        let e3 = self.e3.max(rhs.e3);
        let e9 = self.e9.max(rhs.e9);
        let lift = |x: LocElem| x.num * a3().pow(e3 - x.e3) * disc_cofactor().pow(e9 - x.e9);
        LocElem::new(lift(self) + lift(rhs), e3, e9)
    }
}

impl Neg for LocElem {
    type Output = LocElem;
    fn neg(self) -> LocElem {
        LocElem { num: -self.num, e3: self.e3, e9: self.e9 }
    }
}

impl Sub for LocElem {
    type Output = LocElem;
    fn sub(self, rhs: LocElem) -> LocElem {
        self + (-rhs)
    }
}

impl Mul for LocElem {
    type Output = LocElem;
    fn mul(self, rhs: LocElem) -> LocElem {
        LocElem::new(self.num * rhs.num, self.e3 + rhs.e3, self.e9 + rhs.e9)
    }
}

impl std::ops::Div for LocElem {
    type Output = LocElem;
    /// Panics unless `rhs` is a unit.
    fn div(self, rhs: LocElem) -> LocElem {
        self * rhs.try_inv().expect("division by a non-unit")
    }
}

impl Ring for LocElem {
    fn constant_like(&self, c: Rational) -> Self {
        LocElem::constant(c)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Field for LocElem {
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{a1, mono};

    #[test]
    fn discriminant_inverse() {
        let d = LocElem::delta_pow(1);
        assert_eq!(d.as_poly().unwrap(), &(mono(1, 3, 3) - mono(27, 0, 4)));
        let inv = d.try_inv().unwrap();
        assert_eq!(inv.exponents(), (3, 1));
        assert_eq!(inv.numerator(), &MultiPoly::one(A1A3));
        assert_eq!(d * inv, LocElem::constant(Rational::from_integer(1.into())));
    }

    #[test]
    fn normalization_cancels_factors() {
        let x = LocElem::new(a3() * a1(), 2, 0);
        assert_eq!(x.exponents(), (1, 0));
        assert_eq!(x.numerator(), &a1());
        assert!(!LocElem::from_poly(a1()).is_unit());
        assert!(LocElem::from_poly(a1()).try_inv().is_err());
    }

    #[test]
    fn sums_with_denominators() {
        let x = LocElem::delta_factors(-1, 0);
        let y = LocElem::delta_factors(0, -1);
        let s = x + y;
        assert_eq!(s.exponents(), (1, 1));
        assert_eq!(s.numerator(), &(disc_cofactor() + a3()));
    }
}
