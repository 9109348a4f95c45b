//! Minimal algebraic traits shared by the curve and function-field code.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact_arith::Rational;

/// A commutative ring whose elements know how to build constants of their
/// own kind (polynomials carry a variable set, so a bare `zero()` is not
/// enough).
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn constant_like(&self, c: Rational) -> Self;
    fn is_zero_elem(&self) -> bool;

    fn zero_like(&self) -> Self {
        self.constant_like(Rational::zero())
    }
    fn one_like(&self) -> Self {
        self.constant_like(Rational::one())
    }
    fn int_like(&self, n: i64) -> Self {
        self.constant_like(Rational::from_integer(n.into()))
    }
    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
    fn pow_u(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }
}

pub trait Field: Ring + Div<Output = Self> {
    /// Multiplicative inverse; `None` for zero (or a non-unit, for rings
    /// such as dual numbers that are only partially invertible).
    fn inv(&self) -> Option<Self>;
}

impl Ring for Rational {
    fn constant_like(&self, c: Rational) -> Self {
        c
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Dual numbers `re + eps * e` with `e^2 = 0`, used to differentiate rational
/// maps at a point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dual {
    pub re: Rational,
    pub eps: Rational,
}

impl Dual {
    pub fn new(re: Rational, eps: Rational) -> Self {
        Dual { re, eps }
    }
}

impl Display for Dual {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + {}*e", self.re, self.eps)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual::new(self.re + rhs.re, self.eps + rhs.eps)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual::new(self.re - rhs.re, self.eps - rhs.eps)
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.re, -self.eps)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        let eps = &self.re * &rhs.eps + &self.eps * &rhs.re;
        Dual::new(self.re * rhs.re, eps)
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, rhs: Dual) -> Dual {
        self * rhs.inv().expect("division by a non-unit dual number")
    }
}

impl Ring for Dual {
    fn constant_like(&self, c: Rational) -> Self {
        Dual::new(c, Rational::zero())
    }
    fn is_zero_elem(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl Field for Dual {
    fn inv(&self) -> Option<Self> {
        if self.re.is_zero() {
            return None;
        }
        let r = self.re.recip();
        let eps = -(&self.eps * &r * &r);
        Some(Dual::new(r, eps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::int;

    #[test]
    fn dual_numbers_differentiate() {
        // d/dx (x^3 / (x + 1)) at x = 2 is (3x^2 (x+1) - x^3) / (x+1)^2 = 28/9.
        let x = Dual::new(int(2), int(1));
        let f = x.pow_u(3) / (x.clone() + x.one_like());
        assert_eq!(f.eps, Rational::new(28.into(), 9.into()));
        assert!(Dual::new(int(0), int(1)).inv().is_none());
    }
}
