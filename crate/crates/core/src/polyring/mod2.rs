//! Polynomials over F2.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};

use super::{fmt_monomial, Exponents, VarSet};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mod2Poly {
    vars: VarSet,
    monos: BTreeSet<Exponents>,
}

impl Mod2Poly {
    pub fn zero(vars: VarSet) -> Self {
        Mod2Poly { vars, monos: BTreeSet::new() }
    }

    pub fn one(vars: VarSet) -> Self {
        let mut p = Self::zero(vars);
        p.toggle(vec![0; vars.len()]);
        p
    }

    pub fn monomial(vars: VarSet, e: Exponents) -> Self {
        let mut p = Self::zero(vars);
        p.toggle(e);
        p
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.monos.is_empty()
    }

    /// Adds the monomial `e` (so adding it twice cancels).
    pub fn toggle(&mut self, e: Exponents) {
        debug_assert_eq!(e.len(), self.vars.len());
        if !self.monos.remove(&e) {
            self.monos.insert(e);
        }
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        self.monos.contains(e)
    }

    /// Monomials in ascending lexicographic order.
    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &Exponents> {
        self.monos.iter()
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Mod2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monos.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .monos
            .iter()
            .rev()
            .map(|e| {
                let m = fmt_monomial(self.vars, e);
                if m.is_empty() { "1".to_string() } else { m }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Mod2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mod2Poly({self})")
    }
}

impl<'a> Add<&'a Mod2Poly> for &'a Mod2Poly {
    type Output = Mod2Poly;
    fn add(self, rhs: &Mod2Poly) -> Mod2Poly {
        assert!(self.vars == rhs.vars);
        Mod2Poly { vars: self.vars, monos: self.monos.symmetric_difference(&rhs.monos).cloned().collect() }
    }
}

impl<'a> Mul<&'a Mod2Poly> for &'a Mod2Poly {
    type Output = Mod2Poly;
    fn mul(self, rhs: &Mod2Poly) -> Mod2Poly {
        assert!(self.vars == rhs.vars);
        let mut out = Mod2Poly::zero(self.vars);
        for a in &self.monos {
            for b in &rhs.monos {
                out.toggle(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::A1A3;

    #[test]
    fn frobenius_on_sums() {
        let a = Mod2Poly::monomial(A1A3, vec![1, 0]);
        let b = Mod2Poly::monomial(A1A3, vec![0, 1]);
        let s = &a + &b;
        assert_eq!(&s * &s, &(&a * &a) + &(&b * &b));
        assert!((&s + &s).is_zero());
        assert_eq!(s.to_string(), "a1 + a3");
    }
}
