//! Exact integers and rationals, p-adic valuations, Bernoulli numbers and
//! divisor power sums.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("bernoulli index must be even and at least 2, got {0}")]
    BadBernoulliIndex(i64),
    #[error("divisor sums are only defined for n >= 1, got {0}")]
    NonPositiveArgument(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// A p-adic valuation; zero has valuation `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Valuation of a big integer at `p`.
pub fn val_p_int(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a rational. Panics if `p` is not prime; use
/// [`try_val_p`] for a checked version.
pub fn val_p(q: &Rational, p: u64) -> Valuation {
    try_val_p(q, p).expect("val_p called with a non-prime")
}

pub fn try_val_p(q: &Rational, p: u64) -> Result<Valuation, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    Ok(match (val_p_int(q.numer(), p), val_p_int(q.denom(), p)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => Valuation::Infinite,
    })
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli numbers `B_0 ..= B_m` from the recurrence
/// `sum_{k=0}^{j} C(j+1, k) B_k = 0` (so `B_1 = -1/2`).
pub fn bernoulli_table(m: usize) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(m + 1);
    table.push(Rational::one());
    for j in 1..=m {
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            acc += Rational::from_integer(binomial(j as u64 + 1, k as u64)) * b;
        }
        table.push(-acc / int(j as i64 + 1));
    }
    table
}

/// `B_m` for even `m >= 2`.
pub fn bernoulli(m: i64) -> Result<Rational, ArithError> {
    if m < 2 || m % 2 != 0 {
        return Err(ArithError::BadBernoulliIndex(m));
    }
    Ok(bernoulli_table(m as usize).pop().expect("table is non-empty"))
}

/// `sum_{d | n} d^k`.
pub fn sigma_pow(k: u32, n: i64) -> Result<BigInt, ArithError> {
    if n <= 0 {
        return Err(ArithError::NonPositiveArgument(n));
    }
    let mut acc = BigInt::zero();
    let mut d: i64 = 1;
    while d * d <= n {
        if n % d == 0 {
            acc += num_traits::pow(BigInt::from(d), k as usize);
            let e = n / d;
            if e != d {
                acc += num_traits::pow(BigInt::from(e), k as usize);
            }
        }
        d += 1;
    }
    Ok(acc)
}

/// `3^e` as an exact rational, valid for negative `e`.
pub fn pow3(e: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(3), e.unsigned_abs() as usize);
    match e.cmp(&0) {
        Ordering::Less => Rational::new(BigInt::one(), p),
        _ => Rational::from_integer(p),
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Reduction of a 2-integral rational modulo 2. `None` if the denominator is
/// even.
pub fn mod2(q: &Rational) -> Option<bool> {
    if q.denom().is_even() {
        return None;
    }
    Some(q.numer().is_odd())
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(val_p(&int(240), 2), Valuation::Finite(4));
        assert_eq!(val_p(&int(1), 2), Valuation::Finite(0));
        assert_eq!(val_p(&int(0), 2), Valuation::Infinite);
        assert_eq!(val_p(&rat(5, 24), 2), Valuation::Finite(-3));
        assert_eq!(val_p(&rat(5, 24), 3), Valuation::Finite(-1));
        assert!(try_val_p(&int(4), 4).is_err());
    }

    #[test]
    fn valuation_by_repeated_division() {
        for n in 1i64..2000 {
            let mut m = n;
            let mut v = 0;
            while m % 2 == 0 {
                m /= 2;
                v += 1;
            }
            assert_eq!(val_p(&int(n), 2), Valuation::Finite(v));
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), rat(1, 42));
        assert_eq!(bernoulli(12).unwrap(), rat(-691, 2730));
        assert_eq!(-bernoulli(4).unwrap() / int(8), rat(1, 240));
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(0).is_err());
        assert!(bernoulli(-2).is_err());
    }

    #[test]
    fn bernoulli_recurrence_up_to_64() {
        let t = bernoulli_table(64);
        for j in 1..=64usize {
            let s: Rational = (0..=j)
                .map(|k| Rational::from_integer(binomial(j as u64 + 1, k as u64)) * &t[k])
                .sum();
            assert!(s.is_zero(), "recurrence fails at {j}");
        }
        for j in (3..=64).step_by(2) {
            assert!(t[j].is_zero());
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_pow(3, 1).unwrap(), BigInt::from(1));
        assert_eq!(sigma_pow(3, 2).unwrap(), BigInt::from(9));
        assert_eq!(sigma_pow(5, 2).unwrap(), BigInt::from(33));
        assert_eq!(sigma_pow(3, 12).unwrap(), BigInt::from(1 + 8 + 27 + 64 + 216 + 1728));
        assert!(sigma_pow(3, 0).is_err());
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in -5000i64..5000, b in 1i64..5000, c in -5000i64..5000, d in 1i64..5000) {
            let x = rat(a, b);
            let y = rat(c, d);
            prop_assert_eq!(val_p(&(&x * &y), 2), val_p(&x, 2) + val_p(&y, 2));
            let vs = val_p(&(&x + &y), 2);
            let (vx, vy) = (val_p(&x, 2), val_p(&y, 2));
            prop_assert!(vs >= vx.min(vy));
            if vx != vy {
                prop_assert_eq!(vs, vx.min(vy));
            }
        }

        #[test]
        fn sigma_multiplicative(m in 1i64..300, n in 1i64..300, k in 1u32..6) {
            prop_assume!(gcd(m, n) == 1);
            prop_assert_eq!(
                sigma_pow(k, m * n).unwrap(),
                sigma_pow(k, m).unwrap() * sigma_pow(k, n).unwrap()
            );
        }
    }
}
