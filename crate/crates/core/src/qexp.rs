//! Truncated q-expansions, Eisenstein series, and the rational classes
//! `e(alpha_2n)` that detect the image of J.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_arith::{bernoulli, fmt_rational, int, pow3, sigma_pow, ArithError, Rational};
use crate::levelmaps::{delta, Basis, Gamma03Form, LevelOneForm};
use crate::linalg::{solve, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QexpError {
    #[error("weight {0} must be even and at least 4")]
    BadWeight(i64),
    #[error("no combination of the basis matches the series (precision too low?)")]
    Inconsistent,
    #[error("the basis coefficients are not determined by the available precision")]
    Underdetermined,
    #[error("{0} has negative powers of Delta and no q-expansion at this level")]
    NotHolomorphic(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `a_0 + a_1 q + ... + a_N q^N`, known through `q^N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        QSeries { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        QSeries { coeffs: vec![Rational::zero(); n + 1] }
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = c;
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &Rational {
        &self.coeffs[m]
    }

    pub fn truncate(&self, n: usize) -> Self {
        QSeries { coeffs: self.coeffs[..=n.min(self.precision())].to_vec() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QSeries::constant(Rational::one(), self.precision());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Agreement through the common precision.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        let n = self.precision().min(other.precision());
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(m, c)| !c.is_zero() || *m == 0)
            .map(|(m, c)| match m {
                0 => fmt_rational(c),
                1 => format!("{}*q", fmt_rational(c)),
                _ => format!("{}*q^{}", fmt_rational(c), m),
            })
            .collect();
        write!(f, "{} + O(q^{})", parts.join(" + "), self.precision() + 1)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({self})")
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.precision().min(rhs.precision());
        QSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.precision().min(rhs.precision());
        QSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&int(-1))
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.precision().min(rhs.precision());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        QSeries { coeffs: out }
    }
}

fn divisor_series(constant: Rational, scale: i64, k: u32, n: usize) -> QSeries {
    let mut coeffs = vec![constant];
    for m in 1..=n {
        let s = sigma_pow(k, m as i64).expect("m >= 1");
        coeffs.push(Rational::from_integer(s) * int(scale));
    }
    QSeries { coeffs }
}

/// `1 + 240 sum sigma_3(n) q^n`.
pub fn series_c4(n: usize) -> QSeries {
    divisor_series(Rational::one(), 240, 3, n)
}

/// `1 - 504 sum sigma_5(n) q^n`.
pub fn series_c6(n: usize) -> QSeries {
    divisor_series(Rational::one(), -504, 5, n)
}

/// `q prod (1 - q^n)^24`.
pub fn series_delta(n: usize) -> QSeries {
    let mut c = vec![Rational::zero(); n + 1];
    if n >= 1 {
        c[1] = Rational::one();
    }
    for k in 1..=n {
        for _ in 0..24 {
            // multiply by (1 - q^k) in place, from the top down
            for m in (k..=n).rev() {
                let prev = c[m - k].clone();
                c[m] -= prev;
            }
        }
    }
    QSeries { coeffs: c }
}

/// `G_2n = -B_2n / 4n + sum sigma_(2n-1)(m) q^m`.
pub fn eisenstein_g(two_n: i64, n: usize) -> Result<QSeries, QexpError> {
    if two_n < 2 || two_n % 2 != 0 {
        return Err(QexpError::BadWeight(two_n));
    }
    let constant = -bernoulli(two_n)? / int(2 * two_n);
    Ok(divisor_series(constant, 1, (two_n - 1) as u32, n))
}

/// Holomorphic basis `c4^a c6^e Delta^d` (`d >= 0`) of weight `w`.
pub fn holomorphic_basis(w: i64) -> Vec<Basis> {
    let mut out = Vec::new();
    if w < 0 {
        return out;
    }
    for d in 0..=w / 12 {
        for e in 0..=1u8 {
            let rest = w - 12 * d - 6 * e as i64;
            if rest >= 0 && rest % 4 == 0 {
                out.push(((rest / 4) as u32, e, d));
            }
        }
    }
    out
}

/// q-expansion of a holomorphic level-one form.
pub fn series_of(m: &LevelOneForm, n: usize) -> Result<QSeries, QexpError> {
    let (c4, c6, dl) = (series_c4(n), series_c6(n), series_delta(n));
    let mut acc = QSeries::zero(n);
    for (&(a, e, d), c) in m.terms() {
        if d < 0 {
            return Err(QexpError::NotHolomorphic(m.to_string()));
        }
        let mut t = c4.pow(a);
        if e == 1 {
            t = &t * &c6;
        }
        t = &t * &dl.pow(d as u32);
        acc = &acc + &t.scale(c);
    }
    Ok(acc)
}

/// Writes `G_2n` in the basis `c4^a c6^e Delta^d`, solving an
/// over-determined system with ten more equations than unknowns.
pub fn eisenstein_in_c4c6(two_n: i64) -> Result<LevelOneForm, QexpError> {
    if two_n < 4 || two_n % 2 != 0 {
        return Err(QexpError::BadWeight(two_n));
    }
    let basis = holomorphic_basis(two_n);
    let n = basis.len() + 10;
    let target = eisenstein_g(two_n, n)?;
    let cols: Vec<QSeries> = basis
        .iter()
        .map(|b| series_of(&LevelOneForm::monomial(*b, Rational::one()), n))
        .collect::<Result<_, _>>()?;
    let rows: Vec<Vec<Rational>> = (0..=n).map(|m| cols.iter().map(|s| s.coeff(m).clone()).collect()).collect();
    match solve(&rows, target.coeffs()) {
        Solution::Unique(x) => {
            let mut out = LevelOneForm::zero();
            for (b, c) in basis.iter().zip(x) {
                out = out + LevelOneForm::monomial(*b, c);
            }
            Ok(out)
        }
        Solution::Inconsistent => Err(QexpError::Inconsistent),
        Solution::Underdetermined => Err(QexpError::Underdetermined),
    }
}

/// `u_n = 1` for even `n`, `2` for odd `n`.
pub fn u_n(n: i64) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        2
    }
}

/// `(u_n (q* - f*) G_2n, u_n (3^2n - 1) G_2n)`, indexed by the weight `2n`.
pub fn e_alpha(two_n: i64) -> Result<(Gamma03Form, LevelOneForm), QexpError> {
    let g = eisenstein_in_c4c6(two_n)?;
    let u = int(u_n(two_n / 2));
    let first = delta(&g).scale(&u);
    let second = g.scale(&(u * (pow3(two_n) - int(1))));
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_expansion() {
        let d = series_delta(6);
        let want: Vec<Rational> = [0, 1, -24, 252, -1472, 4830, -6048].iter().map(|&x| int(x)).collect();
        assert_eq!(d.coeffs(), &want[..]);
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(holomorphic_basis(4), vec![(1, 0, 0)]);
        assert_eq!(holomorphic_basis(12).len(), 2);
        assert_eq!(holomorphic_basis(2).len(), 0);
    }
}
