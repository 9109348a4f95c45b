//! Multivariate gcd over Q by recursion on the main variable with a
//! primitive polynomial remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Exponents, MultiPoly};
use crate::exact_arith::Rational;

/// Monic gcd of `p` and `q` (leading coefficient 1 in lex order).
/// `gcd(0, 0) = 0`.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    assert!(p.vars() == q.vars(), "gcd of polynomials over different variables");
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(p.vars());
    }
    if p.is_monomial() {
        return monomial_gcd(p, q);
    }
    if q.is_monomial() {
        return monomial_gcd(q, p);
    }
    match heuristic_gcd(&p.primitive_part(), &q.primitive_part()) {
        Some(h) => h.monic(),
        None => prs_gcd(p, q),
    }
}

/// Gcd by primitive remainder sequences, recursing on the last variable.
fn prs_gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(p.vars());
    }
    if p.is_monomial() {
        return monomial_gcd(p, q);
    }
    if q.is_monomial() {
        return monomial_gcd(q, p);
    }
    let Some(idx) = main_var(p, q) else {
        return MultiPoly::one(p.vars());
    };
    let in_p = p.degree_in(idx) > 0;
    let in_q = q.degree_in(idx) > 0;
    if !in_p {
        return gcd(p, &content_in(q, idx));
    }
    if !in_q {
        return gcd(&content_in(p, idx), q);
    }
    let cp = content_in(p, idx);
    let cq = content_in(q, idx);
    let cont = gcd(&cp, &cq);
    let mut a = p.div_exact(&cp).expect("content divides");
    let mut b = q.div_exact(&cq).expect("content divides");
    if a.degree_in(idx) < b.degree_in(idx) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b, idx);
        a = b;
        b = if r.is_zero() { r } else { primitive_in(&r, idx) };
        if !b.is_zero() && b.degree_in(idx) == 0 {
            // Coprime as polynomials in the main variable.
            return cont.monic();
        }
    }
    (primitive_in(&a, idx) * cont).monic()
}

pub fn gcd_many<'a, I: IntoIterator<Item = &'a MultiPoly>>(items: I) -> Option<MultiPoly> {
    let mut acc: Option<MultiPoly> = None;
    for p in items {
        acc = Some(match acc {
            None => p.monic(),
            Some(g) => gcd(&g, p),
        });
        if acc.as_ref().map(|g| g.is_constant() && !g.is_zero()).unwrap_or(false) {
            break;
        }
    }
    acc
}

fn main_var(p: &MultiPoly, q: &MultiPoly) -> Option<usize> {
    (0..p.vars().len()).rev().find(|&i| p.degree_in(i) > 0 || q.degree_in(i) > 0)
}

fn monomial_gcd(m: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    let (me, _) = m.leading_term().expect("nonzero");
    let mut e: Exponents = me.clone();
    for (qe, _) in q.terms() {
        for (x, y) in e.iter_mut().zip(qe) {
            *x = (*x).min(*y);
        }
    }
    MultiPoly::monomial(m.vars(), e, Rational::one())
}

/// Gcd of the coefficients of `p` viewed as a polynomial in variable `idx`.
fn content_in(p: &MultiPoly, idx: usize) -> MultiPoly {
    let coeffs = p.coeffs_in(idx);
    gcd_many(coeffs.values()).unwrap_or_else(|| MultiPoly::zero(p.vars()))
}

fn primitive_in(p: &MultiPoly, idx: usize) -> MultiPoly {
    let c = content_in(p, idx);
    p.div_exact(&c).expect("content divides").primitive_part()
}

fn leading_coeff_in(p: &MultiPoly, idx: usize) -> (u32, MultiPoly) {
    let coeffs = p.coeffs_in(idx);
    let (&d, c) = coeffs.iter().next_back().expect("nonzero");
    (d, c.clone())
}

fn shift(p: &MultiPoly, idx: usize, k: u32) -> MultiPoly {
    let mut e = vec![0; p.vars().len()];
    e[idx] = k;
    p.mul_monomial(&e, &Rational::one())
}

fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, idx: usize) -> MultiPoly {
    let (db, lb) = leading_coeff_in(b, idx);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = leading_coeff_in(&r, idx);
        if dr < db {
            break;
        }
        r = &lb * &r - shift(&(&lr * b), idx, dr - db);
    }
    r
}

/// Heuristic gcd of primitive integer polynomials: evaluate the main
/// variable at a large integer, recurse, and lift back by xi-adic
/// expansion. Any candidate is verified by exact division, so a `Some`
/// answer is always the gcd over `Z` (up to sign).
fn heuristic_gcd(f: &MultiPoly, g: &MultiPoly) -> Option<MultiPoly> {
    if f.is_zero() {
        return Some(g.clone());
    }
    if g.is_zero() {
        return Some(f.clone());
    }
    let cf = int_content(f);
    let cg = int_content(g);
    let c = cf.gcd(&cg);
    let vars = f.vars();
    let cpoly = MultiPoly::constant(vars, Rational::from_integer(c.clone()));
    let f = f.scale(&Rational::from_integer(cf).recip());
    let g = g.scale(&Rational::from_integer(cg).recip());
    if f.is_constant() || g.is_constant() {
        return Some(cpoly);
    }
    let idx = main_var(&f, &g)?;
    let fnorm = max_norm(&f);
    let gnorm = max_norm(&g);
    let b: BigInt = BigInt::from(2) * fnorm.clone().min(gnorm.clone()) + 29;
    let lf = lead_abs(&f);
    let lg = lead_abs(&g);
    let lower = BigInt::from(2) * (&fnorm / &lf).min(&gnorm / &lg) + 2;
    let mut xi = b.clone().min(BigInt::from(99) * b.sqrt()).max(lower);
    for _ in 0..6 {
        let ff = eval_at(&f, idx, &xi);
        let gg = eval_at(&g, idx, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            let h = heuristic_gcd(&ff, &gg)?;
            let candidates = [
                Some(h.clone()),
                ff.div_exact(&h),
                gg.div_exact(&h),
            ];
            for (k, cand) in candidates.into_iter().enumerate() {
                let Some(cand) = cand else { continue };
                let lifted = interpolate(&cand, idx, &xi).primitive_part();
                if lifted.is_zero() {
                    continue;
                }
                let h = match k {
                    0 => Some(lifted),
                    1 => f.div_exact(&lifted),
                    _ => g.div_exact(&lifted),
                };
                if let Some(h) = h {
                    if h.is_zero() {
                        continue;
                    }
                    let h = h.primitive_part();
                    if f.div_exact(&h).is_some() && g.div_exact(&h).is_some() {
                        return Some(&h * &cpoly);
                    }
                }
            }
        }
        xi = BigInt::from(73794) * &xi * xi.sqrt().sqrt() / BigInt::from(27011);
    }
    None
}

fn int_content(p: &MultiPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
}

fn max_norm(p: &MultiPoly) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_else(BigInt::zero)
}

fn lead_abs(p: &MultiPoly) -> BigInt {
    p.leading_term().map(|(_, c)| c.numer().abs()).unwrap_or_else(BigInt::one)
}

fn eval_at(p: &MultiPoly, idx: usize, xi: &BigInt) -> MultiPoly {
    let mut out = MultiPoly::zero(p.vars());
    for (e, c) in p.terms() {
        let mut ne = e.clone();
        let k = ne[idx];
        ne[idx] = 0;
        out.add_term(ne, c * Rational::from_integer(num_traits::pow(xi.clone(), k as usize)));
    }
    out
}

/// Inverse of evaluation at `xi` for coefficients in the symmetric range.
fn interpolate(h: &MultiPoly, idx: usize, xi: &BigInt) -> MultiPoly {
    let mut out = MultiPoly::zero(h.vars());
    let mut rest: Vec<(Vec<u32>, BigInt)> = h.terms().map(|(e, c)| (e.clone(), c.numer().clone())).collect();
    let half = xi / BigInt::from(2);
    let mut k = 0u32;
    while !rest.is_empty() {
        let mut next = Vec::new();
        for (e, c) in rest {
            let mut r = c.mod_floor(xi);
            if r > half {
                r -= xi;
            }
            if !r.is_zero() {
                let mut ne = e.clone();
                ne[idx] = k;
                out.add_term(ne, Rational::from_integer(r.clone()));
            }
            let q = (c - r) / xi;
            if !q.is_zero() {
                next.push((e, q));
            }
        }
        rest = next;
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::int;
    use crate::polyring::{a1, a3, c, disc_cofactor, mono, A1A3, A1A3X};
    use proptest::prelude::*;

    #[test]
    fn simple_gcds() {
        let p = a3().pow(3) * disc_cofactor();
        let q = a3() * disc_cofactor().pow(3);
        assert_eq!(gcd(&p, &q), a3() * disc_cofactor().monic());
        assert_eq!(gcd(&a1(), &a3()), c(1));
        assert_eq!(gcd(&(a1() + c(1)), &(a1() - c(1))), c(1));
        assert_eq!(gcd(&mono(6, 2, 1), &mono(4, 1, 3)), mono(1, 1, 1));
    }

    #[test]
    fn gcd_in_three_variables() {
        let x = MultiPoly::var(A1A3X, "x");
        let b1 = MultiPoly::var(A1A3X, "a1");
        let b3 = MultiPoly::var(A1A3X, "a3");
        let f = &x * &b1 + b3.clone();
        let g = &x * &x - b3.clone();
        let h = &x + &b1;
        assert_eq!(gcd(&(&f * &h), &(&g * &h)), h.monic());
        assert_eq!(gcd(&(&f * &g), &(&g * &h)), g.monic());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((0u32..3, 0u32..3, -4i64..5), 1..4)
            .prop_map(|ts| MultiPoly::from_terms(A1A3, ts.into_iter().map(|(i, j, c)| (vec![i, j], int(c)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn gcd_divides_and_contains_common_factor(p in small_poly(), q in small_poly(), h in small_poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero() && !h.is_zero());
            let a = &p * &h;
            let b = &q * &h;
            let g = gcd(&a, &b);
            prop_assert!(a.div_exact(&g).is_some());
            prop_assert!(b.div_exact(&g).is_some());
            prop_assert!(g.div_exact(&h).is_some());
        }
    }
}
