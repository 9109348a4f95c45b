//! The homotopy table read off from E-infinity, and the oracle it is
//! compared against.
//!
//! The oracle encodes the answer as an exact sequence: a torsion block
//! `F2[Delta^±2]{nu, nu^2, x, eta x, kbar, x^2, nu x^2}`, a free part
//! `bo[Delta^±]{1, a1a3} + bsp[Delta^±]{2 a3^2, 2 a1a3 a3^2}` and a
//! cokernel `Delta F2[Delta^±2]`. The homotopy of `bo` and `bsp` is taken
//! as known: `bo = (Z, Z/2, Z/2, 0, Z, 0, 0, 0)` and
//! `bsp = (Z, 0, 0, 0, Z, Z/2, Z/2, 0)`, repeating with period 8.

use serde::Serialize;

use super::chart::{d7_low, kernel_of, ChartPage, Window};
use super::local::einf_dim_high;
use super::pres::{d3, F2Elem};

/// `(name, filtration, stem)` of the torsion block; each repeats every 48 stems.
pub const TORSION_BLOCK: [(&str, i64, i64); 7] = [
    ("nu", 3, 3),
    ("nu^2", 6, 6),
    ("x", 1, 17),
    ("eta*x", 2, 18),
    ("kbar", 4, 20),
    ("x^2", 2, 34),
    ("nu*x^2", 5, 37),
];

/// Stems of the module generators of the free part, with their type.
const FREE_GENERATORS: [(Periodic, i64); 4] = [(Periodic::Bo, 0), (Periodic::Bo, 8), (Periodic::Bsp, 12), (Periodic::Bsp, 20)];

#[derive(Clone, Copy)]
enum Periodic {
    Bo,
    Bsp,
}

/// What each of `bo_k`, `bsp_k` contributes: `Z`, `Z` generated by twice
/// the E2 class, `Z/2` on line 1, `Z/2` on line 2, or nothing.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Piece {
    Z,
    TwiceZ,
    Line1,
    Line2,
    Zero,
}

fn piece(p: Periodic, k: i64) -> Piece {
    use Piece::*;
    let bo = [Z, Line1, Line2, Zero, TwiceZ, Zero, Zero, Zero];
    let bsp = [TwiceZ, Zero, Zero, Zero, Z, Line1, Line2, Zero];
    let r = k.rem_euclid(8) as usize;
    match p {
        Periodic::Bo => bo[r],
        Periodic::Bsp => bsp[r],
    }
}

/// Classes gained per extra power of `Delta^-1` on the lines 0-2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Growth {
    pub rank: usize,
    pub index2: usize,
    pub line1: usize,
    pub line2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    /// Dimensions on lines `3..=s_max`.
    pub high: Vec<usize>,
    /// Classes on lines 1 and 2 that survive `a1 -> 0` (`x` and `x^2` families).
    pub model_low: [usize; 2],
    /// Z-classes of the 0-line that are only present as twice their E2 class
    /// because `d7` leaves them (`Delta^odd`).
    pub cokernel: usize,
    pub growth: Growth,
    pub names: Vec<String>,
}

pub fn oracle(stem: i64, s_max: i64) -> Expected {
    let mut high = vec![0; (s_max - 2).max(0) as usize];
    let mut model_low = [0; 2];
    let mut names = Vec::new();
    for (name, s, base) in TORSION_BLOCK {
        if (stem - base).rem_euclid(48) != 0 {
            continue;
        }
        names.push(format!("{name}*Delta^{}", 2 * (stem - base) / 48));
        match s {
            1 if name == "x" => model_low[0] += 1,
            2 if name == "x^2" => model_low[1] += 1,
            s if s >= 3 && s <= s_max => high[(s - 3) as usize] += 1,
            _ => {}
        }
    }
    let mut growth = Growth::default();
    for (p, g) in FREE_GENERATORS {
        match piece(p, stem - g) {
            Piece::Z => growth.rank += 1,
            Piece::TwiceZ => {
                growth.rank += 1;
                growth.index2 += 1;
            }
            Piece::Line1 => growth.line1 += 1,
            Piece::Line2 => growth.line2 += 1,
            Piece::Zero => {}
        }
    }
    let cokernel = usize::from((stem - 24).rem_euclid(48) == 0);
    Expected { high, model_low, cokernel, growth, names }
}

/// E-infinity on a line `s <= 2` at stem `n`, over the window's Delta range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LowLine {
    pub dim: usize,
    pub index2: usize,
    pub model: usize,
    pub cokernel: usize,
}

pub fn low_line(window: &Window, s: i64, stem: i64) -> LowLine {
    let basis: Vec<F2Elem> = window.monomials(s, stem + s).into_iter().map(F2Elem::monomial).collect();
    if s == 0 {
        let after_d3 = kernel_of(&basis, d3).len();
        let after_d7 = kernel_of(&basis, |b| &d3(b) + &d7_low(b)).len();
        return LowLine { dim: basis.len(), index2: basis.len() - after_d7, model: 0, cokernel: after_d3 - after_d7 };
    }
    let e4 = kernel_of(&basis, d3);
    let einf = kernel_of(&e4, d7_low);
    let model = einf
        .iter()
        .filter(|v| v.terms().any(|m| m.a == 0 && m.b == 0 && m.c == 0))
        .count()
        .min(1);
    LowLine { dim: einf.len(), index2: 0, model, cokernel: 0 }
}

#[derive(Clone, Debug, Serialize)]
pub struct PiRow {
    pub stem: i64,
    pub free_rank: usize,
    pub index2: usize,
    /// F2-dimensions of E-infinity on lines `1..=s_max`; lines 1 and 2 are
    /// counted over the Delta window.
    pub torsion: Vec<usize>,
    pub growth: Growth,
    pub model_low: [usize; 2],
    pub cokernel: usize,
    pub expected: Expected,
    pub mismatches: Vec<String>,
}

impl PiRow {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn pi_row(window: &Window, stem: i64) -> PiRow {
    let lows: Vec<LowLine> = (0..=2).map(|s| low_line(window, s, stem)).collect();
    let inner = Window { d_lo: window.d_lo + 1, ..*window };
    let inner_lows: Vec<LowLine> = (0..=2).map(|s| low_line(&inner, s, stem)).collect();
    let growth = Growth {
        rank: lows[0].dim - inner_lows[0].dim,
        index2: lows[0].index2 - inner_lows[0].index2,
        line1: lows[1].dim - inner_lows[1].dim,
        line2: lows[2].dim - inner_lows[2].dim,
    };
    let high: Vec<usize> = (3..=window.s_max).map(|s| einf_dim_high(s, stem + s)).collect();
    let mut torsion = vec![lows[1].dim, lows[2].dim];
    torsion.extend(&high);
    let expected = oracle(stem, window.s_max);
    let model_low = [lows[1].model, lows[2].model];
    let mut mismatches = Vec::new();
    if high != expected.high {
        mismatches.push(format!("lines >= 3: computed {high:?}, expected {:?}", expected.high));
    }
    if model_low != expected.model_low {
        mismatches.push(format!("x-families on lines 1,2: computed {model_low:?}, expected {:?}", expected.model_low));
    }
    if lows[0].cokernel != expected.cokernel {
        mismatches.push(format!("cokernel: computed {}, expected {}", lows[0].cokernel, expected.cokernel));
    }
    if growth != expected.growth {
        mismatches.push(format!("growth per Delta: computed {growth:?}, expected {:?}", expected.growth));
    }
    PiRow {
        stem,
        free_rank: lows[0].dim,
        index2: lows[0].index2,
        torsion,
        growth,
        model_low,
        cokernel: lows[0].cokernel,
        expected,
        mismatches,
    }
}

pub fn pi_table(window: &Window, stems: std::ops::RangeInclusive<i64>) -> Vec<PiRow> {
    stems.map(|n| pi_row(window, n)).collect()
}

/// Lines `s >= 1` at stems `n` and `n + 48` agree, comparing the Delta
/// windows `[lo, hi]` and `[lo + 2, hi + 2]` on the lines 1 and 2.
pub fn periodic_48(window: &Window, stem: i64) -> bool {
    let shifted = window.shifted(2);
    (1..=2).all(|s| low_line(window, s, stem).dim == low_line(&shifted, s, stem + 48).dim)
        && (3..=window.s_max).all(|s| einf_dim_high(s, stem + s) == einf_dim_high(s, stem + 48 + s))
}

/// Looks the page up as a cross-check of `pi_row`.
pub fn page_dims(page: &ChartPage, stem: i64) -> Vec<usize> {
    (0..=page.window.s_max).map(|s| page.dim(s, stem + s)).collect()
}
