//! Chart pages over a finite window of bidegrees.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::f2::{nullspace, BitVec, Echelon};
use super::local::{einf_dim_high, stabilize, Stabilization};
use super::pres::{d3, F2Elem, PresMonomial};
use super::SseqError;

/// Bidegrees `0 <= s <= s_max`, `|t - s| <= stem_bound`, Delta exponents in `d_lo..=d_hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub s_max: i64,
    pub stem_bound: i64,
    pub d_lo: i64,
    pub d_hi: i64,
}

impl Default for Window {
    fn default() -> Self {
        Window { s_max: 12, stem_bound: 100, d_lo: -8, d_hi: 8 }
    }
}

impl Window {
    pub fn new(s_max: i64, stem_bound: i64, d: i64) -> Result<Self, SseqError> {
        if s_max <= 0 || stem_bound <= 0 || d <= 0 {
            return Err(SseqError::BadWindow(format!("{s_max},{stem_bound},{d}")));
        }
        Ok(Window { s_max, stem_bound, d_lo: -d, d_hi: d })
    }

    pub fn shifted(&self, by: i64) -> Self {
        Window { d_lo: self.d_lo + by, d_hi: self.d_hi + by, ..*self }
    }

    /// Basis monomials of `E2^(s,t)` in the window.
    pub fn monomials(&self, s: i64, t: i64) -> Vec<PresMonomial> {
        let mut out = Vec::new();
        if s < 0 || s > self.s_max || (t - s).abs() > self.stem_bound {
            return out;
        }
        for d in self.d_lo..=self.d_hi {
            for b in 0..=1u8 {
                for c in 0..=1u8 {
                    let rest = t - 18 * s - 24 * d - 8 * b as i64 - 12 * c as i64;
                    if rest >= 0 && rest % 4 == 0 {
                        out.push(PresMonomial::new((rest / 4) as u32, b, c, s as u32, d));
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn bidegrees(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for s in 0..=self.s_max {
            for n in -self.stem_bound..=self.stem_bound {
                if !self.monomials(s, n + s).is_empty() {
                    out.push((s, n + s));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Differential {
    pub source: String,
    pub target: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub s: i64,
    pub t: i64,
    /// Basis classes; for the 0-line over Z this is a Z-basis.
    pub basis: Vec<F2Elem>,
    /// Rank of the index-2 sublattice defect on the 0-line.
    pub index2: Option<usize>,
    pub differentials: Vec<(F2Elem, F2Elem)>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct ChartPage {
    pub page: u32,
    pub window: Window,
    pub cells: BTreeMap<(i64, i64), Cell>,
    pub stabilization: Vec<Stabilization>,
}

#[derive(Serialize)]
struct CellView {
    s: i64,
    t: i64,
    dim: usize,
    basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    index2: Option<usize>,
    differentials: Vec<Differential>,
}

#[derive(Serialize)]
struct PageView {
    page: u32,
    cells: Vec<CellView>,
}

impl ChartPage {
    pub fn dim(&self, s: i64, t: i64) -> usize {
        self.cells.get(&(s, t)).map_or(0, Cell::dim)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells = self
            .cells
            .values()
            .filter(|c| c.dim() > 0)
            .map(|c| CellView {
                s: c.s,
                t: c.t,
                dim: c.dim(),
                basis: c.basis.iter().map(|b| b.to_string()).collect(),
                index2: c.index2,
                differentials: c
                    .differentials
                    .iter()
                    .map(|(a, b)| Differential { source: a.to_string(), target: b.terms().map(|m| m.to_string()).collect() })
                    .collect(),
            })
            .collect();
        serde_json::to_value(PageView { page: self.page, cells }).expect("chart serializes")
    }

    /// Stem horizontal, filtration vertical; one symbol per F2-dimension
    /// (`.` empty, digits, `*` for ten or more).
    pub fn ascii(&self, stems: std::ops::RangeInclusive<i64>) -> String {
        let mut out = String::new();
        for s in (0..=self.window.s_max).rev() {
            let _ = write!(out, "{s:>3} |");
            for n in stems.clone() {
                let d = self.dim(s, n + s);
                out.push(match d {
                    0 => '.',
                    1..=9 => char::from_digit(d as u32, 10).expect("digit"),
                    _ => '*',
                });
            }
            out.push('\n');
        }
        let _ = writeln!(out, "    +{}", "-".repeat(stems.clone().count()));
        let _ = writeln!(out, "     stems {}..{}", stems.start(), stems.end());
        out
    }
}

fn coordinates(v: &F2Elem, index: &BTreeMap<PresMonomial, usize>, len: usize) -> BitVec {
    BitVec::from_indices(len, v.terms().map(|m| index[m]))
}

fn index_of(elems: &[F2Elem]) -> BTreeMap<PresMonomial, usize> {
    let mut idx = BTreeMap::new();
    for e in elems {
        for m in e.terms() {
            let n = idx.len();
            idx.entry(*m).or_insert(n);
        }
    }
    idx
}

fn combine(vs: &BitVec, basis: &[F2Elem]) -> F2Elem {
    vs.ones().fold(F2Elem::zero(), |acc, i| &acc + &basis[i])
}

/// Kernel of a linear map on the span of `basis`.
pub(crate) fn kernel_of<F: Fn(&F2Elem) -> F2Elem>(basis: &[F2Elem], f: F) -> Vec<F2Elem> {
    let images: Vec<F2Elem> = basis.iter().map(&f).collect();
    let idx = index_of(&images);
    let cols: Vec<BitVec> = images.iter().map(|im| coordinates(im, &idx, idx.len())).collect();
    nullspace(&cols, idx.len()).iter().map(|v| combine(v, basis)).collect()
}

pub fn build_e2(window: &Window) -> ChartPage {
    let cells = window
        .bidegrees()
        .into_iter()
        .map(|(s, t)| {
            let basis = window.monomials(s, t).into_iter().map(F2Elem::monomial).collect();
            ((s, t), Cell { s, t, basis, index2: None, differentials: Vec::new() })
        })
        .collect();
    ChartPage { page: 2, window: *window, cells, stabilization: Vec::new() }
}

/// The `E3 = E2` page with its `d3` recorded on every basis element.
pub fn with_d3(e2: &ChartPage) -> ChartPage {
    let mut page = e2.clone();
    page.page = 3;
    for cell in page.cells.values_mut() {
        cell.differentials = cell.basis.iter().map(|b| (b.clone(), d3(b))).collect();
    }
    page
}

/// Every basis element `m` of the window with `d3(d3(m)) != 0`.
pub fn d3_squared_failures(page: &ChartPage) -> Vec<String> {
    page.cells
        .values()
        .flat_map(|c| c.basis.iter())
        .filter(|b| !d3(&d3(b)).is_zero())
        .map(|b| b.to_string())
        .collect()
}

/// E4 on the window: exact kernels, and images of the window's own sources.
pub fn apply_d3(e2: &ChartPage) -> Result<ChartPage, SseqError> {
    let bad = d3_squared_failures(e2);
    if !bad.is_empty() {
        return Err(SseqError::DifferentialSquare(bad.join(", ")));
    }
    let mut cells = BTreeMap::new();
    for (&(s, t), cell) in &e2.cells {
        let kernel = kernel_of(&cell.basis, d3);
        let incoming: Vec<F2Elem> = e2.cells.get(&(s - 3, t - 2)).map_or(Vec::new(), |c| c.basis.iter().map(d3).collect());
        let basis = if incoming.is_empty() {
            kernel
        } else {
            // quotient of the kernel by boundaries lying in the window span
            let all: Vec<F2Elem> = incoming.iter().chain(kernel.iter()).cloned().collect();
            let idx = index_of(&all);
            let mut span = Echelon::new();
            let in_window: Vec<F2Elem> = boundaries_in_span(&incoming, &cell.basis);
            for b in &in_window {
                span.insert(coordinates(b, &idx, idx.len()));
            }
            kernel.into_iter().filter(|k| span.insert(coordinates(k, &idx, idx.len()))).collect()
        };
        let index2 = (s == 0).then(|| cell.dim() - kernel_of(&cell.basis, d3).len());
        let basis = if s == 0 { cell.basis.clone() } else { basis };
        cells.insert((s, t), Cell { s, t, basis, index2, differentials: Vec::new() });
    }
    Ok(ChartPage { page: 4, window: e2.window, cells, stabilization: Vec::new() })
}

/// The part of the span of `images` that lies in the span of `basis` monomials.
fn boundaries_in_span(images: &[F2Elem], basis: &[F2Elem]) -> Vec<F2Elem> {
    let inside: std::collections::BTreeSet<PresMonomial> = basis.iter().flat_map(|b| b.terms().copied()).collect();
    let outside_part = |e: &F2Elem| {
        let mut o = F2Elem::zero();
        for m in e.terms().filter(|m| !inside.contains(m)) {
            o.toggle(*m);
        }
        o
    };
    kernel_of(images, outside_part)
}

/// Replaces lines `s >= 3` by the Delta-colimit. Lines 0-2 are infinite
/// dimensional after localization and keep their window description.
pub fn localize_stabilize(e4: &ChartPage, budget: usize) -> Result<ChartPage, SseqError> {
    let mut page = e4.clone();
    // no d5 or d6 can be nonzero for degree reasons, so E5 = E6 = E7
    page.page = 7;
    page.stabilization.clear();
    for (&(s, t), cell) in page.cells.iter_mut() {
        if s < 3 {
            continue;
        }
        let st = stabilize(s, t, budget);
        let Some((dim, _)) = st.stable else {
            return Err(SseqError::NoStabilization { s, t, budget });
        };
        cell.basis = model_basis(s, t, dim);
        page.stabilization.push(st);
    }
    Ok(page)
}

fn model_basis(s: i64, t: i64, dim: usize) -> Vec<F2Elem> {
    if dim == 0 {
        return Vec::new();
    }
    let k = (t - 18 * s).div_euclid(24);
    vec![&F2Elem::gen_x().pow(s as u32) * &F2Elem::delta_pow(k)]
}

/// Image under `a1 -> 0`: the coefficient of `x^s Delta^d` for each `d`.
fn model_part(v: &F2Elem) -> Vec<i64> {
    v.terms().filter(|m| m.a == 0 && m.b == 0 && m.c == 0).map(|m| m.d).collect()
}

/// `d7` on a low-line class through the model map.
pub fn d7_low(v: &F2Elem) -> F2Elem {
    let mut out = F2Elem::zero();
    for d in model_part(v) {
        if d.rem_euclid(2) == 1 {
            let s = v.terms().next().expect("nonzero").e;
            out.toggle(PresMonomial::new(0, 0, 0, s + 7, d - 5));
        }
    }
    out
}

/// E8 = E-infinity: `d7` on the model for lines `s >= 3` and through the model
/// map on lines 0-2.
pub fn e7_model_and_d7(e7: &ChartPage) -> Result<ChartPage, SseqError> {
    let mut page = e7.clone();
    page.page = 8;
    for (&(s, t), cell) in page.cells.iter_mut() {
        if s >= 3 {
            let model = usize::from((t - 18 * s).rem_euclid(24) == 0);
            if cell.dim() != model {
                return Err(SseqError::ModelMismatch { s, t, found: cell.dim(), expected: model });
            }
            cell.basis = model_basis(s, t, einf_dim_high(s, t));
            cell.differentials = Vec::new();
        } else if s >= 1 {
            cell.differentials = cell.basis.iter().map(|b| (b.clone(), d7_low(b))).filter(|(_, d)| !d.is_zero()).collect();
            cell.basis = kernel_of(&cell.basis, d7_low);
        } else {
            let both = |b: &F2Elem| &d3(b) + &d7_low(b);
            cell.index2 = Some(cell.dim() - kernel_of(&cell.basis, both).len());
        }
    }
    Ok(page)
}

/// E4, localized E4 (= E7), and E8 = E-infinity for a window.
pub fn run_pipeline(window: &Window, budget: usize) -> Result<[ChartPage; 4], SseqError> {
    let e2 = build_e2(window);
    let e4 = apply_d3(&e2)?;
    let e7 = localize_stabilize(&e4, budget)?;
    let einf = e7_model_and_d7(&e7)?;
    Ok([with_d3(&e2), e4, e7, einf])
}
