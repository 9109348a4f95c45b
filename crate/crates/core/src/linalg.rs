//! Exact Gaussian elimination over a field.

use crate::ring::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution<K> {
    Unique(Vec<K>),
    Inconsistent,
    Underdetermined,
}

/// Solves `rows * x = rhs`, where `rows` has one entry per unknown. Extra
/// equations must be consistent with the rest.
pub fn solve<K: Field>(rows: &[Vec<K>], rhs: &[K]) -> Solution<K> {
    assert_eq!(rows.len(), rhs.len());
    if rows.is_empty() {
        return Solution::Underdetermined;
    }
    let n = rows[0].len();
    let mut m: Vec<Vec<K>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..m.len()).find(|&i| !m[i][col].is_zero_elem()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].inv().expect("nonzero pivot");
        let prow: Vec<K> = m[pivot_row].iter().map(|v| v.clone() * inv.clone()).collect();
        m[pivot_row] = prow.clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != pivot_row && !row[col].is_zero_elem() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|r| !r[n].is_zero_elem()) {
        return Solution::Inconsistent;
    }
    if pivots.len() < n {
        return Solution::Underdetermined;
    }
    Solution::Unique(m.into_iter().take(n).map(|mut r| r.pop().expect("augmented")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat};

    #[test]
    fn small_systems() {
        let rows = vec![vec![int(1), int(1)], vec![int(1), int(-1)], vec![int(2), int(0)]];
        assert_eq!(solve(&rows, &[int(3), int(1), int(4)]), Solution::Unique(vec![int(2), int(1)]));
        assert_eq!(solve(&rows, &[int(3), int(1), int(5)]), Solution::Inconsistent);
        let rows = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(solve(&rows, &[int(1), int(2)]), Solution::Underdetermined);
        let rows = vec![vec![int(3)]];
        assert_eq!(solve(&rows, &[int(1)]), Solution::Unique(vec![rat(1, 3)]));
    }
}
