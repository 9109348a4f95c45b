//! Dense linear algebra over F2 on packed bit vectors.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        if self.get(i) != b {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            v.set(i, true);
        }
        for i in other.ones() {
            v.set(self.len + i, true);
        }
        v
    }

    pub fn slice(&self, from: usize, to: usize) -> BitVec {
        BitVec::from_indices(to - from, self.ones().filter(|&i| i >= from && i < to).map(|i| i - from))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

/// A subspace kept in reduced echelon form, keyed by pivot position.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, BitVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn spanned_by<'a>(vs: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut e = Self::new();
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (p, r) in &self.rows {
            if v.get(*p) {
                v.xor_assign(r);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.reduce(&v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for (_, r) in self.rows.iter_mut() {
            if r.get(p) {
                r.xor_assign(&v);
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn basis(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter().map(|(_, r)| r)
    }
}

pub fn rank(vs: &[BitVec]) -> usize {
    Echelon::spanned_by(vs).rank()
}

/// Null space of the map sending the i-th source basis vector to `images[i]`.
pub fn nullspace(images: &[BitVec], target_len: usize) -> Vec<BitVec> {
    let n = images.len();
    let mut e = Echelon::new();
    let mut kernel = Vec::new();
    for (i, im) in images.iter().enumerate() {
        assert_eq!(im.len(), target_len);
        let aug = im.concat(&BitVec::unit(n, i));
        let red = e.reduce(&aug);
        match red.first_one() {
            Some(p) if p < target_len => {
                e.insert(red);
            }
            _ => kernel.push(red.slice(target_len, target_len + n)),
        }
    }
    kernel
}

/// Dimension of `(a + b) / b` for subspaces given by spanning sets.
pub fn quotient_rank(a: &[BitVec], b: &[BitVec]) -> usize {
    let mut e = Echelon::spanned_by(b);
    let base = e.rank();
    for v in a {
        e.insert(v.clone());
    }
    e.rank() - base
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_small_map() {
        // e0 -> 1, e1 -> 1, e2 -> 0
        let im = vec![BitVec::unit(1, 0), BitVec::unit(1, 0), BitVec::zeros(1)];
        let k = nullspace(&im, 1);
        assert_eq!(k.len(), 2);
        for v in &k {
            let mut acc = BitVec::zeros(1);
            for i in v.ones() {
                acc.xor_assign(&im[i]);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn quotient_counts_new_directions() {
        let a = vec![BitVec::from_indices(3, [0, 1]), BitVec::unit(3, 2)];
        let b = vec![BitVec::unit(3, 0)];
        assert_eq!(quotient_rank(&a, &b), 2);
        assert_eq!(quotient_rank(&b, &a), 1);
        assert_eq!(quotient_rank(&a[..1], &a), 0);
    }

    #[test]
    fn wide_vectors() {
        let mut v = BitVec::zeros(130);
        v.flip(129);
        assert_eq!(v.first_one(), Some(129));
        assert_eq!(v.count_ones(), 1);
    }
}
