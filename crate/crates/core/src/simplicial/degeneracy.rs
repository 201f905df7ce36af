//! Monotone surjections `[m] -> [k]`, i.e. iterated degeneracy operators.
//!
//! A surjection is stored as its source dimension together with a step mask:
//! bit `i` is set iff `σ(i + 1) = σ(i) + 1`. The target dimension is the
//! number of set bits. Dimensions are limited to 31.

use std::fmt;

use serde::{Deserialize, Serialize};

pub const MAX_DIM: usize = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degeneracy {
    source: u8,
    steps: u32,
}

fn low_mask(len: usize) -> u32 {
    if len >= 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    }
}

impl Degeneracy {
    /// The identity of `[m]`.
    pub fn identity(m: usize) -> Self {
        assert!(m <= MAX_DIM, "dimension {m} exceeds {MAX_DIM}");
        Self { source: m as u8, steps: low_mask(m) }
    }

    /// The unique map `[m] -> [0]`.
    pub fn constant(m: usize) -> Self {
        assert!(m <= MAX_DIM, "dimension {m} exceeds {MAX_DIM}");
        Self { source: m as u8, steps: 0 }
    }

    pub fn from_steps(source: usize, steps: u32) -> Self {
        assert!(source <= MAX_DIM);
        assert_eq!(steps & !low_mask(source), 0, "step mask wider than source");
        Self { source: source as u8, steps }
    }

    /// Builds the surjection from its list of values `σ(0), …, σ(m)`.
    pub fn from_values(values: &[usize]) -> Option<Self> {
        let (&first, _) = values.split_first()?;
        if first != 0 || values.len() > MAX_DIM + 1 {
            return None;
        }
        let mut steps = 0u32;
        for (i, w) in values.windows(2).enumerate() {
            match w[1].checked_sub(w[0]) {
                Some(0) => {}
                Some(1) => steps |= 1 << i,
                _ => return None,
            }
        }
        Some(Self { source: (values.len() - 1) as u8, steps })
    }

    pub fn source_dim(self) -> usize {
        self.source as usize
    }

    pub fn target_dim(self) -> usize {
        self.steps.count_ones() as usize
    }

    pub fn steps(self) -> u32 {
        self.steps
    }

    pub fn is_identity(self) -> bool {
        self.steps == low_mask(self.source as usize)
    }

    pub fn eval(self, i: usize) -> usize {
        debug_assert!(i <= self.source_dim());
        (self.steps & low_mask(i)).count_ones() as usize
    }

    pub fn values(self) -> Vec<usize> {
        (0..=self.source_dim()).map(|i| self.eval(i)).collect()
    }

    /// Eilenberg–Zilber word: the strictly decreasing indices `j_1 > … > j_r`
    /// with `σ* = s_{j_1} ⋯ s_{j_r}`.
    pub fn word(self) -> Vec<usize> {
        (0..self.source_dim()).rev().filter(|&i| self.steps & (1 << i) == 0).collect()
    }

    /// Inverse of [`Degeneracy::word`] for a simplex of dimension `base`.
    pub fn from_word(base: usize, word: &[usize]) -> Option<Self> {
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return None;
        }
        let source = base + word.len();
        if source > MAX_DIM || word.iter().any(|&j| j >= source) {
            return None;
        }
        let mut steps = low_mask(source);
        for &j in word {
            steps &= !(1 << j);
        }
        Some(Self { source: source as u8, steps })
    }

    /// `self ∘ inner`: apply `inner` first. Requires `inner.target == self.source`.
    pub fn after(self, inner: Degeneracy) -> Degeneracy {
        debug_assert_eq!(inner.target_dim(), self.source_dim());
        let mut steps = 0u32;
        let mut k = 0;
        for j in 0..inner.source_dim() {
            if inner.steps & (1 << j) != 0 {
                if self.steps & (1 << k) != 0 {
                    steps |= 1 << j;
                }
                k += 1;
            }
        }
        Degeneracy { source: inner.source, steps }
    }

    /// Precomposition with the codegeneracy `σ_j: [m+1] -> [m]`, i.e. the
    /// operator of `s_j` applied to a simplex carrying `self`.
    pub fn degenerate(self, j: usize) -> Degeneracy {
        let m = self.source_dim();
        assert!(j <= m && m < MAX_DIM);
        let low = self.steps & low_mask(j);
        let high = (self.steps >> j) << (j + 1);
        Degeneracy { source: (m + 1) as u8, steps: low | high }
    }

    /// Factors `self ∘ δ_i` (δ_i skips `i`) as `δ_v ∘ σ'`.
    ///
    /// Returns `(σ', Some(v))` when the composite misses `v` in the target,
    /// and `(σ', None)` when it is still surjective.
    pub fn after_coface(self, i: usize) -> (Degeneracy, Option<usize>) {
        let m = self.source_dim();
        assert!(m >= 1 && i <= m);
        let bit = |k: usize| (self.steps >> k) & 1;
        let new_source = (m - 1) as u8;
        if i == 0 {
            let missed = (bit(0) == 1).then_some(0);
            return (Degeneracy { source: new_source, steps: self.steps >> 1 }, missed);
        }
        if i == m {
            let missed = (bit(m - 1) == 1).then_some(self.target_dim());
            let steps = self.steps & low_mask(m - 1);
            return (Degeneracy { source: new_source, steps }, missed);
        }
        // merge steps i-1 and i into a single step at position i-1
        let low = self.steps & low_mask(i - 1);
        let high = (self.steps >> (i + 1)) << i;
        let merged = bit(i - 1) + bit(i);
        let mid = if merged > 0 { 1u32 << (i - 1) } else { 0 };
        let missed = (merged == 2).then(|| self.eval(i));
        (Degeneracy { source: new_source, steps: low | mid | high }, missed)
    }

    /// Removes the positions where `collapse` has no step, keeping only the
    /// bits of `self` at positions where `collapse` steps. Used to factor
    /// `self = τ ∘ collapse` when every step of `self` is a step of `collapse`.
    pub fn factor_through(self, collapse: Degeneracy) -> Option<Degeneracy> {
        debug_assert_eq!(self.source, collapse.source);
        if self.steps & !collapse.steps != 0 {
            return None;
        }
        let mut steps = 0u32;
        let mut k = 0;
        for j in 0..self.source_dim() {
            if collapse.steps & (1 << j) != 0 {
                if self.steps & (1 << j) != 0 {
                    steps |= 1 << k;
                }
                k += 1;
            }
        }
        Some(Degeneracy { source: k as u8, steps })
    }
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return Ok(());
        }
        for j in self.word() {
            write!(f, "s{j}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_surjections(m: usize) -> Vec<Degeneracy> {
        (0..(1u32 << m)).map(|s| Degeneracy::from_steps(m, s)).collect()
    }

    #[test]
    fn values_roundtrip() {
        for m in 0..6 {
            for d in all_surjections(m) {
                assert_eq!(Degeneracy::from_values(&d.values()), Some(d));
                assert_eq!(*d.values().last().unwrap(), d.target_dim());
            }
        }
    }

    #[test]
    fn word_is_strictly_decreasing_and_roundtrips() {
        for m in 0..6 {
            for d in all_surjections(m) {
                let w = d.word();
                assert!(w.windows(2).all(|p| p[0] > p[1]));
                assert_eq!(Degeneracy::from_word(d.target_dim(), &w), Some(d));
            }
        }
        assert!(Degeneracy::from_word(1, &[0, 1]).is_none());
    }

    #[test]
    fn composition_matches_values() {
        for m in 0..5 {
            for inner in all_surjections(m) {
                let k = inner.target_dim();
                for outer in all_surjections(k) {
                    let c = outer.after(inner);
                    for i in 0..=m {
                        assert_eq!(c.eval(i), outer.eval(inner.eval(i)));
                    }
                }
            }
        }
    }

    #[test]
    fn coface_factorisation_matches_values() {
        for m in 1..6 {
            for d in all_surjections(m) {
                for i in 0..=m {
                    let composite: Vec<usize> =
                        (0..m).map(|j| d.eval(if j < i { j } else { j + 1 })).collect();
                    let (s, missed) = d.after_coface(i);
                    for (j, &v) in composite.iter().enumerate() {
                        let w = s.eval(j);
                        let lifted = match missed {
                            Some(miss) if w >= miss => w + 1,
                            _ => w,
                        };
                        assert_eq!(lifted, v);
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_repeats_value() {
        let d = Degeneracy::from_values(&[0, 1, 1, 2]).unwrap();
        let e = d.degenerate(0);
        assert_eq!(e.values(), vec![0, 0, 1, 1, 2]);
        let e = d.degenerate(3);
        assert_eq!(e.values(), vec![0, 1, 1, 2, 2]);
    }

    #[test]
    fn factor_through_collapse() {
        let collapse = Degeneracy::from_values(&[0, 1, 1, 2]).unwrap();
        let s = Degeneracy::from_values(&[0, 0, 0, 1]).unwrap();
        let t = s.factor_through(collapse).unwrap();
        assert_eq!(t.after(collapse), s);
        let bad = Degeneracy::from_values(&[0, 1, 2, 2]).unwrap();
        assert!(bad.factor_through(collapse).is_none());
    }
}
