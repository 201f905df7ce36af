use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::simplicial::{NormalSimplex, SimplicialMap, SimplicialSet};

/// A sparse integer chain: basis index -> nonzero coefficient.
pub type Chain = BTreeMap<usize, BigInt>;

/// Sparse column: `(row, coefficient)` pairs sorted by row, no zeros.
pub type SparseColumn = Vec<(u32, i64)>;

/// Column-sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<SparseColumn>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn apply(&self, chain: &Chain) -> Chain {
        let mut out = Chain::new();
        for (&j, c) in chain {
            for &(i, v) in &self.columns[j] {
                add_to(&mut out, i as usize, &(c * v));
            }
        }
        out
    }

    /// `self · other`, exact in i128 and checked for i64 overflow.
    pub fn compose(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if other.rows != self.cols() {
            return Err(Error::Mismatch("sparse product dimensions".into()));
        }
        let mut columns = Vec::with_capacity(other.cols());
        for col in &other.columns {
            let mut acc: BTreeMap<u32, i128> = BTreeMap::new();
            for &(k, b) in col {
                for &(i, a) in &self.columns[k as usize] {
                    *acc.entry(i).or_default() += a as i128 * b as i128;
                }
            }
            let mut out = Vec::new();
            for (i, v) in acc {
                if v != 0 {
                    let v = i64::try_from(v).map_err(|_| Error::Invariant("coefficient overflow".into()))?;
                    out.push((i, v));
                }
            }
            columns.push(out);
        }
        Ok(SparseMatrix { rows: self.rows, columns })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

pub(crate) fn add_to(chain: &mut Chain, i: usize, v: &BigInt) {
    if v.is_zero() {
        return;
    }
    let entry = chain.entry(i).or_default();
    *entry += v;
    if entry.is_zero() {
        chain.remove(&i);
    }
}

/// Normalized chains: `boundaries[d]` maps `C_d -> C_{d-1}` (`boundaries[0]`
/// is the zero map to the zero group).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub name: String,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
    /// `Some(top)`: chains above `top` are missing, so homology is only
    /// meaningful below `top`.
    pub skeleton: Option<usize>,
}

impl ChainComplex {
    pub fn new(name: impl Into<String>, boundaries: Vec<SparseMatrix>, skeleton: Option<usize>) -> Result<Self> {
        let ranks: Vec<usize> = boundaries.iter().map(SparseMatrix::cols).collect();
        for d in 1..boundaries.len() {
            if boundaries[d].rows != ranks[d - 1] {
                return Err(Error::Mismatch(format!("boundary {d} has {} rows, expected {}", boundaries[d].rows, ranks[d - 1])));
            }
        }
        let c = Self { name: name.into(), ranks, boundaries, skeleton };
        c.check()?;
        Ok(c)
    }

    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn rank(&self, d: usize) -> usize {
        self.ranks.get(d).copied().unwrap_or(0)
    }

    pub fn homology_valid(&self, d: usize) -> bool {
        self.skeleton.is_none_or(|top| d < top)
    }

    /// `∂_d`, or a zero matrix of the right shape outside the stored range.
    pub fn boundary(&self, d: usize) -> SparseMatrix {
        if d == 0 || d >= self.boundaries.len() {
            let rows = if d == 0 { 0 } else { self.rank(d - 1) };
            return SparseMatrix::zeros(rows, self.rank(d));
        }
        self.boundaries[d].clone()
    }

    /// Machine check of `∂_{d-1} ∘ ∂_d = 0`.
    pub fn check(&self) -> Result<()> {
        for d in 2..self.boundaries.len() {
            if !self.boundaries[d - 1].compose(&self.boundaries[d])?.is_zero() {
                return Err(Error::Invariant(format!("{}: boundary squared nonzero in degree {d}", self.name)));
            }
        }
        Ok(())
    }

    /// Alternating sum of chain ranks.
    pub fn euler_by_ranks(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(d, &r)| if d % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }
}

/// One basis element per nondegenerate simplex; the boundary is the
/// alternating sum of faces with degenerate faces dropped.
pub fn normalized_chains(x: &SimplicialSet) -> ChainComplex {
    let mut boundaries = vec![SparseMatrix::zeros(0, x.count(0))];
    for d in 1..=x.dim() {
        let mut columns = Vec::with_capacity(x.count(d));
        for j in 0..x.count(d) {
            let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
            for (i, f) in x.faces_of(d, j).iter().enumerate() {
                if f.is_degenerate() {
                    continue;
                }
                *acc.entry(f.index).or_default() += if i % 2 == 0 { 1 } else { -1 };
            }
            columns.push(acc.into_iter().filter(|&(_, v)| v != 0).collect());
        }
        boundaries.push(SparseMatrix { rows: x.count(d - 1), columns });
    }
    ChainComplex {
        name: x.name().to_string(),
        ranks: x.counts(),
        boundaries,
        skeleton: x.skeleton(),
    }
}

/// Degreewise integer matrices between two chain complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub maps: Vec<SparseMatrix>,
}

impl ChainMap {
    /// `f#`: a nondegenerate simplex goes to its image if that is
    /// nondegenerate, and to zero otherwise.
    pub fn from_simplicial(f: &SimplicialMap) -> Self {
        let maps = f
            .images()
            .iter()
            .enumerate()
            .map(|(d, row)| SparseMatrix {
                rows: f.target().count(d),
                columns: row
                    .iter()
                    .map(|s: &NormalSimplex| if s.is_degenerate() { vec![] } else { vec![(s.index, 1)] })
                    .collect(),
            })
            .collect();
        Self { maps }
    }

    pub fn apply(&self, d: usize, chain: &Chain) -> Chain {
        match self.maps.get(d) {
            Some(m) => m.apply(chain),
            None => Chain::new(),
        }
    }

    /// Machine check of `∂ f = f ∂`.
    pub fn check(&self, source: &ChainComplex, target: &ChainComplex) -> Result<()> {
        for d in 1..self.maps.len() {
            let lhs = target.boundary(d).compose(&self.maps[d])?;
            let rhs = self.maps[d - 1].compose(&source.boundary(d))?;
            if lhs != rhs {
                return Err(Error::Invariant(format!("chain map does not commute in degree {d}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{circle_model, sphere_model};

    #[test]
    fn sphere_chain_ranks() {
        let c = normalized_chains(&sphere_model(2).unwrap());
        assert_eq!(c.ranks, vec![4, 6, 4]);
        c.check().unwrap();
        assert_eq!(c.euler_by_ranks(), 2);
    }

    #[test]
    fn circle_incidence() {
        let c = normalized_chains(&circle_model(3).unwrap());
        assert_eq!(c.boundaries[1].nnz(), 6);
        c.check().unwrap();
    }

    #[test]
    fn identity_chain_map_commutes() {
        let x = std::sync::Arc::new(sphere_model(2).unwrap());
        let f = SimplicialMap::identity(x.clone());
        let c = normalized_chains(&x);
        ChainMap::from_simplicial(&f).check(&c, &c).unwrap();
    }
}
