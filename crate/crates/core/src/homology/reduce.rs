//! Chain-homotopy reduction by cancelling unit entries of the boundary.
//!
//! Cancelling a pair `(a, b)` with `∂a = u·b + r`, `u = ±1`, replaces the
//! complex by one without `a` and `b` and with `∂'y = ∂y - (∂y)_b·u·∂a`.
//! The projection `π` and inclusion `ι` between the original and reduced
//! complexes are recorded event by event so that cycles can be moved in
//! both directions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::chain::{add_to, Chain, ChainComplex, SparseColumn};
use super::matrix::IntMatrix;

#[derive(Clone, Debug)]
struct Cancellation {
    /// Degree of `a`; `b` lives in degree `degree - 1`.
    degree: usize,
    a: u32,
    b: u32,
    unit: i64,
    /// `∂a` at the time of cancellation (contains `b`).
    boundary_a: SparseColumn,
    /// `(y, (∂y)_b)` for every other live `y` at the time of cancellation.
    coboundary_b: Vec<(u32, i64)>,
}

/// A complex reduced by unit cancellations, with the data needed to map
/// chains to and from the original complex.
#[derive(Clone, Debug)]
pub struct Reduction {
    original_ranks: Vec<usize>,
    events: Vec<Cancellation>,
    /// Surviving original cells per degree, increasing.
    survivors: Vec<Vec<u32>>,
    /// Original index -> position among survivors.
    position: Vec<Vec<u32>>,
    /// Reduced boundaries, rows and columns in survivor positions.
    boundaries: Vec<Vec<SparseColumn>>,
}

fn axpy(y: &SparseColumn, c: i64, x: &SparseColumn) -> Option<SparseColumn> {
    // y + c·x
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i]);
            i += 1;
        } else if take_x {
            out.push((x[j].0, c.checked_mul(x[j].1)?));
            j += 1;
        } else {
            let v = y[i].1.checked_add(c.checked_mul(x[j].1)?)?;
            if v != 0 {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn coefficient(col: &SparseColumn, row: u32) -> i64 {
    col.binary_search_by_key(&row, |e| e.0).map_or(0, |k| col[k].1)
}

struct State {
    columns: Vec<Vec<Option<SparseColumn>>>,
    /// `rows[d][i]`: live columns of degree `d` containing row `i`.
    rows: Vec<Vec<BTreeSet<u32>>>,
    events: Vec<Cancellation>,
}

impl State {
    fn new(c: &ChainComplex) -> Self {
        let top = c.ranks.len();
        let mut columns = Vec::with_capacity(top);
        let mut rows = Vec::with_capacity(top);
        for d in 0..top {
            let m = c.boundary(d);
            let mut r = vec![BTreeSet::new(); if d == 0 { 0 } else { c.rank(d - 1) }];
            for (j, col) in m.columns.iter().enumerate() {
                for &(i, _) in col {
                    r[i as usize].insert(j as u32);
                }
            }
            columns.push(m.columns.into_iter().map(Some).collect());
            rows.push(r);
        }
        Self { columns, rows, events: Vec::new() }
    }

    fn try_cancel(&mut self, d: usize, a: u32, b: u32) -> bool {
        let boundary_a = self.columns[d][a as usize].clone().expect("live column");
        let unit = coefficient(&boundary_a, b);
        debug_assert!(unit == 1 || unit == -1);
        let others: Vec<u32> = self.rows[d][b as usize].iter().copied().filter(|&y| y != a).collect();
        let mut updates = Vec::with_capacity(others.len());
        let mut coboundary_b = Vec::with_capacity(others.len());
        for &y in &others {
            let col_y = self.columns[d][y as usize].as_ref().expect("live column");
            let c = coefficient(col_y, b);
            let Some(factor) = c.checked_mul(unit).and_then(i64::checked_neg) else { return false };
            let Some(new) = axpy(col_y, factor, &boundary_a) else { return false };
            coboundary_b.push((y, c));
            updates.push((y, new));
        }
        for (y, new) in updates {
            let old = self.columns[d][y as usize].take().expect("live column");
            for &(r, _) in &old {
                self.rows[d][r as usize].remove(&y);
            }
            for &(r, _) in &new {
                self.rows[d][r as usize].insert(y);
            }
            self.columns[d][y as usize] = Some(new);
        }
        // drop column a
        for &(r, _) in &boundary_a {
            self.rows[d][r as usize].remove(&a);
        }
        self.columns[d][a as usize] = None;
        // drop b as a column of degree d-1
        if let Some(col_b) = self.columns[d - 1][b as usize].take() {
            for &(r, _) in &col_b {
                self.rows[d - 1][r as usize].remove(&b);
            }
        }
        // drop a as a row of degree d+1
        if d + 1 < self.columns.len() {
            let cofaces = std::mem::take(&mut self.rows[d + 1][a as usize]);
            for y in cofaces {
                if let Some(col) = self.columns[d + 1][y as usize].as_mut() {
                    col.retain(|e| e.0 != a);
                }
            }
        }
        debug_assert!(self.rows[d][b as usize].is_empty());
        self.events.push(Cancellation { degree: d, a, b, unit, boundary_a, coboundary_b });
        true
    }

    fn sweep(&mut self) -> usize {
        let mut done = 0;
        for d in 1..self.columns.len() {
            for a in 0..self.columns[d].len() {
                let Some(col) = self.columns[d][a].as_ref() else { continue };
                let pick = col
                    .iter()
                    .filter(|e| e.1 == 1 || e.1 == -1)
                    .min_by_key(|e| (self.rows[d][e.0 as usize].len(), e.0))
                    .map(|e| e.0);
                if let Some(b) = pick {
                    if self.try_cancel(d, a as u32, b) {
                        done += 1;
                    }
                }
            }
        }
        done
    }
}

/// Echelon basis of the lattice spanned by sparse integer columns, built
/// incrementally with extended-gcd row combinations.
pub(crate) fn lattice_basis(rows: usize, columns: &[SparseColumn]) -> IntMatrix {
    // pivot row -> basis vector whose first nonzero entry is at that row
    let mut basis: BTreeMap<usize, Vec<BigInt>> = BTreeMap::new();
    for col in columns {
        if col.is_empty() {
            continue;
        }
        let mut v = vec![BigInt::zero(); rows];
        for &(i, x) in col {
            v[i as usize] = BigInt::from(x);
        }
        let mut p = 0;
        loop {
            while p < rows && v[p].is_zero() {
                p += 1;
            }
            if p == rows {
                break;
            }
            match basis.get_mut(&p) {
                None => {
                    if v[p].is_negative() {
                        v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    basis.insert(p, v);
                    break;
                }
                Some(b) => {
                    let e = b[p].extended_gcd(&v[p]);
                    let (bq, vq) = (&b[p] / &e.gcd, &v[p] / &e.gcd);
                    let new_b: Vec<BigInt> = b.iter().zip(&v).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let new_v: Vec<BigInt> = b.iter().zip(&v).map(|(x, y)| &bq * y - &vq * x).collect();
                    *b = new_b;
                    if b[p].is_negative() {
                        b.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    v = new_v;
                }
            }
        }
    }
    let mut m = IntMatrix::zeros(rows, basis.len());
    for (k, (_, b)) in basis.into_iter().enumerate() {
        for (i, x) in b.into_iter().enumerate() {
            m[(i, k)] = x;
        }
    }
    m
}

impl Reduction {
    pub fn new(c: &ChainComplex) -> Self {
        let mut st = State::new(c);
        while st.sweep() > 0 {}
        let top = c.ranks.len();
        let mut survivors = Vec::with_capacity(top);
        let mut position = Vec::with_capacity(top);
        for d in 0..top {
            let s: Vec<u32> = (0..c.rank(d) as u32)
                .filter(|&j| st.columns[d][j as usize].is_some())
                .collect();
            let mut pos = vec![u32::MAX; c.rank(d)];
            for (k, &j) in s.iter().enumerate() {
                pos[j as usize] = k as u32;
            }
            survivors.push(s);
            position.push(pos);
        }
        let mut boundaries = Vec::with_capacity(top);
        for d in 0..top {
            let cols: Vec<SparseColumn> = survivors[d]
                .iter()
                .map(|&j| {
                    let col = st.columns[d][j as usize].as_ref().expect("survivor");
                    // survivor positions preserve order, so the column stays sorted
                    col.iter().map(|&(i, v)| (position[d - 1][i as usize], v)).collect()
                })
                .collect();
            boundaries.push(cols);
        }
        Self { original_ranks: c.ranks.clone(), events: st.events, survivors, position, boundaries }
    }

    pub fn reduced_rank(&self, d: usize) -> usize {
        self.survivors.get(d).map_or(0, Vec::len)
    }

    pub fn cancellations(&self) -> usize {
        self.events.len()
    }

    /// Reduced `∂_d` as a dense matrix, zero-shaped outside the stored range.
    pub fn boundary(&self, d: usize) -> IntMatrix {
        let rows = if d == 0 { 0 } else { self.reduced_rank(d - 1) };
        let mut m = IntMatrix::zeros(rows, self.reduced_rank(d));
        for (k, col) in self.boundary_columns(d).iter().enumerate() {
            for &(i, v) in col {
                m[(i as usize, k)] = BigInt::from(v);
            }
        }
        m
    }

    /// Reduced `∂_d` as sparse columns.
    pub fn boundary_columns(&self, d: usize) -> &[SparseColumn] {
        match self.boundaries.get(d) {
            Some(cols) if d > 0 => cols,
            _ => &[],
        }
    }

    /// A basis of the lattice spanned by the columns of the reduced `∂_d`,
    /// as the columns of a matrix with at most `reduced_rank(d - 1)` columns.
    pub fn image_basis(&self, d: usize) -> IntMatrix {
        let rows = if d == 0 { 0 } else { self.reduced_rank(d - 1) };
        lattice_basis(rows, self.boundary_columns(d))
    }

    /// `π`: a `d`-chain of the original complex to a dense vector over the
    /// surviving `d`-cells.
    pub fn project(&self, d: usize, chain: &Chain) -> Vec<BigInt> {
        let mut c = chain.clone();
        for ev in &self.events {
            if ev.degree == d + 1 {
                let Some(cb) = c.get(&(ev.b as usize)).cloned() else { continue };
                let factor = -(cb * ev.unit);
                for &(r, v) in &ev.boundary_a {
                    add_to(&mut c, r as usize, &(&factor * v));
                }
                debug_assert!(!c.contains_key(&(ev.b as usize)));
            } else if ev.degree == d {
                c.remove(&(ev.a as usize));
            }
        }
        let mut out = vec![BigInt::default(); self.reduced_rank(d)];
        for (j, v) in c {
            let p = self.position[d][j];
            debug_assert_ne!(p, u32::MAX, "projection left a cancelled cell");
            out[p as usize] = v;
        }
        out
    }

    /// `ι`: a dense vector over surviving `d`-cells to a chain of the
    /// original complex.
    pub fn include(&self, d: usize, v: &[BigInt]) -> Chain {
        let mut c = Chain::new();
        for (k, x) in v.iter().enumerate() {
            add_to(&mut c, self.survivors[d][k] as usize, x);
        }
        for ev in self.events.iter().rev() {
            if ev.degree != d {
                continue;
            }
            let mut coef = BigInt::default();
            for &(y, w) in &ev.coboundary_b {
                if let Some(cy) = c.get(&(y as usize)) {
                    coef += cy * w;
                }
            }
            add_to(&mut c, ev.a as usize, &-(coef * ev.unit));
        }
        c
    }

    pub fn original_rank(&self, d: usize) -> usize {
        self.original_ranks.get(d).copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::chain::normalized_chains;
    use crate::simplicial::{load_complex, sphere_model, ComplexDocument};

    #[test]
    fn lattice_basis_spans_same_lattice() {
        // columns (2, 0), (3, 0), (1, 4), (0, 8) span 1·e1 ⊕ 4·e2
        let cols = vec![vec![(0, 2)], vec![(0, 3)], vec![(0, 1), (1, 4)], vec![(1, 8)]];
        let m = lattice_basis(2, &cols);
        assert_eq!(m.cols(), 2);
        let s = crate::homology::smith_normal_form(&m);
        assert_eq!(s.factors, vec![BigInt::from(1), BigInt::from(4)]);
    }

    #[test]
    fn sphere_reduces_to_minimal() {
        let c = normalized_chains(&sphere_model(3).unwrap());
        let r = Reduction::new(&c);
        let ranks: Vec<usize> = (0..=3).map(|d| r.reduced_rank(d)).collect();
        assert_eq!(ranks, vec![1, 0, 0, 1]);
    }

    #[test]
    fn projection_inclusion_are_chain_maps() {
        let doc = ComplexDocument {
            name: "two triangles".into(),
            basepoint: 0,
            top_simplices: vec![vec![0, 1, 2], vec![1, 2, 3], vec![3, 4], vec![4, 0]],
        };
        let x = load_complex(&doc).unwrap();
        let c = normalized_chains(&x);
        let r = Reduction::new(&c);
        for d in 1..=c.top() {
            // π ∂ = ∂' π on basis chains
            for j in 0..c.rank(d) {
                let mut e = Chain::new();
                e.insert(j, BigInt::from(1));
                let lhs = r.project(d - 1, &c.boundary(d).apply(&e));
                let rhs = r.boundary(d).mul_vec(&r.project(d, &e));
                assert_eq!(lhs, rhs);
            }
            // ∂ ι = ι ∂' on surviving basis vectors
            for k in 0..r.reduced_rank(d) {
                let mut v = vec![BigInt::default(); r.reduced_rank(d)];
                v[k] = BigInt::from(1);
                let lhs = c.boundary(d).apply(&r.include(d, &v));
                let rhs = r.include(d - 1, &r.boundary(d).mul_vec(&v));
                assert_eq!(lhs, rhs);
            }
        }
        // π ι = id
        for d in 0..=c.top() {
            for k in 0..r.reduced_rank(d) {
                let mut v = vec![BigInt::default(); r.reduced_rank(d)];
                v[k] = BigInt::from(1);
                assert_eq!(r.project(d, &r.include(d, &v)), v);
            }
        }
    }
}
