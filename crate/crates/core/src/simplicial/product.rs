//! Products, powers and symmetric powers.
//!
//! A nondegenerate `m`-simplex of `X_1 × ⋯ × X_n` is a tuple of
//! `m`-simplices `(σ_1^* x_1, …, σ_n^* x_n)` whose degeneracies share no
//! common collapsed position; the binary case enumerates the usual shuffle
//! pairs. Orbits of the permutation action on `X^n` are represented by sorted
//! tuples, which are the lexicographically least members of their orbits.

use std::collections::HashMap;
use std::sync::Arc;

use super::action::GroupAction;
use super::degeneracy::{Degeneracy, MAX_DIM};
use super::map::SimplicialMap;
use super::set::{Label, NormalSimplex, SimplicialSet};
use crate::error::{Error, Result};

pub const DEFAULT_SIMPLEX_BUDGET: usize = 200_000;

/// Limits on explosive constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Cap on the number of nondegenerate simplices of any constructed set.
    pub max_simplices: usize,
    /// Build only the skeleton up to this dimension.
    pub max_dim: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_simplices: DEFAULT_SIMPLEX_BUDGET, max_dim: None }
    }
}

impl Budget {
    pub fn with_max_dim(self, max_dim: usize) -> Self {
        Self { max_dim: Some(max_dim), ..self }
    }
}

/// All `m`-simplices (degenerate or not) of `x`, sorted.
fn simplices_of_dim(x: &SimplicialSet, m: usize) -> Vec<NormalSimplex> {
    let mut out = Vec::new();
    for d in 0..=m.min(x.dim()) {
        if x.count(d) == 0 {
            continue;
        }
        let masks: Vec<u32> = (0u32..(1 << m)).filter(|s| s.count_ones() as usize == d).collect();
        for j in 0..x.count(d) {
            for &s in &masks {
                out.push(NormalSimplex {
                    base_dim: d as u32,
                    index: j as u32,
                    degeneracy: Degeneracy::from_steps(m, s),
                });
            }
        }
    }
    out.sort_unstable();
    out
}

fn full_mask(m: usize) -> u32 {
    if m == 0 {
        0
    } else {
        u32::MAX >> (32 - m)
    }
}

struct Enumerator<'a> {
    items: &'a [Vec<NormalSimplex>],
    symmetric: bool,
    full: u32,
    limit: usize,
    already: usize,
    out: Vec<Vec<NormalSimplex>>,
    current: Vec<NormalSimplex>,
}

impl Enumerator<'_> {
    fn run(&mut self, pos: usize, start: usize, mask: u32) -> Result<()> {
        if pos == self.items.len() {
            if mask == self.full {
                self.out.push(self.current.clone());
                if self.already + self.out.len() > self.limit {
                    return Err(Error::BudgetExceeded {
                        limit: self.limit,
                        reached: self.already + self.out.len(),
                    });
                }
            }
            return Ok(());
        }
        let list = &self.items[pos];
        let from = if self.symmetric { start } else { 0 };
        for k in from..list.len() {
            let c = list[k];
            self.current.push(c);
            let r = self.run(pos + 1, k, mask | c.degeneracy.steps());
            self.current.pop();
            r?;
        }
        Ok(())
    }
}

/// Product of `factors`; with `symmetric` all factors must be the same set
/// and tuples are taken up to permutation.
fn build_tuples(
    name: String,
    factors: &[&SimplicialSet],
    symmetric: bool,
    budget: Budget,
) -> Result<SimplicialSet> {
    let natural_top: usize = factors.iter().map(|f| f.dim()).sum();
    let factor_skeleton = factors.iter().filter_map(|f| f.skeleton()).min();
    let mut top = natural_top;
    let mut skeleton = None;
    for cap in [budget.max_dim, factor_skeleton].into_iter().flatten() {
        if cap < top {
            top = cap;
            skeleton = Some(cap);
        }
    }
    if top > MAX_DIM {
        return Err(Error::InvalidInput(format!("product dimension {top} exceeds {MAX_DIM}")));
    }

    let mut labels: Vec<Vec<Label>> = Vec::with_capacity(top + 1);
    let mut faces: Vec<Vec<NormalSimplex>> = Vec::with_capacity(top + 1);
    let mut index: Vec<HashMap<Vec<NormalSimplex>, u32>> = Vec::with_capacity(top + 1);
    let mut total = 0usize;

    for m in 0..=top {
        let items: Vec<Vec<NormalSimplex>> =
            factors.iter().map(|f| simplices_of_dim(f, m)).collect();
        let mut en = Enumerator {
            items: &items,
            symmetric,
            full: full_mask(m),
            limit: budget.max_simplices,
            already: total,
            out: Vec::new(),
            current: Vec::with_capacity(factors.len()),
        };
        en.run(0, 0, 0)?;
        let tuples = en.out;
        total += tuples.len();

        let mut face_table = Vec::with_capacity(if m == 0 { 0 } else { tuples.len() * (m + 1) });
        if m > 0 {
            for t in &tuples {
                for i in 0..=m {
                    face_table.push(tuple_face(factors, symmetric, t, i, &index)?);
                }
            }
        }
        index.push(tuples.iter().enumerate().map(|(j, t)| (t.clone(), j as u32)).collect());
        labels.push(tuples.into_iter().map(Label::Tuple).collect());
        faces.push(face_table);
    }

    let base: Vec<NormalSimplex> =
        factors.iter().map(|f| NormalSimplex::nondegenerate(0, f.basepoint())).collect();
    let bp = index[0][&base] as usize;
    Ok(SimplicialSet::from_parts(name, bp, labels, faces, skeleton))
}

fn tuple_face(
    factors: &[&SimplicialSet],
    symmetric: bool,
    tuple: &[NormalSimplex],
    i: usize,
    index: &[HashMap<Vec<NormalSimplex>, u32>],
) -> Result<NormalSimplex> {
    let m = tuple[0].dim();
    let mut comps: Vec<NormalSimplex> =
        tuple.iter().zip(factors).map(|(c, f)| f.face(*c, i)).collect();
    let union = comps.iter().fold(0u32, |u, c| u | c.degeneracy.steps());
    let collapse = Degeneracy::from_steps(m - 1, union);
    for c in &mut comps {
        c.degeneracy = c.degeneracy.factor_through(collapse).expect("union covers every step");
    }
    if symmetric {
        comps.sort_unstable();
    }
    let e = collapse.target_dim();
    let j = *index[e]
        .get(&comps)
        .ok_or_else(|| Error::Invariant("face of a product simplex not found".into()))?;
    Ok(NormalSimplex { base_dim: e as u32, index: j, degeneracy: collapse })
}

/// The categorical product `X × Y`.
pub fn product(x: &SimplicialSet, y: &SimplicialSet, budget: Budget) -> Result<SimplicialSet> {
    build_tuples(format!("{}x{}", x.name(), y.name()), &[x, y], false, budget)
}

/// `X^n` with the permutation action of `S_n` on the factors.
pub fn power(x: &SimplicialSet, n: usize, budget: Budget) -> Result<(SimplicialSet, GroupAction)> {
    if n == 0 {
        return Err(Error::InvalidInput("power requires n >= 1".into()));
    }
    let factors = vec![x; n];
    let p = build_tuples(format!("{}^{n}", x.name()), &factors, false, budget)?;
    let action = GroupAction::permuting_factors(&p, n)?;
    Ok((p, action))
}

/// `Sym^n X = X^n / S_n`, built directly from sorted tuples. `Sym^0 X` is a
/// point.
pub fn sym_power(x: &SimplicialSet, n: usize, budget: Budget) -> Result<SimplicialSet> {
    let factors = vec![x; n];
    build_tuples(format!("Sym{n}({})", x.name()), &factors, true, budget)
}

/// The quotient projection `q_n: X^n -> Sym^n X` sending a tuple to its
/// sorted rearrangement.
pub fn sym_projection(power: Arc<SimplicialSet>, sym: Arc<SimplicialSet>) -> Result<SimplicialMap> {
    let mut images = Vec::with_capacity(power.dim() + 1);
    for d in 0..=power.dim() {
        let idx = sym.label_index(d);
        let mut row = Vec::with_capacity(power.count(d));
        for l in power.labels(d) {
            let Label::Tuple(t) = l else {
                return Err(Error::Mismatch("source is not a power".into()));
            };
            let mut s = t.clone();
            s.sort_unstable();
            let j = idx
                .get(&Label::Tuple(s))
                .ok_or_else(|| Error::Mismatch("tuple missing from symmetric power".into()))?;
            row.push(NormalSimplex::nondegenerate(d, *j));
        }
        images.push(row);
    }
    SimplicialMap::new(power, sym, images)
}
