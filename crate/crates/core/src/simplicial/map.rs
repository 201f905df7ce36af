use std::sync::Arc;

use super::degeneracy::Degeneracy;
use super::set::{Label, NormalSimplex, SimplicialSet};
use crate::error::{Error, Result};

/// A pointed simplicial map, given on nondegenerate simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    /// `images[d][j]`: image of the `j`-th nondegenerate `d`-simplex.
    images: Vec<Vec<NormalSimplex>>,
}

impl SimplicialMap {
    /// Builds and validates a map.
    pub fn new(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        images: Vec<Vec<NormalSimplex>>,
    ) -> Result<Self> {
        let map = Self { source, target, images };
        map.check()?;
        Ok(map)
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let images = (0..=x.dim())
            .map(|d| (0..x.count(d)).map(|j| NormalSimplex::nondegenerate(d, j)).collect())
            .collect();
        Self { source: x.clone(), target: x, images }
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn image_of(&self, d: usize, j: usize) -> NormalSimplex {
        self.images[d][j]
    }

    /// Image of an arbitrary simplex of the source.
    pub fn apply(&self, s: NormalSimplex) -> NormalSimplex {
        let f = self.images[s.base_dim()][s.index()];
        NormalSimplex { degeneracy: f.degeneracy.after(s.degeneracy), ..f }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if !Arc::ptr_eq(&self.target, &other.source) && *self.target != *other.source {
            return Err(Error::Mismatch("composing maps with different middle sets".into()));
        }
        let images = self
            .images
            .iter()
            .map(|row| row.iter().map(|&s| other.apply(s)).collect())
            .collect();
        Ok(SimplicialMap { source: self.source.clone(), target: other.target.clone(), images })
    }

    /// Checks shape, basepoint preservation and compatibility with faces.
    /// Degeneracies commute by construction of [`SimplicialMap::apply`].
    pub fn check(&self) -> Result<()> {
        let src = &self.source;
        let tgt = &self.target;
        let fail = |m: String| Err(Error::Invariant(format!("map {} -> {}: {m}", src.name(), tgt.name())));
        if self.images.len() != src.dim() + 1 {
            return fail("image table has wrong number of dimensions".into());
        }
        for d in 0..=src.dim() {
            if self.images[d].len() != src.count(d) {
                return fail(format!("image table in dimension {d} has wrong length"));
            }
            for (j, f) in self.images[d].iter().enumerate() {
                if f.dim() != d || f.base_dim() > tgt.dim() || f.index() >= tgt.count(f.base_dim()) {
                    return fail(format!("image of simplex {j} in dimension {d} is malformed"));
                }
                if f.degeneracy.target_dim() != f.base_dim() {
                    return fail(format!("image of simplex {j} in dimension {d} is not normalized"));
                }
            }
        }
        let bp = self.images[0][src.basepoint()];
        if bp.index() != tgt.basepoint() {
            return fail("basepoint not preserved".into());
        }
        for d in 1..=src.dim() {
            for j in 0..src.count(d) {
                let x = NormalSimplex::nondegenerate(d, j);
                let fx = self.images[d][j];
                for i in 0..=d {
                    if self.apply(src.face(x, i)) != tgt.face(fx, i) {
                        return fail(format!("face {i} of simplex {j} in dimension {d}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Nondegenerate simplices of the target hit by nondegenerate images,
    /// per dimension, sorted.
    pub fn nondegenerate_image(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.target.dim() + 1];
        for row in &self.images {
            for f in row {
                if !f.is_degenerate() {
                    out[f.base_dim()].push(f.index());
                }
            }
        }
        for v in &mut out {
            v.sort_unstable();
            v.dedup();
        }
        out
    }

    pub fn images(&self) -> &[Vec<NormalSimplex>] {
        &self.images
    }
}

fn tuple_components(l: &Label) -> Result<&[NormalSimplex]> {
    match l {
        Label::Tuple(t) => Ok(t),
        _ => Err(Error::Mismatch("expected a symmetric power".into())),
    }
}

/// The map `Sym^n X -> Sym^{n+k} X` inserting `k` extra copies of the
/// basepoint of `X`. `sym_n` and `sym_nk` must both come from `sym_power`
/// on the same `X`.
pub fn insert_basepoints(
    sym_n: Arc<SimplicialSet>,
    sym_nk: Arc<SimplicialSet>,
    k: usize,
) -> Result<SimplicialMap> {
    let base = tuple_components(sym_nk.label(0, sym_nk.basepoint()))?;
    let n_src = tuple_components(sym_n.label(0, 0))?.len();
    if base.len() != n_src + k {
        return Err(Error::Mismatch(format!(
            "cannot insert {k} basepoints into Sym^{n_src} to reach Sym^{}",
            base.len()
        )));
    }
    let Some(&x0) = base.first() else {
        return Ok(SimplicialMap::identity(sym_n));
    };
    if sym_n.dim() > sym_nk.dim() {
        return Err(Error::Mismatch("target skeleton is lower than the source".into()));
    }
    let mut images = Vec::with_capacity(sym_n.dim() + 1);
    for d in 0..=sym_n.dim() {
        let idx = sym_nk.label_index(d);
        let extra = NormalSimplex { degeneracy: Degeneracy::constant(d), ..x0 };
        let mut row = Vec::with_capacity(sym_n.count(d));
        for l in sym_n.labels(d) {
            let mut t = tuple_components(l)?.to_vec();
            t.extend(std::iter::repeat_n(extra, k));
            t.sort_unstable();
            let j = idx
                .get(&Label::Tuple(t))
                .ok_or_else(|| Error::Mismatch("basepoint insertion leaves the target".into()))?;
            row.push(NormalSimplex::nondegenerate(d, *j));
        }
        images.push(row);
    }
    SimplicialMap::new(sym_n, sym_nk, images)
}

/// The stabilization map `α_n: Sym^n X -> Sym^{n+1} X`.
pub fn stabilization_map(sym_n: Arc<SimplicialSet>, sym_n1: Arc<SimplicialSet>) -> Result<SimplicialMap> {
    insert_basepoints(sym_n, sym_n1, 1)
}
