use num_integer::Integer;
use num_traits::{One, Zero};

use super::chain::ChainMap;
use super::group::{Homology, HomologyGroup};
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::simplicial::SimplicialMap;

/// `H_d(f)` as an integer matrix from source generators (columns) to target
/// generators (rows); torsion rows are reduced modulo their orders.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub degree: usize,
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    pub matrix: IntMatrix,
    pub is_surjective: bool,
    pub is_injective: bool,
    pub is_isomorphism: bool,
}

impl InducedMap {
    /// Builds the map from its matrix and decides the flags.
    pub fn from_matrix(degree: usize, source: HomologyGroup, target: HomologyGroup, matrix: IntMatrix) -> Self {
        let is_surjective = surjective(&matrix, &target);
        let is_injective = injective(&matrix, &source, &target);
        let is_isomorphism = is_surjective && is_injective && source.isomorphic(&target);
        Self { degree, source, target, matrix, is_surjective, is_injective, is_isomorphism }
    }

    /// `self ∘ inner`, reduced modulo the torsion of the final target.
    pub fn after(&self, inner: &InducedMap) -> InducedMap {
        let m = reduce_rows(self.matrix.mul(&inner.matrix), &self.target);
        InducedMap::from_matrix(self.degree, inner.source.clone(), self.target.clone(), m)
    }
}

fn reduce_rows(mut m: IntMatrix, target: &HomologyGroup) -> IntMatrix {
    for (i, t) in target.torsion.iter().enumerate() {
        for j in 0..m.cols() {
            m[(i, j)] = m[(i, j)].mod_floor(t);
        }
    }
    m
}

fn relations(g: &HomologyGroup) -> IntMatrix {
    let orders = g.relation_orders();
    let mut r = IntMatrix::zeros(orders.len(), orders.len());
    for (i, o) in orders.into_iter().enumerate() {
        r[(i, i)] = o;
    }
    r
}

/// The image together with the target relations generates everything.
fn surjective(m: &IntMatrix, target: &HomologyGroup) -> bool {
    let t = target.num_generators();
    if t == 0 {
        return true;
    }
    let s = smith_normal_form(&m.hcat(&relations(target)));
    s.rank() == t && s.factors.iter().all(One::is_one)
}

/// Every `x` with `M x` in the target relation lattice lies in the source
/// relation lattice.
fn injective(m: &IntMatrix, source: &HomologyGroup, target: &HomologyGroup) -> bool {
    let s_gens = source.num_generators();
    if s_gens == 0 {
        return true;
    }
    let rel_t = relations(target);
    let mut neg = rel_t.clone();
    for i in 0..neg.rows() {
        neg[(i, i)] = -neg[(i, i)].clone();
    }
    let system = if target.num_generators() == 0 { m.clone() } else { m.hcat(&neg) };
    let kernel = if system.rows() == 0 {
        IntMatrix::identity(system.cols())
    } else {
        smith_normal_form(&system).kernel_basis()
    };
    let orders = source.relation_orders();
    (0..kernel.cols()).all(|c| {
        (0..s_gens).all(|i| {
            let x = &kernel[(i, c)];
            if orders[i].is_zero() {
                x.is_zero()
            } else {
                x.is_multiple_of(&orders[i])
            }
        })
    })
}

/// The map induced in degree `d` by a simplicial map, given the homology of
/// its source and target.
pub fn induced_map(f: &SimplicialMap, source: &Homology, target: &Homology, d: usize) -> Result<InducedMap> {
    if source.complex().ranks != f.source().counts() || target.complex().ranks != f.target().counts() {
        return Err(Error::Mismatch("homology does not belong to the map's source and target".into()));
    }
    let src = source.group(d)?;
    let tgt = target.group(d)?;
    let chain_map = ChainMap::from_simplicial(f);
    let mut m = IntMatrix::zeros(tgt.num_generators(), src.num_generators());
    for (j, g) in src.generators.iter().enumerate() {
        let image = chain_map.apply(d, g);
        let coords = target.coordinates(d, &image)?;
        for (i, c) in coords.into_iter().enumerate() {
            m[(i, j)] = c;
        }
    }
    Ok(InducedMap::from_matrix(d, src, tgt, m))
}

/// Computes both homologies and the induced map in degree `d`.
pub fn induced_map_of(f: &SimplicialMap, d: usize) -> Result<InducedMap> {
    let source = Homology::of_set(f.source())?;
    let target = Homology::of_set(f.target())?;
    induced_map(f, &source, &target, d)
}
