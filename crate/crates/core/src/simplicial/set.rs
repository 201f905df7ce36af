use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::degeneracy::Degeneracy;
use crate::error::{Error, Result};

/// A simplex in normal form: the degeneracy `degeneracy` applied to the
/// nondegenerate simplex `index` of dimension `base_dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalSimplex {
    pub base_dim: u32,
    pub index: u32,
    pub degeneracy: Degeneracy,
}

impl NormalSimplex {
    pub fn nondegenerate(dim: usize, index: usize) -> Self {
        Self { base_dim: dim as u32, index: index as u32, degeneracy: Degeneracy::identity(dim) }
    }

    pub fn new(degeneracy: Degeneracy, index: usize) -> Self {
        Self { base_dim: degeneracy.target_dim() as u32, index: index as u32, degeneracy }
    }

    /// Dimension of the (possibly degenerate) simplex.
    pub fn dim(&self) -> usize {
        self.degeneracy.source_dim()
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim as usize
    }

    pub fn index(&self) -> usize {
        self.index as usize
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracy.is_identity()
    }
}

impl fmt::Display for NormalSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e{}_{}", self.degeneracy, self.base_dim, self.index)
    }
}

/// Identity key of a nondegenerate simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Point,
    /// Simplex of a simplicial complex, as its sorted vertex list.
    Vertices(Vec<u32>),
    /// Simplex of a product: one component simplex per factor (sorted for
    /// symmetric powers).
    Tuple(Vec<NormalSimplex>),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Point => write!(f, "*"),
            Label::Vertices(v) => {
                let parts: Vec<String> = v.iter().map(u32::to_string).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Label::Tuple(c) => {
                let parts: Vec<String> = c.iter().map(NormalSimplex::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// A finite pointed simplicial set stored by its nondegenerate simplices.
///
/// `faces[d]` is flattened: the faces of the `j`-th nondegenerate
/// `d`-simplex occupy `faces[d][j * (d + 1)..(j + 1) * (d + 1)]`.
/// When `skeleton` is `Some(top)` the set is only the `top`-skeleton of a
/// larger construction, so homology is meaningful only below `top`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSet {
    name: String,
    basepoint: u32,
    labels: Vec<Vec<Label>>,
    faces: Vec<Vec<NormalSimplex>>,
    skeleton: Option<usize>,
}

impl SimplicialSet {
    /// Assembles a simplicial set and checks its structural invariants.
    pub fn new(
        name: impl Into<String>,
        basepoint: usize,
        labels: Vec<Vec<Label>>,
        faces: Vec<Vec<NormalSimplex>>,
        skeleton: Option<usize>,
    ) -> Result<Self> {
        let set = Self::from_parts(name, basepoint, labels, faces, skeleton);
        set.check_shape()?;
        Ok(set)
    }

    pub(crate) fn from_parts(
        name: impl Into<String>,
        basepoint: usize,
        mut labels: Vec<Vec<Label>>,
        mut faces: Vec<Vec<NormalSimplex>>,
        skeleton: Option<usize>,
    ) -> Self {
        while labels.len() > 1 && labels.last().is_some_and(Vec::is_empty) {
            labels.pop();
        }
        faces.truncate(labels.len());
        Self { name: name.into(), basepoint: basepoint as u32, labels, faces, skeleton }
    }

    /// The one-point simplicial set.
    pub fn point() -> Self {
        Self::from_parts("pt", 0, vec![vec![Label::Point]], vec![vec![]], None)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint as usize
    }

    /// Highest dimension with a nondegenerate simplex.
    pub fn dim(&self) -> usize {
        self.labels.len() - 1
    }

    /// `Some(top)` if this is a truncated skeleton.
    pub fn skeleton(&self) -> Option<usize> {
        self.skeleton
    }

    /// Degrees `d` for which `H_d` is determined by the stored simplices.
    pub fn homology_valid(&self, d: usize) -> bool {
        self.skeleton.is_none_or(|top| d < top)
    }

    pub fn count(&self, d: usize) -> usize {
        self.labels.get(d).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn label(&self, d: usize, j: usize) -> &Label {
        &self.labels[d][j]
    }

    pub fn labels(&self, d: usize) -> &[Label] {
        self.labels.get(d).map_or(&[], Vec::as_slice)
    }

    /// Map from label to index in dimension `d`.
    pub fn label_index(&self, d: usize) -> HashMap<&Label, usize> {
        self.labels(d).iter().enumerate().map(|(j, l)| (l, j)).collect()
    }

    /// The stored faces of the nondegenerate simplex `(d, j)`.
    pub fn faces_of(&self, d: usize, j: usize) -> &[NormalSimplex] {
        if d == 0 {
            return &[];
        }
        &self.faces[d][j * (d + 1)..(j + 1) * (d + 1)]
    }

    /// `d_i` of an arbitrary simplex in normal form.
    pub fn face(&self, s: NormalSimplex, i: usize) -> NormalSimplex {
        let (sigma, missed) = s.degeneracy.after_coface(i);
        match missed {
            None => NormalSimplex { degeneracy: sigma, ..s },
            Some(v) => {
                let f = self.faces_of(s.base_dim(), s.index())[v];
                NormalSimplex { degeneracy: f.degeneracy.after(sigma), ..f }
            }
        }
    }

    /// `s_j` of an arbitrary simplex in normal form.
    pub fn degeneracy(&self, s: NormalSimplex, j: usize) -> NormalSimplex {
        NormalSimplex { degeneracy: s.degeneracy.degenerate(j), ..s }
    }

    /// Alternating count of nondegenerate simplices.
    pub fn euler_by_counts(&self) -> i64 {
        self.labels
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    fn check_shape(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Invariant(format!("{}: {m}", self.name)));
        if self.labels.is_empty() || self.labels[0].is_empty() {
            return bad("no vertices".into());
        }
        if self.basepoint() >= self.count(0) {
            return bad(format!("basepoint {} is not a vertex", self.basepoint));
        }
        if self.faces.len() != self.labels.len() {
            return bad("face table has wrong number of dimensions".into());
        }
        for d in 1..self.labels.len() {
            if self.faces[d].len() != self.count(d) * (d + 1) {
                return bad(format!("face table in dimension {d} has wrong length"));
            }
            for (k, f) in self.faces[d].iter().enumerate() {
                let ok = f.dim() == d - 1
                    && f.degeneracy.target_dim() == f.base_dim()
                    && f.index() < self.count(f.base_dim());
                if !ok {
                    return bad(format!("face {} of simplex {} in dim {d} not normalized", k % (d + 1), k / (d + 1)));
                }
            }
        }
        Ok(())
    }

    /// Machine-checks the simplicial identities on every nondegenerate simplex:
    /// `d_i d_j = d_{j-1} d_i` for `i < j`, and the face/degeneracy relations
    /// on every first degeneracy.
    pub fn check_identities(&self) -> Result<()> {
        self.check_shape()?;
        for d in 1..self.labels.len() {
            for j in 0..self.count(d) {
                let x = NormalSimplex::nondegenerate(d, j);
                self.check_identities_at(x)?;
                for k in 0..=d {
                    self.check_identities_at(self.degeneracy(x, k))?;
                }
            }
        }
        Ok(())
    }

    fn check_identities_at(&self, x: NormalSimplex) -> Result<()> {
        let m = x.dim();
        let fail = |what: &str| Err(Error::Invariant(format!("{}: {what} fails at {x}", self.name)));
        if m >= 2 {
            for j in 1..=m {
                for i in 0..j {
                    if self.face(self.face(x, j), i) != self.face(self.face(x, i), j - 1) {
                        return fail("d_i d_j = d_{j-1} d_i");
                    }
                }
            }
        }
        for j in 0..=m {
            let sx = self.degeneracy(x, j);
            for i in 0..=m + 1 {
                let lhs = self.face(sx, i);
                let rhs = if i < j {
                    self.degeneracy(self.face(x, i), j - 1)
                } else if i == j || i == j + 1 {
                    x
                } else {
                    self.degeneracy(self.face(x, i - 1), j)
                };
                if lhs != rhs {
                    return fail("d_i s_j relation");
                }
            }
            for i in 0..=j {
                let lhs = self.degeneracy(self.degeneracy(x, j), i);
                let rhs = self.degeneracy(self.degeneracy(x, i), j + 1);
                if lhs != rhs {
                    return fail("s_i s_j = s_{j+1} s_i");
                }
            }
        }
        Ok(())
    }

    /// Applies a permutation of indices in each dimension: simplex `j` of
    /// dimension `d` becomes simplex `perms[d][j]`. Labels travel with the
    /// simplices.
    pub fn relabel(&self, perms: &[Vec<usize>]) -> Result<Self> {
        if perms.len() != self.labels.len()
            || perms.iter().enumerate().any(|(d, p)| p.len() != self.count(d))
        {
            return Err(Error::Mismatch("relabeling permutation shape".into()));
        }
        let mut labels: Vec<Vec<Label>> =
            self.labels.iter().map(|l| vec![Label::Point; l.len()]).collect();
        let mut faces: Vec<Vec<NormalSimplex>> = self.faces.iter().cloned().collect();
        for d in 0..self.labels.len() {
            for j in 0..self.count(d) {
                let t = perms[d][j];
                labels[d][t] = self.labels[d][j].clone();
                for (i, f) in self.faces_of(d, j).iter().enumerate() {
                    let mut g = *f;
                    g.index = perms[f.base_dim()][f.index()] as u32;
                    faces[d][t * (d + 1) + i] = g;
                }
            }
        }
        let bp = perms[0][self.basepoint()];
        Self::new(self.name.clone(), bp, labels, faces, self.skeleton)
    }

    /// Restricts to the `top`-skeleton.
    pub fn truncate(&self, top: usize) -> Self {
        if top >= self.dim() {
            return self.clone();
        }
        let mut out = self.clone();
        out.labels.truncate(top + 1);
        out.faces.truncate(top + 1);
        out.skeleton = Some(self.skeleton.map_or(top, |s| s.min(top)));
        out
    }
}
