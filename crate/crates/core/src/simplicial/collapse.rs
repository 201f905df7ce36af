use super::degeneracy::Degeneracy;
use super::set::{Label, NormalSimplex, SimplicialSet};
use crate::error::{Error, Result};

/// `X / A`: collapses the sub-simplicial set `A` (nondegenerate simplices
/// listed per dimension) onto the basepoint.
///
/// `A` must contain the basepoint and be closed under faces. Surviving
/// simplices keep their relative order and labels.
pub fn collapse(x: &SimplicialSet, sub: &[Vec<usize>]) -> Result<SimplicialSet> {
    let mut member: Vec<Vec<bool>> = (0..=x.dim()).map(|d| vec![false; x.count(d)]).collect();
    for (d, list) in sub.iter().enumerate() {
        for &j in list {
            if d > x.dim() || j >= x.count(d) {
                return Err(Error::NotSubcomplex(format!("simplex {j} in dimension {d} does not exist")));
            }
            member[d][j] = true;
        }
    }
    if !member[0][x.basepoint()] {
        return Err(Error::NotSubcomplex("basepoint not in the collapsed subset".into()));
    }
    for d in 1..=x.dim() {
        for j in 0..x.count(d) {
            if member[d][j] {
                if let Some(f) = x.faces_of(d, j).iter().find(|f| !member[f.base_dim()][f.index()]) {
                    return Err(Error::NotSubcomplex(format!(
                        "face e{}_{} of simplex {j} in dimension {d} is missing",
                        f.base_dim(),
                        f.index()
                    )));
                }
            }
        }
    }

    let bp = x.basepoint();
    let mut new_index: Vec<Vec<u32>> = Vec::with_capacity(x.dim() + 1);
    let mut labels: Vec<Vec<Label>> = Vec::with_capacity(x.dim() + 1);
    let mut new_bp = 0;
    for d in 0..=x.dim() {
        let mut idx = vec![u32::MAX; x.count(d)];
        let mut l = Vec::new();
        for j in 0..x.count(d) {
            let keep = !member[d][j] || (d == 0 && j == bp);
            if keep {
                if d == 0 && j == bp {
                    new_bp = l.len();
                }
                idx[j] = l.len() as u32;
                l.push(x.label(d, j).clone());
            }
        }
        new_index.push(idx);
        labels.push(l);
    }
    let mut faces: Vec<Vec<NormalSimplex>> = vec![Vec::new(); x.dim() + 1];
    for d in 1..=x.dim() {
        for j in 0..x.count(d) {
            if member[d][j] {
                continue;
            }
            for f in x.faces_of(d, j) {
                let g = if member[f.base_dim()][f.index()] {
                    NormalSimplex {
                        base_dim: 0,
                        index: new_bp as u32,
                        degeneracy: Degeneracy::constant(d - 1),
                    }
                } else {
                    NormalSimplex { index: new_index[f.base_dim()][f.index()], ..*f }
                };
                faces[d].push(g);
            }
        }
    }
    SimplicialSet::new(format!("{}/A", x.name()), new_bp, labels, faces, x.skeleton())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::models::{load_complex, sphere_model, ComplexDocument};

    #[test]
    fn collapse_basepoint_is_identity() {
        let x = sphere_model(2).unwrap();
        let c = collapse(&x, &[vec![x.basepoint()]]).unwrap();
        assert_eq!(c.with_name(x.name().to_string()), x);
    }

    #[test]
    fn interval_mod_endpoints() {
        let doc = ComplexDocument { name: "I".into(), basepoint: 0, top_simplices: vec![vec![0, 1]] };
        let i = load_complex(&doc).unwrap();
        let c = collapse(&i, &[vec![0, 1]]).unwrap();
        assert_eq!(c.counts(), vec![1, 1]);
        c.check_identities().unwrap();
    }

    #[test]
    fn non_subcomplex_rejected() {
        let x = sphere_model(1).unwrap();
        // edge without its second endpoint
        let err = collapse(&x, &[vec![0], vec![0]]).unwrap_err();
        assert!(matches!(err, Error::NotSubcomplex(_)));
        let err = collapse(&x, &[vec![1]]).unwrap_err();
        assert!(matches!(err, Error::NotSubcomplex(_)));
    }
}
