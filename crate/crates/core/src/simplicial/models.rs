//! Standard models and ingestion of simplicial-complex documents.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::degeneracy::Degeneracy;
use super::set::{Label, NormalSimplex, SimplicialSet};
use crate::error::{Error, Result};

const MAX_COMPLEX_DIM: usize = 16;

/// Text document describing a simplicial complex by its top simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub name: String,
    pub basepoint: u32,
    pub top_simplices: Vec<Vec<u32>>,
}

impl ComplexDocument {
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::malformed(source_name, format!("line {} column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// Reads and builds a complex document from disk.
pub fn load_complex_file(path: &Path) -> Result<SimplicialSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    let doc = ComplexDocument::parse(&text, &path.display().to_string())?;
    load_complex(&doc).map_err(|e| match e {
        Error::Malformed { message, .. } => Error::malformed(path.display().to_string(), message),
        other => other,
    })
}

/// The simplicial set generated by the simplicial complex of a document.
pub fn load_complex(doc: &ComplexDocument) -> Result<SimplicialSet> {
    let bad = |m: String| Error::malformed(doc.name.clone(), m);
    if doc.top_simplices.is_empty() {
        return Err(bad("field `top_simplices`: empty list".into()));
    }
    let mut simplices: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
    for (t, top) in doc.top_simplices.iter().enumerate() {
        let mut verts = top.clone();
        verts.sort_unstable();
        verts.dedup();
        if verts.is_empty() {
            return Err(bad(format!("field `top_simplices[{t}]`: empty simplex")));
        }
        if verts.len() != top.len() {
            return Err(bad(format!("field `top_simplices[{t}]`: repeated vertex")));
        }
        if verts.len() > MAX_COMPLEX_DIM + 1 {
            return Err(bad(format!("field `top_simplices[{t}]`: dimension above {MAX_COMPLEX_DIM}")));
        }
        let k = verts.len();
        for mask in 1u32..(1 << k) {
            let face: Vec<u32> =
                (0..k).filter(|i| mask & (1 << i) != 0).map(|i| verts[i]).collect();
            simplices.insert((face.len() - 1, face));
        }
    }
    if !simplices.contains(&(0, vec![doc.basepoint])) {
        return Err(bad(format!("field `basepoint`: {} is not a vertex", doc.basepoint)));
    }
    let top = simplices.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let mut by_dim: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top + 1];
    for (d, s) in simplices {
        by_dim[d].push(s);
    }
    Ok(from_vertex_lists(&doc.name, doc.basepoint, by_dim))
}

fn from_vertex_lists(name: &str, basepoint: u32, by_dim: Vec<Vec<Vec<u32>>>) -> SimplicialSet {
    let index: Vec<HashMap<&[u32], usize>> = by_dim
        .iter()
        .map(|l| l.iter().enumerate().map(|(j, s)| (s.as_slice(), j)).collect())
        .collect();
    let mut faces: Vec<Vec<NormalSimplex>> = vec![Vec::new(); by_dim.len()];
    for d in 1..by_dim.len() {
        for s in &by_dim[d] {
            for i in 0..=d {
                let mut f = s.clone();
                f.remove(i);
                let j = index[d - 1][f.as_slice()];
                faces[d].push(NormalSimplex { base_dim: (d - 1) as u32, index: j as u32, degeneracy: Degeneracy::identity(d - 1) });
            }
        }
    }
    let bp = index[0][[basepoint].as_slice()];
    let labels = by_dim.into_iter().map(|l| l.into_iter().map(Label::Vertices).collect()).collect();
    SimplicialSet::from_parts(name, bp, labels, faces, None)
}

/// The boundary of the standard `(k+1)`-simplex, a model of `S^k`.
pub fn sphere_model(k: usize) -> Result<SimplicialSet> {
    if k == 0 || k >= MAX_COMPLEX_DIM {
        return Err(Error::InvalidInput(format!("sphere dimension {k} outside 1..{MAX_COMPLEX_DIM}")));
    }
    let n = (k + 2) as u32;
    let tops: Vec<Vec<u32>> = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
    let doc = ComplexDocument { name: format!("S{k}"), basepoint: 0, top_simplices: tops };
    load_complex(&doc)
}

/// The circle triangulated with `v` vertices and `v` edges.
pub fn circle_model(v: usize) -> Result<SimplicialSet> {
    if v < 3 {
        return Err(Error::InvalidInput(format!("circle needs at least 3 vertices, got {v}")));
    }
    let v = v as u32;
    let tops = (0..v).map(|i| vec![i, (i + 1) % v]).collect();
    let doc = ComplexDocument { name: format!("circle{v}"), basepoint: 0, top_simplices: tops };
    load_complex(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_counts() {
        let s1 = sphere_model(1).unwrap();
        assert_eq!(s1.counts(), vec![3, 3]);
        let s2 = sphere_model(2).unwrap();
        assert_eq!(s2.counts(), vec![4, 6, 4]);
        for k in 1..6 {
            let s = sphere_model(k).unwrap();
            assert_eq!(s.counts()[0], k + 2);
            assert_eq!(s.total(), (1 << (k + 2)) - 2);
        }
    }

    #[test]
    fn circle_counts() {
        let c = circle_model(4).unwrap();
        assert_eq!(c.counts(), vec![4, 4]);
        assert_eq!(c.euler_by_counts(), 0);
        assert!(circle_model(2).is_err());
    }

    #[test]
    fn document_diagnostics_name_field() {
        let doc = ComplexDocument { name: "d".into(), basepoint: 9, top_simplices: vec![vec![0, 1]] };
        let err = load_complex(&doc).unwrap_err().to_string();
        assert!(err.contains("basepoint"), "{err}");
        let doc = ComplexDocument { name: "d".into(), basepoint: 0, top_simplices: vec![vec![0, 1], vec![2, 2]] };
        let err = load_complex(&doc).unwrap_err().to_string();
        assert!(err.contains("top_simplices[1]"), "{err}");
        let err = ComplexDocument::parse("{\"name\": \"x\",\n \"basepoint\": \"a\"}", "f.json")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn basepoint_maps_to_vertex_position() {
        let doc = ComplexDocument { name: "e".into(), basepoint: 7, top_simplices: vec![vec![3, 7]] };
        let x = load_complex(&doc).unwrap();
        assert_eq!(x.basepoint(), 1);
    }
}
