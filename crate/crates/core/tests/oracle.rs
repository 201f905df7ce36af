//! Pipeline results against the vertex-sequence oracle in `common`.

mod common;

use common::{corpus_document, simplicial_chains, sym2_chains, BIG_PRIME};
use symstab::homology::Homology;
use symstab::simplicial::{sphere_model, sym_power, Budget};

fn tetra_boundary() -> Vec<Vec<u32>> {
    vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
}

fn summary(h: &Homology) -> Vec<(usize, Vec<u64>)> {
    h.groups().iter().map(|g| (g.betti, g.torsion.iter().map(|t| t.try_into().unwrap()).collect())).collect()
}

#[test]
fn oracle_boundaries_square_to_zero() {
    assert!(sym2_chains(&tetra_boundary()).check());
    assert!(sym2_chains(&corpus_document("rp2").top_simplices).check());
    assert!(simplicial_chains(&corpus_document("torus").top_simplices).check());
}

#[test]
fn sym2_sphere_counts_and_homology() {
    let oracle = sym2_chains(&tetra_boundary());
    // frozen from the oracle
    assert_eq!(oracle.ranks, vec![10, 45, 110, 120, 48]);
    for p in [2, 3, BIG_PRIME] {
        assert_eq!(oracle.betti_mod(p), vec![1, 0, 1, 0, 1], "p = {p}");
    }
    let s = sym_power(&sphere_model(2).unwrap(), 2, Budget::default()).unwrap();
    assert_eq!(s.counts(), oracle.ranks);
    let h = Homology::of_set(&s).unwrap();
    assert_eq!(summary(&h), vec![(1, vec![]), (0, vec![]), (1, vec![]), (0, vec![]), (1, vec![])]);
}

#[test]
fn torus_homology() {
    let doc = corpus_document("torus");
    assert_eq!(doc.top_simplices.len(), 14);
    let oracle = simplicial_chains(&doc.top_simplices);
    assert_eq!(oracle.ranks, vec![7, 21, 14]);
    for p in [2, 3, BIG_PRIME] {
        assert_eq!(oracle.betti_mod(p), vec![1, 2, 1]);
    }
    let h = Homology::of_set(&common::corpus("torus")).unwrap();
    assert_eq!(summary(&h), vec![(1, vec![]), (2, vec![]), (1, vec![])]);
}

#[test]
fn rp2_homology() {
    let doc = corpus_document("rp2");
    let oracle = simplicial_chains(&doc.top_simplices);
    assert_eq!(oracle.ranks, vec![6, 15, 10]);
    // rationally acyclic above degree 0, one class mod 2 in degrees 1 and 2
    assert_eq!(oracle.betti_mod(BIG_PRIME), vec![1, 0, 0]);
    assert_eq!(oracle.betti_mod(3), vec![1, 0, 0]);
    assert_eq!(oracle.betti_mod(2), vec![1, 1, 1]);
    let h = Homology::of_set(&common::corpus("rp2")).unwrap();
    assert_eq!(summary(&h), vec![(1, vec![]), (0, vec![2]), (0, vec![])]);
}

#[test]
fn sym2_torus_h1() {
    let oracle = sym2_chains(&corpus_document("torus").top_simplices);
    // free of rank 2 with no 2- or 3-torsion: H_1 ⊗ F_p has dimension 2 for each p
    for p in [2, 3, BIG_PRIME] {
        assert_eq!(oracle.betti_mod(p)[..2], [1, 2], "p = {p}");
    }
    let s = sym_power(&common::corpus("torus"), 2, Budget::default().with_max_dim(2)).unwrap();
    assert_eq!(s.counts()[..3], oracle.ranks[..3]);
    let h1 = Homology::of_set(&s).unwrap().group(1).unwrap();
    assert_eq!((h1.betti, h1.torsion.len()), (2, 0));
}

#[test]
fn sym2_rp2_h1() {
    let oracle = sym2_chains(&corpus_document("rp2").top_simplices);
    assert_eq!(oracle.betti_mod(BIG_PRIME)[..2], [1, 0]);
    assert_eq!(oracle.betti_mod(3)[..2], [1, 0]);
    // H_1 ⊗ F_2 = F_2 and H_1 ⊗ Q = 0, so H_1 has a single cyclic 2-primary factor
    assert_eq!(oracle.betti_mod(2)[..2], [1, 1]);
    let s = sym_power(&common::corpus("rp2"), 2, Budget::default().with_max_dim(2)).unwrap();
    assert_eq!(s.counts()[..3], oracle.ranks[..3]);
    let h1 = Homology::of_set(&s).unwrap().group(1).unwrap();
    assert_eq!(h1.betti, 0);
    assert_eq!(h1.torsion, vec![2.into()]);
}
