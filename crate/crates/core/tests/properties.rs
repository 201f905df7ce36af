//! Property tests over random inputs and the corpus.

mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use symstab::homology::{
    euler_characteristic, induced_map, induced_map_of, normalized_chains, smith_normal_form, Homology, HomologyGroup,
    IntMatrix, SparseMatrix,
};
use symstab::simplicial::{
    circle_model, collapse, power, product, quotient, sphere_model, stabilization_map, sym_power, sym_projection,
    Budget, GroupAction, SimplicialMap, SimplicialSet,
};
use symstab::zeta::{
    counts_from_sym_counts, expand_zeta, finite_difference_series, gcd_binomials, gcd_binomials_direct,
    lefschetz_counts, sym_counts_from_counts, valp_prime_power_factorial, EigenvalueData, PointCounts, PowerSeries,
};

const CORPUS: [&str; 5] = ["point", "circle3", "sphere2", "torus", "rp2"];

fn corpus_all() -> Vec<SimplicialSet> {
    CORPUS.iter().map(|n| common::corpus(n)).collect()
}

fn dense(m: &SparseMatrix) -> IntMatrix {
    let mut rows = vec![vec![0i64; m.cols()]; m.rows];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            rows[i as usize][j] = v;
        }
    }
    IntMatrix::from_rows(&rows)
}

fn groups(x: &SimplicialSet) -> Vec<HomologyGroup> {
    Homology::of_set(x).unwrap().groups()
}

fn shape(gs: &[HomologyGroup]) -> Vec<(usize, Vec<BigInt>)> {
    gs.iter().map(|g| (g.betti, g.torsion.clone())).collect()
}

/// Corpus members plus a few constructed sets, each small enough to check
/// exhaustively.
fn constructed() -> Vec<SimplicialSet> {
    let b = Budget::default();
    let c = circle_model(3).unwrap();
    let s = sphere_model(2).unwrap();
    let mut out = corpus_all();
    out.push(product(&c, &c, b).unwrap());
    out.push(product(&c, &s, b).unwrap());
    out.push(power(&c, 3, b).unwrap().0);
    out.push(sym_power(&c, 3, b).unwrap());
    out.push(sym_power(&s, 2, b).unwrap());
    out.push(sym_power(&common::corpus("rp2"), 2, b.with_max_dim(2)).unwrap());
    let s2 = Arc::new(sym_power(&c, 2, b).unwrap());
    let a = stabilization_map(Arc::new(sym_power(&c, 1, b).unwrap()), s2.clone()).unwrap();
    out.push(collapse(&s2, &a.nondegenerate_image()).unwrap());
    out
}

#[test]
fn simplicial_identities_and_boundaries_on_constructed_sets() {
    for x in constructed() {
        x.check_identities().unwrap();
        normalized_chains(&x).check().unwrap();
    }
}

#[test]
fn rank_nullity_bookkeeping() {
    for x in constructed() {
        let h = Homology::of_set(&x).unwrap();
        let c = h.complex();
        let rank = |d: usize| if d == 0 || d > c.top() { 0 } else { smith_normal_form(&dense(&c.boundary(d))).rank() };
        for d in 0..=c.top() {
            if !c.homology_valid(d) {
                continue;
            }
            assert_eq!(rank(d) + rank(d + 1) + h.group(d).unwrap().betti, c.rank(d), "{} degree {d}", x.name());
        }
        if x.skeleton().is_none() {
            assert_eq!(h.euler_by_betti().unwrap(), c.euler_by_ranks());
        }
    }
}

#[test]
fn quotient_by_trivial_action_is_identity() {
    for x in corpus_all() {
        let x = Arc::new(x);
        let (q, proj) = quotient(x.clone(), &GroupAction::trivial(&x)).unwrap();
        assert_eq!(q.counts(), x.counts());
        assert_eq!(proj.images(), SimplicialMap::identity(x.clone()).images());
        assert_eq!(shape(&groups(&q)), shape(&groups(&x)));
    }
}

fn multisets(v: usize, n: usize) -> usize {
    // binom(v + n - 1, n)
    (1..=n).fold(1usize, |acc, i| acc * (v + i - 1) / i)
}

#[test]
fn vertices_of_symmetric_powers_are_multisets() {
    let b = Budget::default().with_max_dim(1);
    for x in corpus_all() {
        for n in 0..=3 {
            let s = sym_power(&x, n, b).unwrap();
            assert_eq!(s.count(0), multisets(x.count(0), n), "{} n = {n}", x.name());
        }
    }
}

#[test]
fn projection_onto_symmetric_power_is_surjective() {
    let b = Budget::default().with_max_dim(3);
    for x in corpus_all() {
        for n in 1..=2 {
            let (p, _) = power(&x, n, b).unwrap();
            let s = Arc::new(sym_power(&x, n, b).unwrap());
            let q = sym_projection(Arc::new(p), s.clone()).unwrap();
            for d in 0..=s.dim() {
                let mut hit = vec![false; s.count(d)];
                for img in &q.images()[d] {
                    if !img.is_degenerate() {
                        hit[img.index()] = true;
                    }
                }
                assert!(hit.iter().all(|&h| h), "{} n = {n} d = {d}", x.name());
            }
        }
    }
}

#[test]
fn identity_induces_isomorphisms() {
    for x in corpus_all() {
        let x = Arc::new(x);
        let id = SimplicialMap::identity(x.clone());
        for d in 0..=x.dim() {
            assert!(induced_map_of(&id, d).unwrap().is_isomorphism, "{} degree {d}", x.name());
        }
    }
}

#[test]
fn functoriality_along_the_stabilization_chain() {
    let b = Budget::default().with_max_dim(3);
    for x in [circle_model(3).unwrap(), sphere_model(2).unwrap(), common::corpus("rp2")] {
        let syms: Vec<Arc<SimplicialSet>> = (1..=3).map(|n| Arc::new(sym_power(&x, n, b).unwrap())).collect();
        let hs: Vec<Homology> = syms.iter().map(|s| Homology::of_set(s).unwrap()).collect();
        let f = stabilization_map(syms[0].clone(), syms[1].clone()).unwrap();
        let g = stabilization_map(syms[1].clone(), syms[2].clone()).unwrap();
        let gf = f.then(&g).unwrap();
        for d in 0..=2 {
            let hf = induced_map(&f, &hs[0], &hs[1], d).unwrap();
            let hg = induced_map(&g, &hs[1], &hs[2], d).unwrap();
            let hgf = induced_map(&gf, &hs[0], &hs[2], d).unwrap();
            assert_eq!(hgf.matrix, hg.after(&hf).matrix, "{} degree {d}", x.name());
        }
    }
}

#[test]
fn euler_characteristic_is_multiplicative() {
    let xs = corpus_all();
    for x in &xs {
        for y in &xs {
            let p = product(x, y, Budget::default()).unwrap();
            let (a, b) = (euler_characteristic(x).unwrap(), euler_characteristic(y).unwrap());
            assert_eq!(euler_characteristic(&p).unwrap(), a * b, "{} × {}", x.name(), y.name());
        }
    }
}

#[test]
fn kunneth_betti_numbers() {
    let free = ["point", "circle3", "sphere2", "torus"].map(common::corpus);
    for x in &free {
        for y in &free {
            let p = product(x, y, Budget::default()).unwrap();
            let (bx, by) = (Homology::of_set(x).unwrap().betti_numbers(), Homology::of_set(y).unwrap().betti_numbers());
            let mut expected = vec![0; bx.len() + by.len() - 1];
            for (i, a) in bx.iter().enumerate() {
                for (j, b) in by.iter().enumerate() {
                    expected[i + j] += a * b;
                }
            }
            assert_eq!(Homology::of_set(&p).unwrap().betti_numbers(), expected);
        }
    }
}

fn random_permutations(x: &SimplicialSet, rng: &mut StdRng) -> Vec<Vec<usize>> {
    (0..=x.dim())
        .map(|d| {
            let mut p: Vec<usize> = (0..x.count(d)).collect();
            p.shuffle(rng);
            p
        })
        .collect()
}

#[test]
fn homology_is_invariant_under_relabeling() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut sets = corpus_all();
    sets.push(sym_power(&common::corpus("rp2"), 2, Budget::default().with_max_dim(2)).unwrap());
    for x in sets {
        let base = shape(&groups(&x));
        for _ in 0..20 {
            let y = x.relabel(&random_permutations(&x, &mut rng)).unwrap();
            y.check_identities().unwrap();
            assert_eq!(shape(&groups(&y)), base, "{}", x.name());
        }
    }
}

fn sparse_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=40, 1usize..=40, 2u32..40).prop_flat_map(|(r, c, density)| {
        prop::collection::vec(
            prop::collection::vec(
                prop_oneof![100 - density => Just(0i64), density => -9i64..=9],
                c,
            ),
            r,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn snf_certificates(rows in sparse_matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.diagonal.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        for (i, f) in s.factors.iter().enumerate() {
            prop_assert!(f.is_positive());
            prop_assert_eq!(&s.diagonal.row(i)[i], f);
            if i > 0 {
                prop_assert!((f % &s.factors[i - 1]).is_zero());
            }
        }
        let off_diagonal_zero = (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || s.diagonal.row(i)[j].is_zero()));
        prop_assert!(off_diagonal_zero);
        prop_assert_eq!(s.rank(), common::rank_mod(m.rows(), &columns(&rows), common::BIG_PRIME));
    }
}

fn columns(rows: &[Vec<i64>]) -> Vec<Vec<(usize, i64)>> {
    let c = rows.first().map_or(0, Vec::len);
    (0..c).map(|j| rows.iter().enumerate().filter(|(_, r)| r[j] != 0).map(|(i, r)| (i, r[j])).collect()).collect()
}

/// `N_m = Σ_{d | m} d·a_d` for `a_d` closed points of degree `d`.
fn counts_of_closed_points(a: &[i64]) -> Vec<i64> {
    (1..=a.len()).map(|m| (1..=m).filter(|d| m % d == 0).map(|d| d as i64 * a[d - 1]).sum()).collect()
}

const PRIME_POWERS: [u64; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

/// Genus-one style eigenvalue data: `x - 1`, `x² - a x + q`, `x - q` with
/// `|a| ≤ 2√q`, so every point count is nonnegative.
fn curve_data() -> impl Strategy<Value = (u64, EigenvalueData)> {
    prop::sample::select(PRIME_POWERS.to_vec()).prop_flat_map(|q| {
        let bound = (2.0 * (q as f64).sqrt()).floor() as i64;
        (-bound..=bound).prop_map(move |a| {
            let q = q as i64;
            (q as u64, EigenvalueData::from_i64(&[vec![vec![-1, 1]], vec![vec![q, -a, 1]], vec![vec![-q, 1]]]).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn counts_roundtrip(points in prop::collection::vec(0i64..50, 6)) {
        let counts = counts_of_closed_points(&points);
        let p = PointCounts::from_i64(None, &counts).unwrap();
        let c = sym_counts_from_counts(&p, 6).unwrap();
        prop_assert!(c.iter().all(|x| !x.is_negative()));
        prop_assert_eq!(counts_from_sym_counts(&c, None).unwrap(), p);
        prop_assert_eq!(sym_counts_from_counts(&counts_from_sym_counts(&c, None).unwrap(), 6).unwrap(), c);
    }

    #[test]
    fn exp_and_log_are_inverse(coeffs in prop::collection::vec(-20i64..20, 1..10), den in 1i64..6) {
        let order = coeffs.len();
        let mut v: Vec<BigRational> = coeffs.iter().map(|&c| BigRational::new(c.into(), den.into())).collect();
        v[0] = BigRational::zero();
        let f = PowerSeries::new(v, order);
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f.clone());
        let mut w: Vec<BigRational> = coeffs.iter().map(|&c| BigRational::new(c.into(), den.into())).collect();
        w[0] = BigRational::one();
        let g = PowerSeries::new(w, order);
        prop_assert_eq!(g.log().unwrap().exp().unwrap(), g);
    }

    #[test]
    fn zeta_expansion_matches_point_counts((q, e) in curve_data()) {
        let order = 8;
        let z = e.zeta(Some(q)).unwrap();
        let expansion = expand_zeta(&z, order).unwrap().integer_coeffs().unwrap();
        let counts = lefschetz_counts(&e, Some(q), order).unwrap();
        let c = sym_counts_from_counts(&counts, order).unwrap();
        prop_assert!(c.iter().all(|x| !x.is_negative()));
        prop_assert_eq!(&expansion, &c);
        let diff = expand_zeta(&finite_difference_series(&z, order).unwrap(), order).unwrap();
        for n in 1..=order {
            prop_assert_eq!(diff.coeff(n).to_integer(), &c[n] - &c[n - 1]);
        }
    }

    #[test]
    fn gcd_binomials_against_direct(n in 2u64..300) {
        let g = gcd_binomials(n).unwrap();
        prop_assert!(g.dichotomy_holds);
        prop_assert_eq!(BigInt::from(g.gcd), BigInt::from(gcd_binomials_direct(n)));
    }

    #[test]
    fn valuation_identities(p in prop::sample::select(vec![2u64, 3, 5, 7]), k in 0u32..=6) {
        let v = valp_prime_power_factorial(p, k).unwrap();
        prop_assert!(v.holds);
        prop_assert_eq!(v.valuation, v.closed_form);
    }
}
