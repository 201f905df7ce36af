//! Shared test helpers and an independent oracle.
//!
//! The oracle never touches the library's simplicial-set code. For a
//! simplicial complex with ordered vertices, an m-simplex of `K × K` is a
//! pair of weakly increasing vertex sequences of length m+1 (each spanning a
//! simplex of `K`); it is degenerate exactly when two consecutive vertex
//! pairs coincide. `Sym² K` identifies `(a, b)` with `(b, a)`. Homology
//! ranks are computed by Gaussian elimination modulo primes.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use symstab::simplicial::{load_complex_file, ComplexDocument, SimplicialSet};

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.json"))
}

pub fn corpus(name: &str) -> SimplicialSet {
    load_complex_file(&corpus_path(name)).expect("corpus document loads")
}

pub fn corpus_document(name: &str) -> ComplexDocument {
    let text = std::fs::read_to_string(corpus_path(name)).unwrap();
    ComplexDocument::parse(&text, name).unwrap()
}

/// All faces of a list of top simplices, as sorted vertex sets.
pub fn closure(tops: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for t in tops {
        let mut t = t.clone();
        t.sort_unstable();
        let k = t.len();
        for mask in 1u32..(1 << k) {
            out.insert((0..k).filter(|i| mask >> i & 1 == 1).map(|i| t[i]).collect());
        }
    }
    out
}

/// Boundary matrices of a chain complex as sparse column lists with
/// integer entries, `d[m]` mapping degree m to degree m-1.
pub struct OracleComplex {
    pub ranks: Vec<usize>,
    pub d: Vec<Vec<Vec<(usize, i64)>>>,
}

/// Simplicial chain complex of the complex itself.
pub fn simplicial_chains(tops: &[Vec<u32>]) -> OracleComplex {
    let simplices = closure(tops);
    let top = simplices.iter().map(Vec::len).max().unwrap() - 1;
    let by_dim: Vec<Vec<Vec<u32>>> =
        (0..=top).map(|m| simplices.iter().filter(|s| s.len() == m + 1).cloned().collect()).collect();
    let index: Vec<BTreeMap<Vec<u32>, usize>> =
        by_dim.iter().map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let mut d = vec![vec![Vec::new(); by_dim[0].len()]];
    for m in 1..=top {
        let cols = by_dim[m]
            .iter()
            .map(|s| {
                (0..=m)
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        (index[m - 1][&f], if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        d.push(cols);
    }
    OracleComplex { ranks: by_dim.iter().map(Vec::len).collect(), d }
}

type PairSeq = (Vec<u32>, Vec<u32>);

/// Nondegenerate simplices of `Sym² K` by dimension, with boundaries.
pub fn sym2_chains(tops: &[Vec<u32>]) -> OracleComplex {
    let simplices = closure(tops);
    let dim_k = simplices.iter().map(Vec::len).max().unwrap() - 1;
    let top = 2 * dim_k;
    // weakly increasing sequences of length m+1 whose support is a simplex
    let sequences = |m: usize| -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for s in &simplices {
            if s.len() > m + 1 {
                continue;
            }
            // surjections [m] -> s, monotone: choose s.len()-1 step positions
            let k = s.len();
            for mask in 0u32..(1 << m) {
                if mask.count_ones() as usize != k - 1 {
                    continue;
                }
                let mut v = 0;
                let mut seq = vec![s[0]];
                for i in 0..m {
                    if mask >> i & 1 == 1 {
                        v += 1;
                    }
                    seq.push(s[v]);
                }
                out.push(seq);
            }
        }
        out
    };
    let nondegenerate = |a: &[u32], b: &[u32]| (1..a.len()).all(|i| (a[i], b[i]) != (a[i - 1], b[i - 1]));
    let canonical = |a: Vec<u32>, b: Vec<u32>| if a <= b { (a, b) } else { (b, a) };
    let mut by_dim: Vec<Vec<PairSeq>> = Vec::new();
    for m in 0..=top {
        let seqs = sequences(m);
        let mut set = BTreeSet::new();
        for a in &seqs {
            for b in &seqs {
                if nondegenerate(a, b) {
                    set.insert(canonical(a.clone(), b.clone()));
                }
            }
        }
        by_dim.push(set.into_iter().collect());
    }
    let index: Vec<BTreeMap<PairSeq, usize>> =
        by_dim.iter().map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let mut d = vec![vec![Vec::new(); by_dim[0].len()]];
    for m in 1..=top {
        let cols = by_dim[m]
            .iter()
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for i in 0..=m {
                    let (mut fa, mut fb) = (a.clone(), b.clone());
                    fa.remove(i);
                    fb.remove(i);
                    if !nondegenerate(&fa, &fb) {
                        continue;
                    }
                    let j = index[m - 1][&canonical(fa, fb)];
                    *acc.entry(j).or_default() += if i % 2 == 0 { 1 } else { -1 };
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        d.push(cols);
    }
    OracleComplex { ranks: by_dim.iter().map(Vec::len).collect(), d }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Rank of a sparse integer matrix modulo a prime.
pub fn rank_mod(rows: usize, cols: &[Vec<(usize, i64)>], p: u64) -> usize {
    let mut m = vec![vec![0u64; cols.len()]; rows];
    for (j, col) in cols.iter().enumerate() {
        for &(i, v) in col {
            m[i][j] = v.rem_euclid(p as i64) as u64;
        }
    }
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(r) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, r);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for r2 in 0..rows {
            if r2 != rank && m[r2][c] != 0 {
                let f = m[r2][c] * inv % p;
                for c2 in c..cols.len() {
                    m[r2][c2] = (m[r2][c2] + p - f * m[rank][c2] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl OracleComplex {
    /// `dim H_d(−; F_p)` for every stored degree.
    pub fn betti_mod(&self, p: u64) -> Vec<usize> {
        let top = self.ranks.len() - 1;
        let rk: Vec<usize> = (0..=top)
            .map(|m| if m == 0 { 0 } else { rank_mod(self.ranks[m - 1], &self.d[m], p) })
            .collect();
        (0..=top).map(|m| self.ranks[m] - rk[m] - if m < top { rk[m + 1] } else { 0 }).collect()
    }

    /// Boundary squares to zero (exact integer check).
    pub fn check(&self) -> bool {
        (2..self.d.len()).all(|m| {
            self.d[m].iter().all(|col| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(i, v) in col {
                    for &(k, w) in &self.d[m - 1][i] {
                        *acc.entry(k).or_default() += v * w;
                    }
                }
                acc.values().all(|&x| x == 0)
            })
        })
    }
}

/// A large prime standing in for characteristic zero.
pub const BIG_PRIME: u64 = 1_000_000_007;
