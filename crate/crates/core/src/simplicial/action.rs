use std::sync::Arc;

use super::map::SimplicialMap;
use super::set::{Label, NormalSimplex, SimplicialSet};
use crate::error::{Error, Result};

/// A finite group acting on a simplicial set by automorphisms.
///
/// Element `g` is the permutation `elements[g]` of an index set, and acts on
/// nondegenerate simplices by `images[g][d][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    elements: Vec<Vec<usize>>,
    images: Vec<Vec<Vec<u32>>>,
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl GroupAction {
    pub fn trivial(x: &SimplicialSet) -> Self {
        let id = (0..=x.dim()).map(|d| (0..x.count(d) as u32).collect()).collect();
        Self { elements: vec![vec![]], images: vec![id] }
    }

    /// `S_n` acting on a power `X^n` by `(p·t)[p(i)] = t[i]`.
    pub fn permuting_factors(power: &SimplicialSet, n: usize) -> Result<Self> {
        let elements = all_permutations(n);
        let index: Vec<_> = (0..=power.dim()).map(|d| power.label_index(d)).collect();
        let mut images = Vec::with_capacity(elements.len());
        for p in &elements {
            let mut per_dim = Vec::with_capacity(power.dim() + 1);
            for d in 0..=power.dim() {
                let mut row = Vec::with_capacity(power.count(d));
                for l in power.labels(d) {
                    let Label::Tuple(t) = l else {
                        return Err(Error::Mismatch("not a power".into()));
                    };
                    if t.len() != n {
                        return Err(Error::Mismatch(format!("tuple length {} != {n}", t.len())));
                    }
                    let mut moved = t.clone();
                    for (i, c) in t.iter().enumerate() {
                        moved[p[i]] = *c;
                    }
                    let j = index[d]
                        .get(&Label::Tuple(moved))
                        .ok_or_else(|| Error::Invariant("permuted tuple missing".into()))?;
                    row.push(*j as u32);
                }
                per_dim.push(row);
            }
            images.push(per_dim);
        }
        Ok(Self { elements, images })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, g: usize) -> &[usize] {
        &self.elements[g]
    }

    pub fn act(&self, g: usize, d: usize, j: usize) -> usize {
        self.images[g][d][j] as usize
    }

    /// The automorphism of element `g` as a simplicial map.
    pub fn as_map(&self, g: usize, x: Arc<SimplicialSet>) -> Result<SimplicialMap> {
        let images = self.images[g]
            .iter()
            .enumerate()
            .map(|(d, row)| row.iter().map(|&j| NormalSimplex::nondegenerate(d, j as usize)).collect())
            .collect();
        SimplicialMap::new(x.clone(), x, images)
    }

    /// Every element acts by a simplicial automorphism, the identity acts
    /// trivially, and for groups of order ≤ 24 the composition table is
    /// respected on all pairs.
    pub fn check(&self, x: &Arc<SimplicialSet>) -> Result<()> {
        let fail = |m: &str| Err(Error::Invariant(format!("group action on {}: {m}", x.name())));
        for g in 0..self.order() {
            for (d, row) in self.images[g].iter().enumerate() {
                let mut seen = vec![false; x.count(d)];
                for &j in row {
                    if std::mem::replace(&mut seen[j as usize], true) {
                        return fail("element does not act bijectively");
                    }
                }
            }
            self.as_map(g, x.clone())?;
        }
        let identity = self
            .elements
            .iter()
            .position(|p| p.iter().enumerate().all(|(i, &v)| i == v))
            .ok_or_else(|| Error::Invariant("group has no identity element".into()))?;
        for (d, row) in self.images[identity].iter().enumerate() {
            if row.iter().enumerate().any(|(j, &v)| v as usize != j) {
                return fail(&format!("identity acts nontrivially in dimension {d}"));
            }
        }
        if self.order() <= 24 {
            for (a, p) in self.elements.iter().enumerate() {
                for (b, q) in self.elements.iter().enumerate() {
                    let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                    let Some(c) = self.elements.iter().position(|r| *r == pq) else {
                        return fail("elements not closed under composition");
                    };
                    for d in 0..self.images[a].len() {
                        for j in 0..x.count(d) {
                            let two_step = self.act(a, d, self.act(b, d, j));
                            if two_step != self.act(c, d, j) {
                                return fail("composition table not respected");
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Degreewise orbit quotient `X / G` and the projection `X -> X / G`.
///
/// Each orbit is represented by its least-indexed member; orbits are ordered
/// by representative and keep the representative's label.
pub fn quotient(x: Arc<SimplicialSet>, action: &GroupAction) -> Result<(SimplicialSet, SimplicialMap)> {
    let mut orbit_of: Vec<Vec<u32>> = Vec::with_capacity(x.dim() + 1);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(x.dim() + 1);
    for d in 0..=x.dim() {
        let rep: Vec<usize> = (0..x.count(d))
            .map(|j| (0..action.order()).map(|g| action.act(g, d, j)).min().unwrap_or(j))
            .collect();
        let mut r: Vec<usize> = rep.clone();
        r.sort_unstable();
        r.dedup();
        let mut pos = vec![u32::MAX; x.count(d)];
        for (k, &j) in r.iter().enumerate() {
            pos[j] = k as u32;
        }
        orbit_of.push(rep.iter().map(|&j| pos[j]).collect());
        reps.push(r);
    }
    let labels: Vec<Vec<Label>> =
        reps.iter().enumerate().map(|(d, r)| r.iter().map(|&j| x.label(d, j).clone()).collect()).collect();
    let mut faces: Vec<Vec<NormalSimplex>> = vec![Vec::new(); x.dim() + 1];
    for d in 1..=x.dim() {
        for &j in &reps[d] {
            for f in x.faces_of(d, j) {
                faces[d].push(NormalSimplex { index: orbit_of[f.base_dim()][f.index()], ..*f });
            }
        }
    }
    let bp = orbit_of[0][x.basepoint()] as usize;
    let q = Arc::new(SimplicialSet::new(format!("{}/G", x.name()), bp, labels, faces, x.skeleton())?);
    let images = orbit_of
        .iter()
        .enumerate()
        .map(|(d, row)| row.iter().map(|&o| NormalSimplex::nondegenerate(d, o as usize)).collect())
        .collect();
    let proj = SimplicialMap::new(x, q.clone(), images)?;
    let q = Arc::try_unwrap(q).unwrap_or_else(|a| (*a).clone());
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::models::{circle_model, sphere_model};
    use crate::simplicial::product::{power, sym_power, Budget};

    #[test]
    fn power_one_has_trivial_action() {
        let x = sphere_model(2).unwrap();
        let (p, a) = power(&x, 1, Budget::default()).unwrap();
        assert_eq!(p.counts(), x.counts());
        assert_eq!(a.order(), 1);
    }

    #[test]
    fn swap_fixes_diagonal_vertices() {
        let x = circle_model(3).unwrap();
        let (p, a) = power(&x, 2, Budget::default()).unwrap();
        assert_eq!(p.count(0), 9);
        let swap = (0..a.order()).find(|&g| a.element(g) == [1, 0]).unwrap();
        let fixed = (0..9).filter(|&j| a.act(swap, 0, j) == j).count();
        assert_eq!(fixed, 3);
        a.check(&Arc::new(p)).unwrap();
    }

    #[test]
    fn quotient_by_trivial_action_is_identity() {
        let x = Arc::new(sphere_model(2).unwrap());
        let (q, proj) = quotient(x.clone(), &GroupAction::trivial(&x)).unwrap();
        assert_eq!(q.counts(), x.counts());
        assert_eq!(q.with_name(x.name().to_string()), *x);
        proj.check().unwrap();
    }

    #[test]
    fn quotient_of_power_matches_sym_power() {
        for (x, n) in [(circle_model(3).unwrap(), 2), (circle_model(3).unwrap(), 3), (sphere_model(2).unwrap(), 2)] {
            let (p, a) = power(&x, n, Budget::default()).unwrap();
            let (q, _) = quotient(Arc::new(p), &a).unwrap();
            let s = sym_power(&x, n, Budget::default()).unwrap();
            assert_eq!(q.with_name(s.name().to_string()), s);
        }
    }

    #[test]
    fn sym_square_of_circle_has_multiset_vertices() {
        let x = circle_model(3).unwrap();
        let (p, a) = power(&x, 2, Budget::default()).unwrap();
        let (q, _) = quotient(Arc::new(p), &a).unwrap();
        assert_eq!(q.count(0), 6);
    }
}
