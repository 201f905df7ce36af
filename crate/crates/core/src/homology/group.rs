use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::chain::{normalized_chains, Chain, ChainComplex};
use super::matrix::IntMatrix;
use super::reduce::Reduction;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::simplicial::SimplicialSet;

/// `H_d ≅ ℤ^betti ⊕ ⊕ ℤ/torsion_i`, with cycle representatives:
/// one per torsion factor (in order) followed by one per free summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    #[serde(skip)]
    pub generators: Vec<Chain>,
}

impl HomologyGroup {
    pub fn zero(degree: usize) -> Self {
        Self { degree, betti: 0, torsion: Vec::new(), generators: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// Same abstract group (rank and invariant factors).
    pub fn isomorphic(&self, other: &HomologyGroup) -> bool {
        self.betti == other.betti && self.torsion == other.torsion
    }

    pub fn num_generators(&self) -> usize {
        self.torsion.len() + self.betti
    }

    /// Order of each generator in the presentation: the torsion factor, or
    /// zero for free generators.
    pub fn relation_orders(&self) -> Vec<BigInt> {
        self.torsion.iter().cloned().chain(std::iter::repeat_n(BigInt::zero(), self.betti)).collect()
    }

    pub fn torsion_string(&self) -> String {
        self.torsion.iter().map(BigInt::to_string).collect::<Vec<_>>().join(";")
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug)]
struct DegreeData {
    group: HomologyGroup,
    /// Rows of `V^{-1}` giving kernel coordinates of a reduced cycle.
    kernel_coords: IntMatrix,
    /// Change of basis of the kernel lattice adapted to the boundaries.
    basis_change: IntMatrix,
    /// Number of unit invariant factors (trivial summands) to skip.
    units: usize,
    /// All nonzero invariant factors of the boundary in kernel coordinates.
    factors: Vec<BigInt>,
}

/// Integral homology of a chain complex with a coordinate map from cycles to
/// the chosen presentation of each group.
#[derive(Clone, Debug)]
pub struct Homology {
    name: String,
    complex: ChainComplex,
    reduction: Reduction,
    degrees: Vec<Option<DegreeData>>,
}

impl Homology {
    pub fn of_set(x: &SimplicialSet) -> Result<Homology> {
        Self::of_complex(normalized_chains(x))
    }

    pub fn of_complex(complex: ChainComplex) -> Result<Homology> {
        complex.check()?;
        let reduction = Reduction::new(&complex);
        let mut degrees = Vec::with_capacity(complex.top() + 1);
        for d in 0..=complex.top() {
            degrees.push(if complex.homology_valid(d) { Some(degree_data(&reduction, d)?) } else { None });
        }
        Ok(Homology { name: complex.name.clone(), complex, reduction, degrees })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn reduction(&self) -> &Reduction {
        &self.reduction
    }

    /// Highest degree whose group is determined.
    pub fn max_degree(&self) -> Option<usize> {
        self.degrees.iter().rposition(Option::is_some)
    }

    /// `H_d`; the zero group above the stored range of a complete complex.
    pub fn group(&self, d: usize) -> Result<HomologyGroup> {
        if !self.complex.homology_valid(d) {
            return Err(Error::Truncated { degree: d, top: self.complex.skeleton.unwrap_or(0) });
        }
        Ok(match self.degrees.get(d) {
            Some(Some(data)) => data.group.clone(),
            _ => HomologyGroup::zero(d),
        })
    }

    /// All determined groups, from degree 0.
    pub fn groups(&self) -> Vec<HomologyGroup> {
        self.degrees.iter().map_while(|g| g.as_ref().map(|g| g.group.clone())).collect()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups().iter().map(|g| g.betti).collect()
    }

    /// Coordinates of the class of a `d`-cycle: torsion coordinates reduced
    /// into `[0, t_i)`, then free coordinates.
    pub fn coordinates(&self, d: usize, cycle: &Chain) -> Result<Vec<BigInt>> {
        if !self.complex.homology_valid(d) {
            return Err(Error::Truncated { degree: d, top: self.complex.skeleton.unwrap_or(0) });
        }
        let Some(Some(data)) = self.degrees.get(d) else {
            return Ok(Vec::new());
        };
        if !self.complex.boundary(d).apply(cycle).is_empty() {
            return Err(Error::InvalidInput(format!("chain is not a cycle in degree {d}")));
        }
        let v = self.reduction.project(d, cycle);
        let y = data.kernel_coords.mul_vec(&v);
        let w = data.basis_change.mul_vec(&y);
        let mut out = Vec::with_capacity(data.group.num_generators());
        for (i, f) in data.factors.iter().enumerate().skip(data.units) {
            out.push(w[i].mod_floor(f));
        }
        out.extend(w[data.factors.len()..].iter().cloned());
        Ok(out)
    }

    /// Euler characteristic from Betti numbers; requires a complete complex.
    pub fn euler_by_betti(&self) -> Result<i64> {
        if let Some(top) = self.complex.skeleton {
            return Err(Error::Truncated { degree: top, top });
        }
        Ok(self
            .betti_numbers()
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum())
    }
}

fn degree_data(r: &Reduction, d: usize) -> Result<DegreeData> {
    let outgoing = r.boundary(d);
    let incoming = r.image_basis(d + 1);
    let n = r.reduced_rank(d);
    let a = smith_normal_form(&outgoing);
    let rank_a = a.rank();
    let kernel = a.v.select_cols(rank_a..n);
    let kernel_coords = a.v_inv.select_rows(rank_a..n);
    let k = n - rank_a;
    // boundaries expressed in kernel coordinates
    let b = kernel_coords.mul(&incoming);
    if kernel.mul(&b) != incoming {
        return Err(Error::Invariant(format!("boundaries of degree {} are not cycles", d + 1)));
    }
    let s = smith_normal_form(&b);
    let units = s.factors.iter().take_while(|f| f.is_one()).count();
    let generators_reduced = kernel.mul(&s.u_inv);
    let mut generators = Vec::new();
    for i in (units..s.rank()).chain(s.rank()..k) {
        generators.push(r.include(d, &generators_reduced.column(i)));
    }
    let group = HomologyGroup { degree: d, betti: k - s.rank(), torsion: s.factors[units..].to_vec(), generators };
    Ok(DegreeData { group, kernel_coords, basis_change: s.u, units, factors: s.factors })
}

/// Convenience: the groups of `X` in all determined degrees.
pub fn homology_groups(x: &SimplicialSet) -> Result<Vec<HomologyGroup>> {
    Ok(Homology::of_set(x)?.groups())
}

/// Reduced homology: `H_0` loses one free summand for nonempty spaces.
pub fn reduced(groups: &[HomologyGroup]) -> Vec<HomologyGroup> {
    let mut out = groups.to_vec();
    if let Some(h0) = out.first_mut() {
        if h0.betti > 0 {
            h0.betti -= 1;
            h0.generators.pop();
        }
    }
    out
}

/// Euler characteristic of a complete simplicial set, computed both from
/// simplex counts and from Betti numbers and checked for agreement.
pub fn euler_characteristic(x: &SimplicialSet) -> Result<i64> {
    let by_counts = x.euler_by_counts();
    let by_betti = Homology::of_set(x)?.euler_by_betti()?;
    if by_counts != by_betti {
        return Err(Error::Invariant(format!(
            "{}: Euler characteristic {by_counts} from counts but {by_betti} from Betti numbers",
            x.name()
        )));
    }
    Ok(by_counts)
}
