use std::sync::Arc;

use serde::Serialize;

use super::{CsvReport, SymSource};
use crate::error::{Error, Result};
use crate::homology::{induced_map, Homology, InducedMap};
use crate::simplicial::{stabilization_map, Budget, SimplicialSet};

/// What the stabilization range demands of `H_k(α_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Expectation {
    /// `k < n`
    Isomorphism,
    /// `k = n`
    Surjection,
}

#[derive(Clone, Debug)]
pub struct DegreeVerdict {
    pub n: usize,
    pub k: usize,
    pub map: InducedMap,
    pub expected: Expectation,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub space: String,
    pub n_max: usize,
    pub k_max: usize,
    pub verdicts: Vec<DegreeVerdict>,
    /// Largest `n` whose verdicts are all present.
    pub completed_n: usize,
    /// The `n` at which the simplex budget stopped the run.
    pub budget_stop: Option<usize>,
}

impl StabilityReport {
    pub fn violations(&self) -> impl Iterator<Item = &DegreeVerdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }

    /// No violations among the computed verdicts.
    pub fn pass(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn complete(&self) -> bool {
        self.budget_stop.is_none()
    }
}

impl CsvReport for StabilityReport {
    fn header() -> &'static [&'static str] {
        &["space", "n", "k", "betti_src", "betti_tgt", "torsion_src", "torsion_tgt", "iso", "surj", "pass"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.verdicts
            .iter()
            .map(|v| {
                vec![
                    self.space.clone(),
                    v.n.to_string(),
                    v.k.to_string(),
                    v.map.source.betti.to_string(),
                    v.map.target.betti.to_string(),
                    v.map.source.torsion_string(),
                    v.map.target.torsion_string(),
                    v.map.is_isomorphism.to_string(),
                    v.map.is_surjective.to_string(),
                    v.pass.to_string(),
                ]
            })
            .collect()
    }
}

pub(crate) fn require_connected(x: &SimplicialSet) -> Result<()> {
    let h0 = Homology::of_set(&x.truncate(1))?.group(0)?;
    if h0.betti != 1 {
        return Err(Error::Disconnected(h0.betti));
    }
    Ok(())
}

/// `H_k(α_n)` for `1 ≤ n ≤ n_max` and `1 ≤ k ≤ min(k_max, n)`: an
/// isomorphism is required for `k < n` and a surjection for `k = n`.
///
/// Symmetric powers are built through dimension `k_max + 1`, which
/// determines homology through degree `k_max`.
pub fn check_stability(
    x: &SimplicialSet,
    n_max: usize,
    k_max: usize,
    budget: Budget,
    source: &mut dyn SymSource,
) -> Result<StabilityReport> {
    if n_max == 0 || k_max == 0 {
        return Err(Error::InvalidInput("n_max and k_max must be at least 1".into()));
    }
    require_connected(x)?;
    let cap = budget.max_dim.map_or(k_max + 1, |d| d.min(k_max + 1));
    let budget = budget.with_max_dim(cap);
    let mut report = StabilityReport {
        space: x.name().to_string(),
        n_max,
        k_max,
        verdicts: Vec::new(),
        completed_n: 0,
        budget_stop: None,
    };

    let build = |source: &mut dyn SymSource, n: usize| -> Result<(Arc<SimplicialSet>, Homology)> {
        let s = Arc::new(source.sym_power(x, n, budget)?);
        let h = Homology::of_set(&s)?;
        Ok((s, h))
    };
    let mut current = match build(source, 1) {
        Err(Error::BudgetExceeded { .. }) => {
            report.budget_stop = Some(1);
            return Ok(report);
        }
        other => other?,
    };
    for n in 1..=n_max {
        let next = match build(source, n + 1) {
            Err(Error::BudgetExceeded { .. }) => {
                report.budget_stop = Some(n);
                break;
            }
            other => other?,
        };
        let alpha = stabilization_map(current.0.clone(), next.0.clone())?;
        for k in 1..=k_max.min(n) {
            let map = induced_map(&alpha, &current.1, &next.1, k)?;
            let (expected, pass) = if k < n {
                (Expectation::Isomorphism, map.is_isomorphism)
            } else {
                (Expectation::Surjection, map.is_surjective)
            };
            report.verdicts.push(DegreeVerdict { n, k, map, expected, pass });
        }
        report.completed_n = n;
        current = next;
    }
    Ok(report)
}
