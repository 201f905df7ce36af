use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::stability::require_connected;
use super::{CsvReport, SymSource};
use crate::error::{Error, Result};
use crate::homology::{euler_characteristic, induced_map, reduced, Homology, HomologyGroup, InducedMap};
use crate::simplicial::{collapse, insert_basepoints, sphere_model, Budget, SimplicialSet};
use crate::zeta::PowerSeries;

#[derive(Clone, Debug)]
pub struct ConnectivityReport {
    pub n: usize,
    pub k: usize,
    /// Reduced homology of the cofibre in degrees `0..=n`.
    pub reduced: Vec<HomologyGroup>,
    pub pass: bool,
}

impl CsvReport for ConnectivityReport {
    fn header() -> &'static [&'static str] {
        &["n", "k", "degree", "betti", "torsion", "required_zero", "pass"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.reduced
            .iter()
            .map(|g| {
                let required = g.degree < self.n;
                vec![
                    self.n.to_string(),
                    self.k.to_string(),
                    g.degree.to_string(),
                    g.betti.to_string(),
                    g.torsion_string(),
                    required.to_string(),
                    (!required || g.is_zero()).to_string(),
                ]
            })
            .collect()
    }
}

/// Collapses the image of `α_{n-1}: Sym^{n-1} S^k -> Sym^n S^k` and checks
/// that the reduced homology of the quotient vanishes through degree `n-1`.
pub fn check_lemma24(n: usize, k: usize, budget: Budget, source: &mut dyn SymSource) -> Result<ConnectivityReport> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidInput("lemma24 needs n >= 1 and k >= 1".into()));
    }
    let x = sphere_model(k)?;
    let cap = budget.max_dim.map_or(n + 1, |d| d.min(n + 1));
    if cap < n + 1 {
        return Err(Error::InvalidInput(format!("dimension cap {cap} is below the required {}", n + 1)));
    }
    let budget = budget.with_max_dim(cap);
    let big = Arc::new(source.sym_power(&x, n, budget)?);
    let small = Arc::new(source.sym_power(&x, n - 1, budget)?);
    let alpha = insert_basepoints(small, big.clone(), 1)?;
    let cofibre = collapse(&big, &alpha.nondegenerate_image())?;
    let h = Homology::of_set(&cofibre)?;
    let groups: Vec<HomologyGroup> = (0..=n).map(|d| h.group(d)).collect::<Result<_>>()?;
    let reduced = reduced(&groups);
    let pass = reduced.iter().take(n).all(HomologyGroup::is_zero);
    Ok(ConnectivityReport { n, k, reduced, pass })
}

#[derive(Clone, Debug)]
pub struct H1Row {
    pub n: usize,
    pub h1: HomologyGroup,
    /// `H_1(Sym^n X) ≅ H_1(X)`.
    pub matches: bool,
    /// `H_1(α_n)` when `Sym^{n+1} X` is part of the run.
    pub alpha: Option<InducedMap>,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct H1Report {
    pub space: String,
    pub h1_x: HomologyGroup,
    pub rows: Vec<H1Row>,
    pub budget_stop: Option<usize>,
}

impl H1Report {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn complete(&self) -> bool {
        self.budget_stop.is_none()
    }
}

impl CsvReport for H1Report {
    fn header() -> &'static [&'static str] {
        &["space", "n", "betti", "torsion", "matches_h1_x", "alpha_iso", "pass"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    self.space.clone(),
                    r.n.to_string(),
                    r.h1.betti.to_string(),
                    r.h1.torsion_string(),
                    r.matches.to_string(),
                    r.alpha.as_ref().map_or(String::new(), |a| a.is_isomorphism.to_string()),
                    r.pass.to_string(),
                ]
            })
            .collect()
    }
}

/// `H_1(Sym^n X) ≅ H_1(X)` for `1 ≤ n ≤ n_max`, and `H_1(α_n)` an
/// isomorphism for `1 ≤ n < n_max`.
pub fn check_h1_abelianization(
    x: &SimplicialSet,
    n_max: usize,
    budget: Budget,
    source: &mut dyn SymSource,
) -> Result<H1Report> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    require_connected(x)?;
    let budget = budget.with_max_dim(budget.max_dim.map_or(2, |d| d.min(2)));
    let h1_x = Homology::of_set(&x.truncate(2))?.group(1)?;
    let mut report = H1Report { space: x.name().to_string(), h1_x: h1_x.clone(), rows: Vec::new(), budget_stop: None };
    let mut syms: Vec<(Arc<SimplicialSet>, Homology)> = Vec::new();
    for n in 1..=n_max {
        let s = match source.sym_power(x, n, budget) {
            Err(Error::BudgetExceeded { .. }) => {
                report.budget_stop = Some(n);
                break;
            }
            other => Arc::new(other?),
        };
        let h = Homology::of_set(&s)?;
        syms.push((s, h));
    }
    for (i, (_, h)) in syms.iter().enumerate() {
        let h1 = h.group(1)?;
        let matches = h1.isomorphic(&h1_x);
        let alpha = match syms.get(i + 1) {
            Some((t, ht)) => {
                let f = insert_basepoints(syms[i].0.clone(), t.clone(), 1)?;
                Some(induced_map(&f, h, ht, 1)?)
            }
            None => None,
        };
        let pass = matches && alpha.as_ref().is_none_or(|a| a.is_isomorphism);
        report.rows.push(H1Row { n: i + 1, h1, matches, alpha, pass });
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct EulerReport {
    pub space: String,
    pub chi: i64,
    /// `χ(Sym^n X)` for `n = 0..` as far as the budget allowed.
    pub sym_chi: Vec<i64>,
    /// Coefficients of `(1 - t)^{-χ}` through `t^{n_max}`.
    pub expected: Vec<BigInt>,
    pub budget_stop: Option<usize>,
}

impl EulerReport {
    pub fn pass(&self) -> bool {
        self.sym_chi.iter().zip(&self.expected).all(|(a, b)| BigInt::from(*a) == *b)
    }

    pub fn complete(&self) -> bool {
        self.budget_stop.is_none()
    }
}

impl CsvReport for EulerReport {
    fn header() -> &'static [&'static str] {
        &["space", "n", "chi_sym", "coefficient", "pass"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.sym_chi
            .iter()
            .zip(&self.expected)
            .enumerate()
            .map(|(n, (a, b))| {
                vec![self.space.clone(), n.to_string(), a.to_string(), b.to_string(), (BigInt::from(*a) == *b).to_string()]
            })
            .collect()
    }
}

/// `Σ χ(Sym^n X) t^n = (1 - t)^{-χ(X)}` through `t^{n_max}`, the right side
/// expanded with the power-series engine.
pub fn euler_generating_check(
    x: &SimplicialSet,
    n_max: usize,
    budget: Budget,
    source: &mut dyn SymSource,
) -> Result<EulerReport> {
    if budget.max_dim.is_some() || x.skeleton().is_some() {
        return Err(Error::InvalidInput("Euler characteristics need complete symmetric powers".into()));
    }
    let chi = euler_characteristic(x)?;
    let series = PowerSeries::from_i64(&[1, -1], n_max).pow_rational(&BigRational::from_integer((-chi).into()))?;
    let expected = series
        .integer_coeffs()
        .ok_or_else(|| Error::Invariant("(1 - t)^{-χ} has non-integer coefficients".into()))?;
    let mut report = EulerReport { space: x.name().to_string(), chi, sym_chi: Vec::new(), expected, budget_stop: None };
    for n in 0..=n_max {
        match source.sym_power(x, n, budget) {
            Err(Error::BudgetExceeded { .. }) => {
                report.budget_stop = Some(n);
                break;
            }
            other => report.sym_chi.push(euler_characteristic(&other?)?),
        }
    }
    Ok(report)
}
