//! Theorem-level checks assembled from the other modules: stabilization
//! ranges of `α_n` in homology, connectivity of the cofibres
//! `Sym^n S^k / Sym^{n-1} S^k`, `H_1` of symmetric powers, and the Euler
//! characteristic generating function.

mod checks;
mod stability;

use std::io::Write;

use crate::error::Result;
use crate::simplicial::{self, Budget, SimplicialSet};

pub use checks::{
    check_h1_abelianization, check_lemma24, euler_generating_check, ConnectivityReport, EulerReport, H1Report, H1Row,
};
pub use stability::{check_stability, DegreeVerdict, Expectation, StabilityReport};

/// Where symmetric powers come from; lets callers interpose a cache.
pub trait SymSource {
    fn sym_power(&mut self, x: &SimplicialSet, n: usize, budget: Budget) -> Result<SimplicialSet>;
}

/// Builds every symmetric power afresh.
#[derive(Clone, Copy, Debug, Default)]
pub struct Direct;

impl SymSource for Direct {
    fn sym_power(&mut self, x: &SimplicialSet, n: usize, budget: Budget) -> Result<SimplicialSet> {
        simplicial::sym_power(x, n, budget)
    }
}

/// Tabular reports.
pub trait CsvReport {
    fn header() -> &'static [&'static str];
    fn records(&self) -> Vec<Vec<String>>;

    fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_records(out, Self::header(), &self.records())
    }
}

pub(crate) fn write_records<W: Write>(out: W, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| crate::Error::Io(std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
