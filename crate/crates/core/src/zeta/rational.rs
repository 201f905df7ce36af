use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::counts::{check_prime_power, EigenvalueData};
use super::poly::{self, IntPoly};
use super::series::PowerSeries;
use crate::error::{Error, Result};

/// `ζ(t) = numerator(t) / denominator(t)` in lowest terms, with a positive
/// constant term in the denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalZeta {
    pub q: Option<u64>,
    numerator: IntPoly,
    denominator: IntPoly,
}

impl RationalZeta {
    pub fn new(q: Option<u64>, numerator: IntPoly, denominator: IntPoly) -> Result<Self> {
        if let Some(q) = q {
            check_prime_power(q)?;
        }
        if denominator.first().is_none_or(Zero::is_zero) {
            return Err(Error::InvalidInput("denominator must have a nonzero constant term".into()));
        }
        let (mut num, mut den) = (numerator, denominator);
        poly::trim(&mut num);
        poly::trim(&mut den);
        let g = poly::gcd(&num, &den);
        if !(g.len() == 1 && g[0].is_one()) {
            num = poly::div_exact(&num, &g).expect("gcd divides numerator");
            den = poly::div_exact(&den, &g).expect("gcd divides denominator");
        }
        if den[0].is_negative() {
            num.iter_mut().for_each(|x| *x = -std::mem::take(x));
            den.iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
        Ok(Self { q, numerator: num, denominator: den })
    }

    pub fn from_i64(q: Option<u64>, numerator: &[i64], denominator: &[i64]) -> Result<Self> {
        Self::new(q, poly::int_poly(numerator), poly::int_poly(denominator))
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.denominator
    }

    /// `self · other`, reduced.
    pub fn mul(&self, other: &RationalZeta) -> Result<RationalZeta> {
        RationalZeta::new(
            self.q.or(other.q),
            poly::mul(&self.numerator, &other.numerator),
            poly::mul(&self.denominator, &other.denominator),
        )
    }
}

/// Maclaurin expansion through `t^order`.
pub fn expand_zeta(z: &RationalZeta, order: usize) -> Result<PowerSeries> {
    let num = PowerSeries::from_integers(&z.numerator, order);
    let den = PowerSeries::from_integers(&z.denominator, order);
    num.try_div(&den)
}

/// `(1 - t) ζ(t)`, checked coefficientwise through `t^check_order`: its
/// `n`-th coefficient is `c_n - c_{n-1}`.
pub fn finite_difference_series(z: &RationalZeta, check_order: usize) -> Result<RationalZeta> {
    let f = RationalZeta::new(z.q, poly::mul(&z.numerator, &poly::int_poly(&[1, -1])), z.denominator.clone())?;
    let c = expand_zeta(z, check_order)?;
    let d = expand_zeta(&f, check_order)?;
    for n in 0..=check_order {
        let want = if n == 0 { c.coeff(0).clone() } else { c.coeff(n) - c.coeff(n - 1) };
        if d.coeff(n) != &want {
            return Err(Error::Invariant(format!(
                "coefficient {n} of (1 - t)ζ is {} but c_n - c_(n-1) = {want}",
                d.coeff(n)
            )));
        }
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectedness {
    /// Multiplicity of `(1 - t)` in the reduced denominator.
    pub multiplicity: usize,
    pub connected: bool,
}

/// Connected exactly when `(1 - t)` divides the denominator once.
pub fn connectedness_check(z: &RationalZeta) -> Connectedness {
    let factor = poly::int_poly(&[1, -1]);
    let mut den = z.denominator.clone();
    let mut multiplicity = 0;
    while let Some(q) = poly::div_exact(&den, &factor) {
        if q.is_empty() {
            break;
        }
        den = q;
        multiplicity += 1;
    }
    Connectedness { multiplicity, connected: multiplicity == 1 }
}

/// On-disk zeta document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZetaDocument {
    #[serde(default)]
    pub q: Option<u64>,
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<Vec<Vec<i64>>>>,
}

impl ZetaDocument {
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::malformed(source_name, format!("line {} column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn zeta(&self) -> Result<RationalZeta> {
        RationalZeta::from_i64(self.q, &self.numerator, &self.denominator)
    }

    pub fn eigenvalue_data(&self) -> Result<Option<EigenvalueData>> {
        self.eigenvalues.as_ref().map(|e| EigenvalueData::from_i64(e)).transpose()
    }
}

pub fn load_zeta_file(path: &Path) -> Result<ZetaDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    ZetaDocument::parse(&text, &path.display().to_string())
}
