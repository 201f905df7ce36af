//! Point counts, symmetric-power counts and Frobenius eigenvalue data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{self, IntPoly};
use super::series::PowerSeries;
use super::rational::RationalZeta;
use crate::error::{Error, Result};

/// `N_m = |X(F_{q^m})|` for `m = 1..=M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCounts {
    pub q: Option<u64>,
    counts: Vec<BigInt>,
}

impl PointCounts {
    pub fn new(q: Option<u64>, counts: Vec<BigInt>) -> Result<Self> {
        if let Some(q) = q {
            check_prime_power(q)?;
        }
        if let Some((m, c)) = counts.iter().enumerate().find(|(_, c)| c.is_negative()) {
            return Err(Error::InvalidInput(format!("N_{} = {c} is negative", m + 1)));
        }
        Ok(Self { q, counts })
    }

    pub fn from_i64(q: Option<u64>, counts: &[i64]) -> Result<Self> {
        Self::new(q, counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `N_m`, with `m` starting at one.
    pub fn get(&self, m: usize) -> &BigInt {
        &self.counts[m - 1]
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }
}

pub(crate) fn check_prime_power(q: u64) -> Result<()> {
    let Some(p) = smallest_prime_factor(q) else {
        return Err(Error::InvalidInput(format!("q = {q} is not a prime power")));
    };
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    if r != 1 {
        return Err(Error::InvalidInput(format!("q = {q} is not a prime power")));
    }
    Ok(())
}

pub(crate) fn smallest_prime_factor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

/// `c_0..=c_N` with `n c_n = Σ_{m=1}^n N_m c_{n-m}` and `c_0 = 1`.
pub fn sym_counts_from_counts(p: &PointCounts, n: usize) -> Result<Vec<BigInt>> {
    if p.len() < n {
        return Err(Error::InvalidInput(format!("{} point counts given, {n} needed", p.len())));
    }
    let mut c = vec![BigInt::one()];
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for m in 1..=k {
            acc += p.get(m) * &c[k - m];
        }
        let (q, r) = acc.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::NonIntegral(format!("c_{k} = {acc}/{k}; the point counts are inconsistent")));
        }
        if q.is_negative() {
            return Err(Error::InvalidInput(format!("c_{k} = {q} is negative")));
        }
        c.push(q);
    }
    Ok(c)
}

/// Inverse of [`sym_counts_from_counts`]: `N_n = n c_n - Σ_{m<n} N_m c_{n-m}`.
pub fn counts_from_sym_counts(c: &[BigInt], q: Option<u64>) -> Result<PointCounts> {
    if c.first().is_none_or(|c0| !c0.is_one()) {
        return Err(Error::InvalidInput("c_0 must be 1".into()));
    }
    let mut counts: Vec<BigInt> = Vec::with_capacity(c.len() - 1);
    for n in 1..c.len() {
        let mut v = BigInt::from(n) * &c[n];
        for m in 1..n {
            v -= &counts[m - 1] * &c[n - m];
        }
        counts.push(v);
    }
    PointCounts::new(q, counts)
}

/// Frobenius eigenvalues by cohomological degree. Each degree holds a list
/// of integer polynomials (ascending coefficients); their complex roots,
/// with multiplicity, are the eigenvalues. An integer eigenvalue `a` is the
/// polynomial `[-a, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EigenvalueData {
    pub degrees: Vec<Vec<IntPoly>>,
}

impl EigenvalueData {
    pub fn new(degrees: Vec<Vec<IntPoly>>) -> Result<Self> {
        for (i, polys) in degrees.iter().enumerate() {
            for (j, p) in polys.iter().enumerate() {
                if p.len() < 2 || p.last().is_some_and(Zero::is_zero) {
                    return Err(Error::InvalidInput(format!(
                        "eigenvalues[{i}][{j}] must be a polynomial of degree at least 1 without trailing zeros"
                    )));
                }
            }
        }
        Ok(Self { degrees })
    }

    pub fn from_i64(degrees: &[Vec<Vec<i64>>]) -> Result<Self> {
        Self::new(degrees.iter().map(|d| d.iter().map(|p| poly::int_poly(p)).collect()).collect())
    }

    /// `Σ_i (-1)^i Σ_j α_{ij}^m` for `m = 1..=m_max`, as rationals.
    pub fn signed_power_sums(&self, m_max: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); m_max];
        for (i, polys) in self.degrees.iter().enumerate() {
            for p in polys {
                let s = power_sums(p, m_max);
                for (m, v) in s.into_iter().enumerate() {
                    if i % 2 == 0 {
                        out[m] += v;
                    } else {
                        out[m] -= v;
                    }
                }
            }
        }
        out
    }

    /// `ζ(t) = Π_i det(1 - tF | H^i)^{(-1)^{i+1}}`.
    pub fn zeta(&self, q: Option<u64>) -> Result<RationalZeta> {
        let mut num = vec![BigInt::one()];
        let mut den = vec![BigInt::one()];
        for (i, polys) in self.degrees.iter().enumerate() {
            for p in polys {
                // Π (1 - αt) = t^d p(1/t) / a_d
                let lead = p.last().expect("nonempty").clone();
                let rev: IntPoly = p.iter().rev().cloned().collect();
                let target = if i % 2 == 0 { &mut den } else { &mut num };
                *target = poly::mul(target, &rev);
                let other = if i % 2 == 0 { &mut num } else { &mut den };
                *other = poly::mul(other, &[lead]);
            }
        }
        RationalZeta::new(q, num, den)
    }
}

/// Power sums `p_1..=p_M` of the roots of `a_0 + a_1 x + … + a_d x^d` by
/// Newton's identities.
pub fn power_sums(p: &[BigInt], m_max: usize) -> Vec<BigRational> {
    let d = p.len() - 1;
    let a = |k: usize| BigRational::from_integer(p[k].clone());
    let lead = a(d);
    let mut s: Vec<BigRational> = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        // a_d p_m + Σ_{j=1}^{min(m-1,d)} a_{d-j} p_{m-j} + [m <= d] m a_{d-m} = 0
        let mut acc = BigRational::zero();
        for j in 1..m.min(d + 1) {
            acc += a(d - j) * &s[m - j - 1];
        }
        if m <= d {
            acc += a(d - m) * BigRational::from_integer(m.into());
        }
        s.push(-acc / &lead);
    }
    s
}

/// `N_m` from Frobenius eigenvalues by the Lefschetz trace formula.
pub fn lefschetz_counts(e: &EigenvalueData, q: Option<u64>, m_max: usize) -> Result<PointCounts> {
    let sums = e.signed_power_sums(m_max);
    let mut counts = Vec::with_capacity(m_max);
    for (m, v) in sums.into_iter().enumerate() {
        if !v.is_integer() {
            return Err(Error::NonIntegral(format!("N_{} = {v}", m + 1)));
        }
        counts.push(v.to_integer());
    }
    PointCounts::new(q, counts)
}

/// `N_m = m [t^m] log ζ(t)` for `m = 1..=m_max`.
pub fn counts_of_zeta(z: &RationalZeta, m_max: usize) -> Result<PointCounts> {
    let series = super::rational::expand_zeta(z, m_max)?;
    if !series.coeff(0).is_one() {
        return Err(Error::InvalidInput("zeta function must have constant term 1".into()));
    }
    let log = series.log()?;
    let mut counts = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let v = log.coeff(m) * BigRational::from_integer(m.into());
        if !v.is_integer() {
            return Err(Error::NonIntegral(format!("N_{m} = {v}")));
        }
        counts.push(v.to_integer());
    }
    PointCounts::new(z.q, counts)
}

/// `exp(Σ N_m t^m / m)` through `t^order`.
pub fn zeta_series_of_counts(p: &PointCounts, order: usize) -> Result<PowerSeries> {
    if p.len() < order {
        return Err(Error::InvalidInput(format!("{} point counts given, {order} needed", p.len())));
    }
    let mut g = vec![BigRational::zero()];
    for m in 1..=order {
        g.push(BigRational::new(p.get(m).clone(), m.into()));
    }
    PowerSeries::new(g, order).exp()
}
