use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A power series truncated after `t^order`, with exact rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PowerSeries {
    /// Series through `t^order`; missing coefficients are zero and extra
    /// ones are dropped.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[BigInt], order: usize) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect(), order)
    }

    pub fn from_i64(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Mismatch(format!("series orders {} and {}", self.order(), other.order())));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// `self / other`; needs a nonzero constant term in `other`.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let b0 = other.coeffs[0].clone();
        if b0.is_zero() {
            return Err(Error::InvalidInput("division by a series with zero constant term".into()));
        }
        let n = self.order();
        let mut q: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &other.coeffs[j] * &q[k - j];
            }
            q.push(acc / &b0);
        }
        Ok(Self { coeffs: q })
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut c: Vec<BigRational> = (1..=n).map(|k| &self.coeffs[k] * rat(k)).collect();
        c.push(BigRational::zero());
        Self { coeffs: c }
    }

    /// `exp(self)`; needs a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidInput("exp needs a zero constant term".into()));
        }
        // n f_n = sum_{k=1}^n k g_k f_{n-k}
        let n = self.order();
        let mut f = vec![BigRational::one()];
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * rat(k) * &f[m - k];
                }
            }
            f.push(acc / rat(m));
        }
        Ok(Self { coeffs: f })
    }

    /// `log(self)`; needs constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidInput("log needs constant term 1".into()));
        }
        // n g_n = n f_n - sum_{k=1}^{n-1} k g_k f_{n-k}
        let n = self.order();
        let mut g = vec![BigRational::zero()];
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * rat(m);
            for k in 1..m {
                if !g[k].is_zero() {
                    acc -= &g[k] * rat(k) * &self.coeffs[m - k];
                }
            }
            g.push(acc / rat(m));
        }
        Ok(Self { coeffs: g })
    }

    /// `self^e` for a rational exponent, as `exp(e log self)`.
    pub fn pow_rational(&self, e: &BigRational) -> Result<Self> {
        self.log()?.scale(e).exp()
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        self.try_add(rhs).expect("series orders must agree")
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self.try_sub(rhs).expect("series orders must agree")
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        self.try_mul(rhs).expect("series orders must agree")
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let one_minus_t = PowerSeries::from_i64(&[1, -1], 5);
        let s = PowerSeries::one(5).try_div(&one_minus_t).unwrap();
        assert_eq!(s.integer_coeffs().unwrap(), vec![BigInt::one(); 6]);
    }

    #[test]
    fn exp_of_t_is_reciprocal_factorials() {
        let e = PowerSeries::from_i64(&[0, 1], 4).exp().unwrap();
        assert_eq!(e.coeff(4), &BigRational::new(1.into(), 24.into()));
    }

    #[test]
    fn log_inverts_exp() {
        let g = PowerSeries::from_i64(&[0, 3, -1, 7], 8);
        assert_eq!(g.exp().unwrap().log().unwrap(), g);
    }

    #[test]
    fn negative_power_of_one_minus_t() {
        // (1 - t)^{-2} = sum (n + 1) t^n
        let s = PowerSeries::from_i64(&[1, -1], 6).pow_rational(&BigRational::from_integer((-2).into())).unwrap();
        let want: Vec<BigInt> = (1..=7).map(BigInt::from).collect();
        assert_eq!(s.integer_coeffs().unwrap(), want);
    }

    #[test]
    fn preconditions() {
        assert!(PowerSeries::one(3).exp().is_err());
        assert!(PowerSeries::zero(3).log().is_err());
        assert!(PowerSeries::one(3).try_div(&PowerSeries::zero(3)).is_err());
    }
}
