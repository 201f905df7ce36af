//! Binomial gcds and `p`-adic valuations of factorials.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::counts::smallest_prime_factor;
use crate::error::{Error, Result};

/// `val_p(n!)` by Legendre's formula.
pub fn legendre(n: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut m = n / p;
    while m > 0 {
        v += m;
        m /= p;
    }
    v
}

/// `(p, k)` with `n = p^k`, `k ≥ 1`, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let p = smallest_prime_factor(n)?;
    let mut r = n;
    let mut k = 0;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while let Some(p) = smallest_prime_factor(n) {
        out.push(p);
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialGcd {
    pub n: u64,
    pub gcd: u64,
    pub prime_power: Option<(u64, u32)>,
    /// `gcd = p` when `n = p^k`, and `1` otherwise.
    pub dichotomy_holds: bool,
}

/// `gcd_{1 ≤ i ≤ n-1} binom(n, i)`, via Kummer's valuations at the primes
/// dividing `binom(n, 1) = n`.
pub fn gcd_binomials(n: u64) -> Result<BinomialGcd> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("gcd of binomials needs n >= 2, got {n}")));
    }
    let mut gcd = 1u64;
    for p in prime_factors(n) {
        let vn = legendre(n, p);
        let v = (1..n).map(|i| vn - legendre(i, p) - legendre(n - i, p)).min().unwrap_or(0);
        gcd *= p.pow(v as u32);
    }
    let prime_power = prime_power(n);
    let expected = prime_power.map_or(1, |(p, _)| p);
    Ok(BinomialGcd { n, gcd, prime_power, dichotomy_holds: gcd == expected })
}

/// Direct evaluation with big integers, for cross-checks at small `n`.
pub fn gcd_binomials_direct(n: u64) -> BigUint {
    let mut g = BigUint::zero();
    let mut b = BigUint::one();
    for i in 1..n {
        b = b * BigUint::from(n - i + 1) / BigUint::from(i);
        g = g.gcd(&b);
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorialValuation {
    pub p: u64,
    pub k: u32,
    /// `val_p(p^k!)` by Legendre's formula.
    pub valuation: u64,
    /// `(p^k - 1) / (p - 1)`.
    pub closed_form: u64,
    /// `p^k! / (p! (p^{k-1}!)^p)` is an integer prime to `p` (`k ≥ 1`).
    pub cofactor_coprime: Option<bool>,
    pub holds: bool,
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Legendre valuation of `p^k!` against its closed form, and the
/// coprimality of `p^k! / (p! (p^{k-1}!)^p)` by direct evaluation.
pub fn valp_prime_power_factorial(p: u64, k: u32) -> Result<FactorialValuation> {
    if smallest_prime_factor(p) != Some(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let pk = p
        .checked_pow(k)
        .filter(|&v| v <= 1 << 20)
        .ok_or_else(|| Error::InvalidInput(format!("{p}^{k} is too large")))?;
    let valuation = legendre(pk, p);
    let closed_form = (pk - 1) / (p - 1);
    let cofactor_coprime = (k >= 1).then(|| {
        let denom = factorial(p) * factorial(pk / p).pow(p as u32);
        let (q, r) = factorial(pk).div_rem(&denom);
        r.is_zero() && !(q % p).is_zero()
    });
    let holds = valuation == closed_form && cofactor_coprime.unwrap_or(true);
    Ok(FactorialValuation { p, k, valuation, closed_form, cofactor_coprime, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_checked_gcds() {
        assert_eq!(gcd_binomials(8).unwrap().gcd, 2);
        assert_eq!(gcd_binomials(9).unwrap().gcd, 3);
        assert_eq!(gcd_binomials(12).unwrap().gcd, 1);
        assert!(gcd_binomials(1).is_err());
    }

    #[test]
    fn valuation_agrees_with_direct_gcd() {
        for n in 2..=120u64 {
            assert_eq!(BigUint::from(gcd_binomials(n).unwrap().gcd), gcd_binomials_direct(n), "n = {n}");
        }
    }

    #[test]
    fn legendre_values() {
        assert_eq!(valp_prime_power_factorial(2, 3).unwrap().valuation, 7);
        assert_eq!(valp_prime_power_factorial(3, 2).unwrap().valuation, 4);
        assert!(valp_prime_power_factorial(4, 2).is_err());
    }

    #[test]
    fn cofactor_35() {
        // 8! / (2! (4!)^2) = 35
        let denom = factorial(2) * factorial(4).pow(2);
        assert_eq!(factorial(8) / denom, BigUint::from(35u32));
        assert_eq!(valp_prime_power_factorial(2, 3).unwrap().cofactor_coprime, Some(true));
    }
}
