//! Certified growth bound for the finite differences `c_n - c_{n-1}`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::{self, RatPoly};
use super::rational::{connectedness_check, expand_zeta, finite_difference_series, RationalZeta};
use crate::error::{Error, Result};

/// Bisection stops once the enclosure of β is this narrow relative to its
/// upper end.
const RELATIVE_WIDTH: u32 = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub n: usize,
    pub c_n: BigInt,
    pub delta: BigInt,
    pub bound: BigRational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleBound {
    /// β lies in `[beta_lower, beta_upper]`; equal ends mean β is exact.
    pub beta_lower: BigRational,
    pub beta_upper: BigRational,
    /// The constant `C`, valid for `1 <= n <= N`.
    pub constant: BigRational,
    pub rows: Vec<BoundRow>,
    pub holds: bool,
}

impl PoleBound {
    pub fn beta_is_exact(&self) -> bool {
        self.beta_lower == self.beta_upper
    }
}

/// All roots of `p` (degree ≥ 1) lie strictly inside the unit disk, by the
/// Schur–Cohn recursion over ℚ.
fn schur_stable(p: &[BigRational]) -> bool {
    let mut p: RatPoly = p.to_vec();
    poly::trim(&mut p);
    while p.len() > 1 {
        let n = p.len() - 1;
        let (a0, an) = (p[0].clone(), p[n].clone());
        if a0.abs() >= an.abs() {
            return false;
        }
        // (a_n p(z) - a_0 p*(z)) / z, p* the reversal; leading a_n^2 - a_0^2 != 0
        p = (1..=n).map(|k| &an * &p[k] - &a0 * &p[n - k]).collect();
    }
    true
}

/// All roots of `p` have modulus `< r`.
fn roots_inside(p: &[BigInt], r: &BigRational) -> bool {
    schur_stable(&poly::scale_argument(&poly::to_rational(p), r))
}

/// Enclosure of the largest root modulus of a polynomial with no rational
/// roots (degree ≥ 2).
fn max_root_modulus(p: &[BigInt]) -> (BigRational, BigRational) {
    let d = p.len() - 1;
    let lead = BigRational::from_integer(p[d].abs());
    // Cauchy bound
    let mut hi = BigRational::one()
        + p[..d].iter().map(|c| BigRational::from_integer(c.abs()) / &lead).max().unwrap_or_else(BigRational::zero);
    let mut lo = BigRational::zero();
    let two = BigRational::from_integer(2.into());
    let tolerance = BigRational::new(BigInt::one(), BigInt::one() << RELATIVE_WIDTH);
    while &hi - &lo > &hi * &tolerance {
        let mid = (&lo + &hi) / &two;
        if roots_inside(p, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Largest modulus of the inverse roots of the denominator of `(1 - t)ζ`,
/// and the bound `|c_n - c_{n-1}| ≤ C β^n` checked for `1 ≤ n ≤ N`.
///
/// With `D = d_0 Π_{j=1}^k (1 - α_j t)`, the coefficients of `1/D` are
/// complete homogeneous sums, bounded by `binom(n+k-1, k-1) β^n / |d_0|`,
/// so `C = binom(N+k-1, k-1) Σ_j |a_j| β^{-j} / |d_0|` for the numerator
/// `Σ a_j t^j`. β is replaced by its certified upper end. When `D` is
/// constant, β = 0 and the differences vanish beyond the numerator degree.
pub fn second_pole_bound(z: &RationalZeta, n_max: usize) -> Result<PoleBound> {
    let conn = connectedness_check(z);
    if conn.multiplicity != 1 {
        return Err(Error::InvalidInput(format!(
            "(1 - t) has multiplicity {} in the denominator, expected 1",
            conn.multiplicity
        )));
    }
    let f = finite_difference_series(z, n_max)?;
    let (a, d) = (f.numerator(), f.denominator());
    let k = d.len() - 1;
    let c = expand_zeta(z, n_max)?.integer_coeffs();
    let diffs = expand_zeta(&f, n_max)?.integer_coeffs();
    let (Some(c), Some(diffs)) = (c, diffs) else {
        return Err(Error::NonIntegral("zeta coefficients are not integers".into()));
    };
    let d0 = BigRational::from_integer(d[0].abs());

    let (beta_lower, beta_upper, constant) = if k == 0 {
        let constant = a.iter().skip(1).map(|x| BigRational::from_integer(x.abs()) / &d0).max();
        (BigRational::zero(), BigRational::zero(), constant.unwrap_or_else(BigRational::zero))
    } else {
        // inverse roots of D are the roots of its reversal
        let (rational, rest) = poly::split_rational_roots(&poly::reversed(d));
        let mut lo = rational.iter().map(|r| r.abs()).max().unwrap_or_else(BigRational::zero);
        let mut hi = lo.clone();
        if rest.len() > 1 {
            let (l, h) = max_root_modulus(&rest);
            if h > hi {
                hi = h;
            }
            if l > lo {
                lo = l;
            }
        }
        let width = binomial(BigInt::from(n_max + k - 1), BigInt::from(k - 1));
        let mut sum = BigRational::zero();
        let mut inv = BigRational::one();
        for aj in a {
            sum += BigRational::from_integer(aj.abs()) * &inv;
            inv /= &hi;
        }
        (lo, hi.clone(), sum * BigRational::from_integer(width) / &d0)
    };

    let support = a.len().saturating_sub(1);
    let mut rows = Vec::with_capacity(n_max);
    let mut power = BigRational::one();
    for n in 1..=n_max {
        power *= &beta_upper;
        let bound = if k == 0 {
            if n <= support { constant.clone() } else { BigRational::zero() }
        } else {
            &constant * &power
        };
        let delta = diffs[n].clone();
        let holds = BigRational::from_integer(delta.abs()) <= bound;
        rows.push(BoundRow { n, c_n: c[n].clone(), delta, bound, holds });
    }
    let holds = rows.iter().all(|r| r.holds);
    Ok(PoleBound { beta_lower, beta_upper, constant, rows, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn schur_cohn_basic() {
        // roots ±i/2 inside, roots ±2i outside
        assert!(schur_stable(&[rat(1), rat(0), rat(4)]));
        assert!(!schur_stable(&[rat(4), rat(0), rat(1)]));
        assert!(!schur_stable(&[rat(-1), rat(1)]));
    }

    #[test]
    fn modulus_of_gaussian_roots() {
        // x^2 - 2x + 5 has roots of modulus sqrt(5)
        let (lo, hi) = max_root_modulus(&poly::int_poly(&[5, -2, 1]));
        assert!(&lo * &lo <= rat(5) && rat(5) <= &hi * &hi);
        assert!(&hi - &lo < BigRational::new(1.into(), 1_000_000.into()));
    }

    #[test]
    fn projective_line() {
        let z = RationalZeta::from_i64(Some(2), &[1], &[1, -3, 2]).unwrap();
        let b = second_pole_bound(&z, 10).unwrap();
        assert!(b.beta_is_exact());
        assert_eq!(b.beta_upper, rat(2));
        assert!(b.holds);
        assert!(b.rows.iter().all(|r| r.delta == BigInt::from(2).pow(r.n as u32)));
    }

    #[test]
    fn point_has_zero_beta() {
        let z = RationalZeta::from_i64(None, &[1], &[1, -1]).unwrap();
        let b = second_pole_bound(&z, 5).unwrap();
        assert_eq!(b.beta_upper, rat(0));
        assert!(b.holds && b.rows.iter().all(|r| r.delta.is_zero()));
    }

    #[test]
    fn disconnected_rejected() {
        let z = RationalZeta::from_i64(None, &[1], &[1, -2, 1]).unwrap();
        assert!(second_pole_bound(&z, 3).is_err());
    }
}
