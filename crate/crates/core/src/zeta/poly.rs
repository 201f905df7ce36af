//! Dense polynomials with integer or rational coefficients, ascending order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntPoly = Vec<BigInt>;
pub type RatPoly = Vec<BigRational>;

pub fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn int_poly(coeffs: &[i64]) -> IntPoly {
    let mut p: IntPoly = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    trim(&mut p);
    p
}

/// Degree of a trimmed polynomial; `None` for zero.
pub fn degree<T>(p: &[T]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn pow(a: &[BigInt], e: usize) -> IntPoly {
    let mut out = vec![BigInt::one()];
    for _ in 0..e {
        out = mul(&out, a);
    }
    out
}

/// `x^d p(1/x)` for `d = deg p`.
pub fn reversed<T: Clone + Zero>(p: &[T]) -> Vec<T> {
    let mut r: Vec<T> = p.iter().rev().cloned().collect();
    // leading zeros of the reversal are trailing zeros of p's low end
    while r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    r
}

pub fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Exact quotient `a / b` over ℤ, or `None` if `b` does not divide `a`.
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let db = degree(b)?;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    let da = degree(&r)?;
    if da < db {
        return None;
    }
    let lead = &b[db];
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lead);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

fn primitive(p: &[BigInt]) -> IntPoly {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    let lead = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let top = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lead;
        }
        for (j, y) in b.iter().enumerate() {
            r[dr - db + j] -= &top * y;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor over ℤ[t], content included, with positive
/// leading coefficient.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    if x.is_empty() {
        return normalize_sign(y);
    }
    if y.is_empty() {
        return normalize_sign(x);
    }
    let c = content(&x).gcd(&content(&y));
    let (mut x, mut y) = (primitive(&x), primitive(&y));
    while !y.is_empty() {
        let r = primitive(&pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    normalize_sign(x.iter().map(|v| v * &c).collect())
}

fn normalize_sign(mut p: IntPoly) -> IntPoly {
    if p.last().is_some_and(Signed::is_negative) {
        p.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    p
}

pub fn to_rational(p: &[BigInt]) -> RatPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// `p(c·x)`.
pub fn scale_argument(p: &[BigRational], c: &BigRational) -> RatPoly {
    let mut f = BigRational::one();
    p.iter()
        .map(|a| {
            let v = a * &f;
            f *= c;
            v
        })
        .collect()
}

/// Integer polynomial evaluation at a rational point.
pub fn eval(p: &[BigInt], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// Divides out the root `r = num/den` from `p`, i.e. by `den·x - num`.
pub fn deflate(p: &[BigInt], num: &BigInt, den: &BigInt) -> Option<IntPoly> {
    div_exact(p, &[-num.clone(), den.clone()])
}

/// Positive divisors of `|n|` (`n` nonzero), by trial division.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots of an integer polynomial with multiplicity, and the
/// remaining factor free of rational roots.
pub fn split_rational_roots(p: &[BigInt]) -> (Vec<BigRational>, IntPoly) {
    let mut rest = p.to_vec();
    trim(&mut rest);
    let mut roots = Vec::new();
    while rest.first().is_some_and(Zero::is_zero) {
        rest.remove(0);
        roots.push(BigRational::zero());
    }
    'outer: loop {
        if rest.len() < 2 {
            break;
        }
        let a0 = rest[0].clone();
        let an = rest[rest.len() - 1].clone();
        for num in divisors(&a0) {
            for den in divisors(&an) {
                if num.gcd(&den) != BigInt::one() {
                    continue;
                }
                for s in [num.clone(), -num.clone()] {
                    let r = BigRational::new(s.clone(), den.clone());
                    if eval(&rest, &r).is_zero() {
                        rest = deflate(&rest, &s, &den).expect("root divides");
                        rest = primitive(&rest);
                        roots.push(r);
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    (roots, rest)
}
