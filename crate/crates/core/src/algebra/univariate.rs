//! Rational roots of univariate polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::MultiPoly;
use super::rational::{lcm_of_denominators, Rational};
use crate::error::{Error, Result};

/// All rational roots of a nonzero polynomial in a single variable, with
/// multiplicities, sorted increasingly.
///
/// A constant polynomial has no roots. The polynomial may be written over any
/// signature as long as only one variable occurs.
pub fn univariate_rational_roots(p: &MultiPoly) -> Result<Vec<(Rational, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroInput("univariate_rational_roots"));
    }
    let vars = p.variables();
    match vars.len() {
        0 => Ok(Vec::new()),
        1 => Ok(rational_roots(&p.to_univariate(vars[0])?)),
        _ => Err(Error::InvalidInput(format!("{p} is not univariate"))),
    }
}

/// Rational roots of `Σ coeffs[k] s^k` (low degree first).
pub fn rational_roots(coeffs: &[Rational]) -> Vec<(Rational, u32)> {
    let mut poly = trim(integral(coeffs));
    let mut roots: Vec<(Rational, u32)> = Vec::new();

    let zero_mult = poly.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 && zero_mult < poly.len() {
        roots.push((Rational::zero(), zero_mult as u32));
        poly.drain(..zero_mult);
    }

    while poly.len() > 1 {
        let lead = poly.last().unwrap().abs();
        let tail = poly[0].abs();
        let mut found = None;
        'search: for q in divisors(&lead) {
            for p in divisors(&tail) {
                for cand in [Rational::new(p.clone(), q.clone()), Rational::new(-p.clone(), q.clone())] {
                    if eval_int(&poly, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let Some(root) = found else { break };
        let mut mult = 0;
        while let Some(q) = deflate(&poly, &root) {
            poly = q;
            mult += 1;
        }
        roots.push((root, mult));
    }
    roots.sort();
    roots
}

fn integral(coeffs: &[Rational]) -> Vec<BigInt> {
    let den = lcm_of_denominators(coeffs);
    coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect()
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn eval_int(poly: &[BigInt], x: &Rational) -> Rational {
    poly.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
}

/// Divide by `(q s - p)` for `root = p/q`, keeping integer coefficients.
fn deflate(poly: &[BigInt], root: &Rational) -> Option<Vec<BigInt>> {
    if poly.len() < 2 || !eval_int(poly, root).is_zero() {
        return None;
    }
    let (p, q) = (root.numer().clone(), root.denom().clone());
    // Synthetic division by (q s - p) from the top.
    let n = poly.len() - 1;
    let mut out = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..n).rev() {
        let c = &poly[k + 1] + &carry * &p;
        let (d, r) = c.div_rem(&q);
        if !r.is_zero() {
            return None;
        }
        out[k] = d.clone();
        carry = d;
    }
    Some(out)
}

/// Positive divisors of `|n|` (with `0` treated as having divisor `1`).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() || n.is_one() {
        return vec![BigInt::one()];
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut d = BigInt::from(2u32);
    while &d * &d <= rest && d.to_u64().is_some_and(|v| v < 1_000_000) {
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1u32;
    }
    if !rest.is_one() {
        primes.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for dv in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
