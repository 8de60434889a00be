//! Integer linear forms `a·s + b` and extraction of rational linear factors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, MultiPoly};
use super::rational::{lcm_of_denominators, Rational};
use super::signature::Signature;
use super::univariate::rational_roots;
use crate::error::{Error, Result};

/// `a_1 s_1 + … + a_r s_r + b` with integer data, reduced by content and
/// sign-normalized so the first nonzero `a_i` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<BigInt>,
    constant: BigInt,
    multiplicity: u32,
}

impl LinearForm {
    pub fn new(coeffs: Vec<BigInt>, constant: BigInt, multiplicity: u32) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("linear form with a = 0".into()));
        }
        if multiplicity == 0 {
            return Err(Error::InvalidInput("multiplicity must be positive".into()));
        }
        let g = coeffs
            .iter()
            .chain(std::iter::once(&constant))
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lead_neg = coeffs.iter().find(|c| !c.is_zero()).unwrap().is_negative();
        let g = if lead_neg { -g } else { g };
        Ok(LinearForm {
            coeffs: coeffs.iter().map(|c| c / &g).collect(),
            constant: constant / &g,
            multiplicity,
        })
    }

    pub fn from_ints(coeffs: &[i64], constant: i64) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(constant), 1)
    }

    /// Read a polynomial of total degree one.
    pub fn from_poly(p: &MultiPoly) -> Result<Self> {
        if p.total_degree() != 1 {
            return Err(Error::InvalidInput(format!("{p} is not linear")));
        }
        let r = p.signature().len();
        let den = lcm_of_denominators(p.terms().map(|(_, c)| c));
        let scale = Rational::from_integer(den);
        let mut coeffs = vec![BigInt::zero(); r];
        let mut constant = BigInt::zero();
        for (m, c) in p.terms() {
            let v = (c * &scale).to_integer();
            match m.support().next() {
                Some((i, _)) => coeffs[i] = v,
                None => constant = v,
            }
        }
        Self::new(coeffs, constant, 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }


    /// Same hyperplane, ignoring multiplicity.
    pub fn same_hyperplane(&self, other: &LinearForm) -> bool {
        self.coeffs == other.coeffs && self.constant == other.constant
    }

    pub fn to_poly(&self, sig: &Signature) -> MultiPoly {
        assert_eq!(sig.len(), self.coeffs.len());
        let mut p = MultiPoly::constant(sig, Rational::from_integer(self.constant.clone()));
        for (i, a) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::var(sig.len(), i), Rational::from_integer(a.clone()));
        }
        p
    }

    /// At `r == 1`: the root `-b/a`.
    pub fn root(&self) -> Option<Rational> {
        (self.coeffs.len() == 1).then(|| Rational::new(-self.constant.clone(), self.coeffs[0].clone()))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = Signature::s_params(self.coeffs.len());
        write!(f, "{}", self.to_poly(&sig))
    }
}

/// `p = constant · ∏ forms^multiplicity · remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub constant: Rational,
    pub forms: Vec<LinearForm>,
    /// Integral, primitive, without rational linear factors; `1` when fully factored.
    pub remainder: MultiPoly,
}

impl Factorization {
    /// Multiply everything back together.
    pub fn expand(&self) -> MultiPoly {
        let sig = self.remainder.signature();
        let mut p = self.remainder.scale(&self.constant);
        for f in &self.forms {
            p = &p * &f.to_poly(sig).pow(f.multiplicity);
        }
        p
    }

    pub fn is_complete(&self) -> bool {
        self.remainder.is_constant()
    }
}

/// Split off every rational linear factor of a nonzero polynomial.
///
/// Works variable by variable: factors with `a_k ≠ 0` are found by reading
/// off rational roots in `s_k` over a base point and its unit shifts, then
/// confirmed by exact division. Forms are returned sorted.
pub fn linear_factorization(p: &MultiPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroInput("linear_factorization"));
    }
    let sig = p.signature().clone();
    let mut rem = p.clone();
    let mut found: BTreeMap<(Vec<BigInt>, BigInt), u32> = BTreeMap::new();

    for k in 0..sig.len() {
        if rem.degree_in(k) == 0 {
            continue;
        }
        for cand in candidate_forms(&rem, k) {
            let lp = cand.to_poly(&sig);
            while let Some(q) = rem.try_exact_div(&lp)? {
                rem = q;
                *found
                    .entry((cand.coeffs.clone(), cand.constant.clone()))
                    .or_insert(0) += 1;
            }
        }
    }

    let forms = found
        .into_iter()
        .map(|((a, b), m)| LinearForm {
            coeffs: a,
            constant: b,
            multiplicity: m,
        })
        .collect();

    let (constant, remainder) = if rem.is_constant() {
        (rem.as_constant().unwrap(), MultiPoly::one(&sig))
    } else {
        rem.content_primitive()
    };
    Ok(Factorization {
        constant,
        forms,
        remainder,
    })
}

/// Candidate linear factors involving variable `k`.
fn candidate_forms(p: &MultiPoly, k: usize) -> Vec<LinearForm> {
    let r = p.signature().len();
    let others: Vec<usize> = (0..r).filter(|&j| j != k).collect();
    let lc = leading_coeff_in(p, k);

    // Base point where the leading coefficient in s_k survives at the point
    // and at each unit shift, so every factor with a_k ≠ 0 leaves a root.
    let base = find_base_point(&lc, &others, r);
    let roots_at = |pt: &[Rational]| -> Vec<Rational> {
        let coeffs = specialize(p, k, pt);
        rational_roots(&coeffs).into_iter().map(|(x, _)| x).collect()
    };
    let r0 = roots_at(&base);
    if r0.is_empty() {
        return Vec::new();
    }
    let mut shifted_roots = Vec::with_capacity(others.len());
    for &j in &others {
        let mut pt = base.clone();
        pt[j] += Rational::one();
        shifted_roots.push(roots_at(&pt));
    }

    let mut out = Vec::new();
    for rho0 in &r0 {
        // s_k = rho0 + Σ_j (rho_j − rho0)(s_j − base_j)
        let mut combos: Vec<Vec<Rational>> = vec![Vec::new()];
        for roots in &shifted_roots {
            let mut next = Vec::new();
            for c in &combos {
                for rj in roots {
                    let mut c2 = c.clone();
                    c2.push(rj - rho0);
                    next.push(c2);
                }
            }
            combos = next;
        }
        for slopes in combos {
            let mut coeffs = vec![Rational::zero(); r];
            coeffs[k] = Rational::one();
            let mut constant = -rho0.clone();
            for (idx, &j) in others.iter().enumerate() {
                coeffs[j] = -slopes[idx].clone();
                constant += &slopes[idx] * &base[j];
            }
            let den = lcm_of_denominators(coeffs.iter().chain(std::iter::once(&constant)));
            let sc = Rational::from_integer(den);
            let a = coeffs.iter().map(|c| (c * &sc).to_integer()).collect();
            let b = (constant * &sc).to_integer();
            if let Ok(f) = LinearForm::new(a, b, 1) {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
    }
    out
}

fn leading_coeff_in(p: &MultiPoly, k: usize) -> MultiPoly {
    let d = p.degree_in(k);
    MultiPoly::from_terms(
        p.signature(),
        p.terms().filter(|(m, _)| m.0[k] == d).map(|(m, c)| {
            let mut m = m.clone();
            m.0[k] = 0;
            (m, c.clone())
        }),
    )
}

fn find_base_point(lc: &MultiPoly, others: &[usize], r: usize) -> Vec<Rational> {
    let bound = lc.total_degree() as i64 * (others.len() as i64 + 1) + 1;
    let ok = |pt: &[Rational]| {
        if lc.eval(pt).is_zero() {
            return false;
        }
        others.iter().all(|&j| {
            let mut q = pt.to_vec();
            q[j] += Rational::one();
            !lc.eval(&q).is_zero()
        })
    };
    // Small grid search; a nonzero polynomial cannot vanish on the whole grid.
    let mut idx = vec![0i64; others.len()];
    loop {
        let mut pt = vec![Rational::zero(); r];
        for (n, &j) in others.iter().enumerate() {
            pt[j] = Rational::from_integer(BigInt::from(idx[n]));
        }
        if ok(&pt) {
            return pt;
        }
        let mut n = 0;
        loop {
            if n == idx.len() {
                return vec![Rational::zero(); r];
            }
            idx[n] += 1;
            if idx[n] <= bound {
                break;
            }
            idx[n] = 0;
            n += 1;
        }
    }
}

/// Coefficients in `s_k` after fixing the other variables at `pt`.
fn specialize(p: &MultiPoly, k: usize, pt: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.degree_in(k) as usize + 1];
    for (m, c) in p.terms() {
        let mut v = c.clone();
        for (i, e) in m.support() {
            if i != k {
                v *= num_traits::pow(pt[i].clone(), e as usize);
            }
        }
        out[m.0[k] as usize] += v;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use proptest::prelude::*;

    fn lf(a: &[i64], b: i64) -> LinearForm {
        LinearForm::from_ints(a, b).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(lf(&[-4, 2], -6), lf(&[2, -1], 3));
        assert_eq!(lf(&[2], 2).to_string(), "s + 1");
        assert!(LinearForm::from_ints(&[0, 0], 1).is_err());
    }

    #[test]
    fn univariate_example() {
        let sig = Signature::s_params(1);
        let p = MultiPoly::from_univariate(&sig, 0, &[int(3), int(9), int(6)]);
        let f = linear_factorization(&p).unwrap();
        assert_eq!(f.constant, int(3));
        assert_eq!(f.forms, vec![lf(&[1], 1), lf(&[2], 1)]);
        assert!(f.is_complete());
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn bivariate_example() {
        let sig = Signature::s_params(2);
        let p = &lf(&[1, 1], 2).to_poly(&sig) * &lf(&[1, 0], 1).to_poly(&sig);
        let f = linear_factorization(&p).unwrap();
        assert_eq!(f.forms, vec![lf(&[1, 0], 1), lf(&[1, 1], 2)]);
        assert!(f.is_complete());
    }

    #[test]
    fn irreducible_quadratic_is_remainder() {
        let sig = Signature::s_params(1);
        let p = MultiPoly::from_univariate(&sig, 0, &[int(1), int(0), int(1)]);
        let f = linear_factorization(&p).unwrap();
        assert!(f.forms.is_empty());
        assert_eq!(f.remainder, p);
        assert!(matches!(
            linear_factorization(&MultiPoly::zero(&sig)),
            Err(Error::ZeroInput(_))
        ));
    }

    #[test]
    fn mixed_multiplicities_and_remainder() {
        let sig = Signature::s_params(3);
        let s = |i| MultiPoly::var(&sig, i);
        let nonlin = &(&s(0) * &s(1)) + &s(2);
        let p = [
            lf(&[1, 1, 1], 3).to_poly(&sig).pow(2),
            lf(&[0, 2, 0], 1).to_poly(&sig),
            lf(&[1, -1, 0], 0).to_poly(&sig),
            nonlin.clone(),
        ]
        .iter()
        .fold(MultiPoly::constant(&sig, int(-7)), |a, b| &a * b);
        let f = linear_factorization(&p).unwrap();
        assert_eq!(f.expand(), p);
        assert_eq!(f.forms.len(), 3);
        assert_eq!(f.remainder.total_degree(), 2);
    }

    proptest! {
        #[test]
        fn reconstructs_input(forms in prop::collection::vec((prop::collection::vec(-3i64..4, 2), -4i64..5), 1..4), c in 1i64..5) {
            let sig = Signature::s_params(2);
            let mut p = MultiPoly::constant(&sig, int(c));
            let mut n = 0;
            for (a, b) in &forms {
                if let Ok(f) = LinearForm::from_ints(a, *b) {
                    p = &p * &f.to_poly(&sig);
                    n += 1;
                }
            }
            let f = linear_factorization(&p).unwrap();
            prop_assert_eq!(f.expand(), p);
            prop_assert!(f.is_complete());
            prop_assert_eq!(f.forms.iter().map(|l| l.multiplicity()).sum::<u32>(), n);
        }
    }
}
