//! Sparse multivariate polynomials over ℚ.
//!
//! Terms live in a `BTreeMap` keyed by dense exponent vectors aligned with the
//! polynomial's [`Signature`]. The map order (lexicographic on exponents, first
//! variable most significant) doubles as the monomial order for division.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, gcd_of_numerators, lcm_of_denominators, Rational};
use super::signature::Signature;
use crate::error::{Error, Result};

/// Exponent vector aligned with a signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().copied().enumerate().filter(|&(_, e)| e > 0)
    }

    /// Graded comparison used for printing: total degree, then lexicographic.
    fn graded_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    pub(crate) fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, e) in self.support() {
            if e == 1 {
                parts.push(names[i].clone());
            } else {
                parts.push(format!("{}^{}", names[i], e));
            }
        }
        parts.join("*")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    sig: Signature,
    terms: BTreeMap<Monomial, Rational>,
}

/// The arithmetic operation requested from [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    ExactDivide,
}

/// Checked binary arithmetic: signatures must agree and division must be exact.
pub fn poly_arith(p: &MultiPoly, q: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    p.sig.check_same(&q.sig)?;
    match op {
        PolyOp::Add => Ok(p + q),
        PolyOp::Mul => Ok(p * q),
        PolyOp::ExactDivide => p.exact_div(q),
    }
}

impl MultiPoly {
    pub fn zero(sig: &Signature) -> Self {
        MultiPoly {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(sig: &Signature, c: Rational) -> Self {
        let mut p = Self::zero(sig);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(sig.len()), c);
        }
        p
    }

    pub fn one(sig: &Signature) -> Self {
        Self::constant(sig, Rational::one())
    }

    pub fn var(sig: &Signature, i: usize) -> Self {
        Self::monomial(sig, Monomial::var(sig.len(), i), Rational::one())
    }

    pub fn var_named(sig: &Signature, name: &str) -> Result<Self> {
        let i = sig
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(sig, i))
    }

    pub fn monomial(sig: &Signature, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), sig.len(), "monomial arity");
        let mut p = Self::zero(sig);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(sig: &Signature, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(sig);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Variables occurring with positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.sig.len()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    /// Leading term under the map order (lexicographic).
    pub fn lex_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        MultiPoly {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        MultiPoly {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.sig);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.sig);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut d = m.clone();
                d.0[i] -= 1;
                out.add_term(d, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Replace variable `i` by the polynomial `value`.
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> Result<Self> {
        self.sig.check_same(&value.sig)?;
        let maxdeg = self.degree_in(i) as usize;
        let mut powers = vec![Self::one(&self.sig)];
        for k in 1..=maxdeg {
            powers.push(&powers[k - 1] * value);
        }
        let mut out = Self::zero(&self.sig);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.0[i] as usize;
            rest.0[i] = 0;
            out = &out + &powers[e].mul_monomial(&rest, c);
        }
        Ok(out)
    }

    /// Evaluate at a rational point (one value per signature variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.sig.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.support() {
                t *= num_traits::pow(point[i].clone(), e as usize);
            }
            acc += t;
        }
        acc
    }

    /// Move the polynomial into `target`, mapping variable `i` to `map[i]`.
    pub fn embed(&self, target: &Signature, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.sig.len());
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, k) in m.support() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Embed by matching variable names; every used variable must exist in `target`.
    pub fn embed_by_name(&self, target: &Signature) -> Result<Self> {
        let mut map = Vec::with_capacity(self.sig.len());
        for (i, n) in self.sig.names().iter().enumerate() {
            match target.index_of(n) {
                Some(j) => map.push(j),
                None if self.degree_in(i) == 0 => map.push(usize::MAX),
                None => return Err(Error::UnknownVariable(n.clone())),
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, k) in m.support() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Division with remainder under the lexicographic map order.
    pub fn div_rem(&self, q: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        self.sig.check_same(&q.sig)?;
        let (lm, lc) = q.lex_leading().ok_or(Error::ZeroInput("division"))?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut quot = Self::zero(&self.sig);
        let mut rem = Self::zero(&self.sig);
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let qm = m.div(&lm);
                let qc = c / &lc;
                p = &p - &q.mul_monomial(&qm, &qc);
                quot.add_term(qm, qc);
            } else {
                p.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        Ok((quot, rem))
    }

    /// Exact quotient `self / q`, or [`Error::InexactDivision`].
    pub fn exact_div(&self, q: &MultiPoly) -> Result<MultiPoly> {
        self.try_exact_div(q)?.ok_or(Error::InexactDivision)
    }

    /// `Some(self / q)` when `q` divides `self`, `None` otherwise.
    pub fn try_exact_div(&self, q: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.sig.check_same(&q.sig)?;
        let (lm, lc) = q.lex_leading().ok_or(Error::ZeroInput("exact division"))?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut quot = Self::zero(&self.sig);
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let qm = m.div(&lm);
            let qc = c / &lc;
            p = &p - &q.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Rational content: `self = content * primitive` with `primitive` integral,
    /// coprime coefficients and a positive lex-leading coefficient.
    pub fn content_primitive(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let den = lcm_of_denominators(self.terms.values());
        let num = gcd_of_numerators(self.terms.values().map(|c| c * Rational::from_integer(den.clone())).collect::<Vec<_>>().iter());
        let mut content = Rational::new(num, den);
        if self.lex_leading().unwrap().1.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        (content, prim)
    }

    /// Scale so that the leading coefficient under `cmp` is one.
    pub fn monic_by(&self, leading: &Monomial) -> MultiPoly {
        let c = self.coeff(leading);
        self.scale(&c.recip())
    }

    /// Univariate coefficient list (low degree first) in variable `i`;
    /// fails when another variable occurs.
    pub fn to_univariate(&self, i: usize) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.degree_in(i) as usize + 1];
        for (m, c) in &self.terms {
            if m.support().any(|(j, _)| j != i) {
                return Err(Error::InvalidInput(format!(
                    "expected a univariate polynomial in `{}`",
                    self.sig.name(i)
                )));
            }
            out[m.0[i] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_univariate(sig: &Signature, i: usize, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(sig);
        for (k, c) in coeffs.iter().enumerate() {
            let mut m = Monomial::one(sig.len());
            m.0[i] = k as u32;
            p.add_term(m, c.clone());
        }
        p
    }

    /// Terms in printing order: graded, highest first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.graded_cmp(a.0));
        v
    }

    /// Graded-lexicographic leading monomial (the first printed term).
    pub fn graded_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.graded_cmp(b.0))
    }

    pub fn integer_coefficients(&self) -> Option<Vec<(Monomial, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.is_integer().then(|| (m.clone(), c.to_integer())))
            .collect()
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.sig.check_same(&rhs.sig).expect("signature mismatch in add");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.sig.check_same(&rhs.sig).expect("signature mismatch in sub");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.sig.check_same(&rhs.sig).expect("signature mismatch in mul");
        let mut out = MultiPoly::zero(&self.sig);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.sig.names();
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let body = if m.is_one() {
                fmt_rational(&a)
            } else if a.is_one() {
                m.fmt_with(names)
            } else {
                format!("{}*{}", fmt_rational(&a), m.fmt_with(names))
            };
            match (k, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body)
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body)
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body)
                }
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use proptest::prelude::*;

    fn xy() -> Signature {
        Signature::x_vars(&["x", "y"]).unwrap()
    }

    #[test]
    fn expansion_examples() {
        let s = Signature::s_params(1);
        let sp1 = &MultiPoly::var(&s, 0) + &MultiPoly::one(&s);
        let sq = poly_arith(&sp1, &sp1, PolyOp::Mul).unwrap();
        assert_eq!(sq.to_string(), "s^2 + 2*s + 1");
        assert_eq!(poly_arith(&sq, &sp1, PolyOp::ExactDivide).unwrap(), sp1);

        let sig = xy();
        let x = MultiPoly::var(&sig, 0);
        let y = MultiPoly::var(&sig, 1);
        let p = poly_arith(&(&x + &y), &(&x - &y), PolyOp::Mul).unwrap();
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn errors() {
        let s = Signature::s_params(1);
        let sp = MultiPoly::var(&s, 0);
        let x = MultiPoly::var(&xy(), 0);
        assert!(matches!(
            poly_arith(&sp, &x, PolyOp::Add),
            Err(Error::SignatureMismatch(_))
        ));
        let two = &sp + &MultiPoly::one(&s);
        assert_eq!(
            poly_arith(&sp, &two, PolyOp::ExactDivide),
            Err(Error::InexactDivision)
        );
    }

    #[test]
    fn content_and_substitution() {
        let s = Signature::s_params(2);
        let s1 = MultiPoly::var(&s, 0);
        let s2 = MultiPoly::var(&s, 1);
        let p = &(&s1.scale(&rat(2, 3)) + &s2.scale(&rat(4, 3))) + &MultiPoly::constant(&s, int(-2));
        let (c, prim) = p.content_primitive();
        assert_eq!(c, rat(2, 3));
        assert_eq!(prim.to_string(), "s1 + 2*s2 - 3");
        let sub = p.substitute(0, &s2).unwrap();
        assert_eq!(sub.to_string(), "2*s2 - 2");
        assert_eq!(p.eval(&[int(1), int(1)]), int(0));
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -5i64..6), 0..5).prop_map(|ts| {
            let sig = Signature::x_vars(&["x", "y"]).unwrap();
            MultiPoly::from_terms(
                &sig,
                ts.into_iter()
                    .map(|((a, b), c)| (Monomial(vec![a, b]), int(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        }

        #[test]
        fn exact_division_inverts_product(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            let prod = &p * &q;
            prop_assert_eq!(prod.exact_div(&q).unwrap(), p);
        }
    }
}
