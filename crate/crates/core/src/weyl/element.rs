use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::WeylSignature;
use crate::algebra::poly::Monomial;
use crate::algebra::rational::fmt_rational;
use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};

/// A normally ordered operator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    sig: WeylSignature,
    terms: BTreeMap<Monomial, Rational>,
}

/// Normally ordered expansion of `a · b` for two normal monomials.
///
/// Only `∂^{β_a} x^{α_b}` needs reordering, which Leibniz gives as
/// `Σ_k C(β,k) C(α,k) k! x^{α−k} ∂^{β−k}` pair by pair.
pub(crate) fn mono_product(pairs: usize, a: &[u32], b: &[u32]) -> Vec<(Monomial, BigInt)> {
    let base: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
    let mut out = vec![(base, BigInt::one())];
    for i in 0..pairs {
        let kmax = a[pairs + i].min(b[i]);
        if kmax == 0 {
            continue;
        }
        let weights = leibniz_weights(a[pairs + i], b[i], kmax);
        let mut next = Vec::with_capacity(out.len() * weights.len());
        for (e, c) in &out {
            for (k, w) in weights.iter().enumerate() {
                let mut e2 = e.clone();
                e2[i] -= k as u32;
                e2[pairs + i] -= k as u32;
                next.push((e2, c * w));
            }
        }
        out = next;
    }
    out.into_iter().map(|(e, c)| (Monomial(e), c)).collect()
}

/// `C(d,k) C(x,k) k!` for `k = 0..=kmax`.
fn leibniz_weights(d: u32, x: u32, kmax: u32) -> Vec<BigInt> {
    let mut w = Vec::with_capacity(kmax as usize + 1);
    let mut cur = BigInt::one();
    w.push(cur.clone());
    for k in 1..=kmax {
        // ratio between consecutive terms: (d-k+1)(x-k+1)/k
        cur = cur * BigInt::from(d - k + 1) * BigInt::from(x - k + 1) / BigInt::from(k);
        w.push(cur.clone());
    }
    w
}

impl WeylElement {
    pub fn zero(sig: &WeylSignature) -> Self {
        WeylElement {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(sig: &WeylSignature, c: Rational) -> Self {
        Self::monomial(sig, Monomial::one(sig.num_vars()), c)
    }

    pub fn one(sig: &WeylSignature) -> Self {
        Self::constant(sig, Rational::one())
    }

    pub fn monomial(sig: &WeylSignature, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), sig.num_vars());
        let mut e = Self::zero(sig);
        e.add_term(m, c);
        e
    }

    /// The generator at layout index `i`.
    pub fn generator(sig: &WeylSignature, i: usize) -> Self {
        Self::monomial(sig, Monomial::var(sig.num_vars(), i), Rational::one())
    }

    pub fn x(sig: &WeylSignature, i: usize) -> Self {
        Self::generator(sig, sig.x(i))
    }

    pub fn d(sig: &WeylSignature, i: usize) -> Self {
        Self::generator(sig, sig.d(i))
    }

    pub fn t(sig: &WeylSignature, j: usize) -> Self {
        Self::generator(sig, sig.t(j))
    }

    pub fn dt(sig: &WeylSignature, j: usize) -> Self {
        Self::generator(sig, sig.dt(j))
    }

    pub fn s(sig: &WeylSignature, j: usize) -> Self {
        Self::generator(sig, sig.s(j))
    }

    pub fn aux(sig: &WeylSignature, k: usize) -> Self {
        Self::generator(sig, sig.aux(k))
    }

    pub fn from_terms(sig: &WeylSignature, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut e = Self::zero(sig);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    /// Lift a commutative polynomial whose variable names are generator names
    /// of `sig` (coordinates, `t`, parameters); names must resolve to
    /// commuting generators.
    pub fn from_poly(sig: &WeylSignature, p: &MultiPoly) -> Result<Self> {
        let psig = p.signature();
        let mut map = Vec::with_capacity(psig.len());
        for (i, name) in psig.names().iter().enumerate() {
            match sig.index_of(name) {
                Some(j) if j < sig.pairs() || j >= 2 * sig.pairs() => map.push(j),
                Some(_) => return Err(Error::InvalidInput(format!("`{name}` is a derivation"))),
                None if p.degree_in(i) == 0 => map.push(usize::MAX),
                None => return Err(Error::UnknownVariable(name.clone())),
            }
        }
        let mut e = Self::zero(sig);
        for (m, c) in p.terms() {
            let mut v = vec![0u32; sig.num_vars()];
            for (i, k) in m.support() {
                v[map[i]] += k;
            }
            e.add_term(Monomial(v), c.clone());
        }
        Ok(e)
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

    pub fn signature(&self) -> &WeylSignature {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
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

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        WeylElement {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Total degree in the non-central generators (`x, ∂, t, ∂_t`).
    pub fn operator_degree(&self) -> u32 {
        let ops = 2 * self.sig.pairs();
        self.terms
            .keys()
            .map(|m| m.0[..ops].iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Total degree in the parameters `s`.
    pub fn s_degree(&self) -> u32 {
        let lo = 2 * self.sig.pairs();
        let hi = lo + self.sig.r();
        self.terms
            .keys()
            .map(|m| m.0[lo..hi].iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Whether any generator from `block` occurs.
    pub fn involves(&self, block: &[usize]) -> bool {
        self.terms
            .keys()
            .any(|m| block.iter().any(|&i| m.0[i] > 0))
    }

    /// Left multiplication by a normal monomial `c · m`.
    pub fn left_mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        let pairs = self.sig.pairs();
        let mut out = Self::zero(&self.sig);
        for (t, k) in &self.terms {
            let ck = c * k;
            for (mm, w) in mono_product(pairs, &m.0, &t.0) {
                out.add_term(mm, &ck * Rational::from_integer(w));
            }
        }
        out
    }

    /// View with the parameters `s` (and auxiliaries) collected into
    /// commutative coefficients: operator monomial ↦ coefficient.
    pub fn coefficient_view(&self) -> BTreeMap<Monomial, BTreeMap<Monomial, Rational>> {
        let ops = 2 * self.sig.pairs();
        let mut out: BTreeMap<Monomial, BTreeMap<Monomial, Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let op = Monomial(m.0[..ops].to_vec());
            let central = Monomial(m.0[ops..].to_vec());
            out.entry(op).or_default().insert(central, c.clone());
        }
        out
    }

    /// Move into another signature by generator names.
    pub fn reembed(&self, target: &WeylSignature) -> Result<Self> {
        let names = self.sig.names();
        let mut map = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            match target.index_of(n) {
                Some(j) => map.push(j),
                None if self.terms.keys().all(|m| m.0[i] == 0) => map.push(usize::MAX),
                None => return Err(Error::UnknownVariable(n.clone())),
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut v = vec![0u32; target.num_vars()];
            for (i, k) in m.support() {
                v[map[i]] += k;
            }
            out.add_term(Monomial(v), c.clone());
        }
        Ok(out)
    }

    /// Read an element with no derivations and no `t` as a polynomial
    /// over the parameter signature `s_1..s_r` (when `x` is absent too).
    pub fn to_s_poly(&self) -> Result<MultiPoly> {
        let s_sig = crate::algebra::Signature::s_params(self.sig.r());
        let lo = 2 * self.sig.pairs();
        let mut p = MultiPoly::zero(&s_sig);
        for (m, c) in &self.terms {
            if m.0[..lo].iter().any(|&e| e > 0) || m.0[lo + self.sig.r()..].iter().any(|&e| e > 0) {
                return Err(Error::InvalidInput(format!("{self} is not a polynomial in s")));
            }
            p.add_term(Monomial(m.0[lo..lo + self.sig.r()].to_vec()), c.clone());
        }
        Ok(p)
    }

    /// Terms sorted for printing: operator-graded, highest first.
    fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0 .0.iter().sum();
            let db: u32 = b.0 .0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }
}

/// Checked product in the Weyl algebra.
pub fn weyl_mul(u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
    u.sig.check_same(&v.sig)?;
    Ok(u * v)
}

/// Rewrite a `t`-weight-zero element of the extended algebra into `D_n[s]`.
///
/// Each normal monomial `t_j^a ∂_{t_j}^a` equals `θ(θ−1)…(θ−a+1)` with
/// `θ = t_j∂_{t_j} = −s_j − 1`, so `∂_t t ↦ −s` and `t∂_t ↦ −s − 1`.
pub fn substitute_s(p: &WeylElement) -> Result<WeylElement> {
    let sig = p.signature();
    if !sig.extended() {
        return Err(Error::InvalidInput("substitute_s needs the t-block".into()));
    }
    let target = sig.base();
    let (n, r) = (sig.n(), sig.r());
    let mut out = WeylElement::zero(&target);
    for (m, c) in p.terms() {
        if sig.aux_block().iter().any(|&k| m.0[k] > 0) {
            return Err(Error::InvalidInput("auxiliary variables must be eliminated first".into()));
        }
        let mut base = vec![0u32; target.num_vars()];
        for i in 0..n {
            base[target.x(i)] = m.0[sig.x(i)];
            base[target.d(i)] = m.0[sig.d(i)];
        }
        for j in 0..r {
            base[target.s(j)] = m.0[sig.s(j)];
        }
        let mut term = WeylElement::monomial(&target, Monomial(base), c.clone());
        for j in 0..r {
            let (a, b) = (m.0[sig.t(j)], m.0[sig.dt(j)]);
            if a != b {
                return Err(Error::NotHomogeneous(format!(
                    "monomial with t-degree {a} and d_t-degree {b} in {p}"
                )));
            }
            // ∏_{k<a} (−s_j − 1 − k)
            let sj = WeylElement::s(&target, j);
            for k in 0..a {
                let factor = &(-&sj) - &WeylElement::constant(&target, Rational::from_integer(BigInt::from(k + 1)));
                term = &term * &factor;
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

impl<'a> Add<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &'a WeylElement) -> WeylElement {
        self.sig.check_same(&rhs.sig).expect("signature mismatch in add");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &'a WeylElement) -> WeylElement {
        self.sig.check_same(&rhs.sig).expect("signature mismatch in sub");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&-Rational::one())
    }
}

impl<'a> Mul<&'a WeylElement> for &'a WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &'a WeylElement) -> WeylElement {
        self.sig.check_same(&rhs.sig).expect("signature mismatch in mul");
        let pairs = self.sig.pairs();
        let mut out = WeylElement::zero(&self.sig);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let c = c1 * c2;
                for (m, w) in mono_product(pairs, &m1.0, &m2.0) {
                    out.add_term(m, &c * Rational::from_integer(w));
                }
            }
        }
        out
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.sig.names();
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let a = c.abs();
            let body = if m.is_one() {
                fmt_rational(&a)
            } else if a.is_one() {
                m.fmt_with(names)
            } else {
                format!("{}*{}", fmt_rational(&a), m.fmt_with(names))
            };
            let sep = match (k, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sep);
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({self})")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use proptest::prelude::*;

    fn d1() -> WeylSignature {
        WeylSignature::new(&["x"], 1, false).unwrap()
    }

    #[test]
    fn defining_relation() {
        let sig = d1();
        let x = WeylElement::x(&sig, 0);
        let d = WeylElement::d(&sig, 0);
        assert_eq!(weyl_mul(&d, &x).unwrap().to_string(), "x*d_x + 1");
        let d2 = &d * &d;
        assert_eq!((&d2 * &x).to_string(), "x*d_x^2 + 2*d_x");
        let xd = &x * &d;
        assert_eq!((&xd * &xd).to_string(), "x^2*d_x^2 + x*d_x");
    }

    #[test]
    fn substitution_examples() {
        let sig = WeylSignature::new(&["x"], 1, true).unwrap();
        let t = WeylElement::t(&sig, 0);
        let dt = WeylElement::dt(&sig, 0);
        assert_eq!(substitute_s(&(&dt * &t)).unwrap().to_string(), "-s");
        assert_eq!(substitute_s(&(&t * &dt)).unwrap().to_string(), "-s - 1");
        let xdx = &WeylElement::x(&sig, 0) * &WeylElement::d(&sig, 0);
        assert_eq!(substitute_s(&(&xdx + &(&t * &dt))).unwrap().to_string(), "x*d_x - s - 1");
        assert!(matches!(substitute_s(&t), Err(Error::NotHomogeneous(_))));
        // t^2 d_t^2 = θ(θ−1) = (−s−1)(−s−2)
        let t2dt2 = &(&t * &t) * &(&dt * &dt);
        assert_eq!(substitute_s(&t2dt2).unwrap().to_string(), "s^2 + 3*s + 2");
    }

    #[test]
    fn signature_mismatch() {
        let a = WeylElement::x(&d1(), 0);
        let b = WeylElement::x(&WeylSignature::new(&["y"], 1, false).unwrap(), 0);
        assert!(matches!(weyl_mul(&a, &b), Err(Error::SignatureMismatch(_))));
    }

    pub(crate) fn arb_element(sig: WeylSignature, max_exp: u32, max_terms: usize) -> impl Strategy<Value = WeylElement> {
        let nv = sig.num_vars();
        prop::collection::vec((prop::collection::vec(0..=max_exp, nv), -3i64..4), 0..=max_terms).prop_map(
            move |ts| WeylElement::from_terms(&sig, ts.into_iter().map(|(e, c)| (Monomial(e), int(c)))),
        )
    }

    fn d2s() -> WeylSignature {
        WeylSignature::new(&["x", "y"], 1, false).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn associativity(a in arb_element(d2s(), 2, 3), b in arb_element(d2s(), 2, 3), c in arb_element(d2s(), 2, 3)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn parameters_are_central(p in arb_element(d2s(), 3, 4)) {
            let s = WeylElement::s(p.signature(), 0);
            prop_assert_eq!(&s * &p, &p * &s);
        }
    }
}
