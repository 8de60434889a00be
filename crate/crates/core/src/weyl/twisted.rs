//! The module `ℚ[x, s, 1/f] · ∏ f_j^{s_j}` and the action of `D_n[s]` on it.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::{WeylElement, WeylSignature};
use crate::algebra::poly::Monomial;
use crate::algebra::{MultiPoly, Rational, Signature};
use crate::error::{Error, Result};

/// `numerator · ∏_j f_j^{s_j − k_j}` with `k = denominator`.
#[derive(Clone, Debug)]
pub struct TwistedElement {
    pub numerator: MultiPoly,
    pub denominator: Vec<u32>,
}

impl TwistedElement {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

/// A fixed tuple `F` together with its partial derivatives, acting as the
/// ambient module for [`TwistedElement`]s.
#[derive(Clone, Debug)]
pub struct TwistedModule {
    wsig: WeylSignature,
    xs: Signature,
    f: Vec<MultiPoly>,
    /// `df[i][j] = ∂f_j/∂x_i`
    df: Vec<Vec<MultiPoly>>,
}

impl TwistedModule {
    /// `wsig` must be a non-extended `D_n[s]` with `r = F.len()`; the `f_j`
    /// may be written over any signature whose used names are `x`-names.
    pub fn new(wsig: &WeylSignature, f: &[MultiPoly]) -> Result<Self> {
        if wsig.extended() || !wsig.aux_names().is_empty() {
            return Err(Error::InvalidInput("twisted action needs a plain D_n[s] signature".into()));
        }
        if f.len() != wsig.r() {
            return Err(Error::RankMismatch {
                expected: wsig.r(),
                got: f.len(),
            });
        }
        let xs = wsig.xs_signature();
        let f: Vec<MultiPoly> = f.iter().map(|p| p.embed_by_name(&xs)).collect::<Result<_>>()?;
        if f.iter().any(MultiPoly::is_zero) {
            return Err(Error::InvalidInput("f_j must be nonzero".into()));
        }
        if f.iter().any(|p| p.variables().iter().any(|&i| i >= wsig.n())) {
            return Err(Error::InvalidInput("f_j must not involve s".into()));
        }
        let df = (0..wsig.n())
            .map(|i| f.iter().map(|p| p.derivative(i)).collect())
            .collect();
        Ok(TwistedModule {
            wsig: wsig.clone(),
            xs,
            f,
            df,
        })
    }

    pub fn signature(&self) -> &WeylSignature {
        &self.wsig
    }

    pub fn xs_signature(&self) -> &Signature {
        &self.xs
    }

    pub fn f(&self) -> &[MultiPoly] {
        &self.f
    }

    /// `∏ f_j^{s_j + m_j}`.
    pub fn power(&self, m: &[u32]) -> TwistedElement {
        let mut num = MultiPoly::one(&self.xs);
        for (fj, &mj) in self.f.iter().zip(m) {
            num = &num * &fj.pow(mj);
        }
        TwistedElement {
            numerator: num,
            denominator: vec![0; self.f.len()],
        }
    }

    /// `g · ∏ f_j^{s_j}` for a polynomial `g` over the `(x, s)` signature.
    pub fn element(&self, g: MultiPoly) -> Result<TwistedElement> {
        g.signature().check_same(&self.xs)?;
        Ok(TwistedElement {
            numerator: g,
            denominator: vec![0; self.f.len()],
        })
    }

    /// Cancel factors `f_j` from the numerator while `k_j > 0`.
    pub fn reduce(&self, mut u: TwistedElement) -> TwistedElement {
        if u.numerator.is_zero() {
            u.denominator.iter_mut().for_each(|k| *k = 0);
            return u;
        }
        for j in 0..self.f.len() {
            if self.f[j].is_constant() {
                continue;
            }
            while u.denominator[j] > 0 {
                match u.numerator.try_exact_div(&self.f[j]).expect("same signature") {
                    Some(q) => {
                        u.numerator = q;
                        u.denominator[j] -= 1;
                    }
                    None => break,
                }
            }
        }
        u
    }

    /// Numerator over the common denominator `∏ f^{target}` (needs `target ≥ k`).
    pub fn numerator_over(&self, u: &TwistedElement, target: &[u32]) -> MultiPoly {
        let mut num = u.numerator.clone();
        for j in 0..self.f.len() {
            let e = target[j] - u.denominator[j];
            if e > 0 {
                num = &num * &self.f[j].pow(e);
            }
        }
        num
    }

    pub fn add(&self, a: &TwistedElement, b: &TwistedElement) -> TwistedElement {
        let k: Vec<u32> = a.denominator.iter().zip(&b.denominator).map(|(x, y)| *x.max(y)).collect();
        let num = &self.numerator_over(a, &k) + &self.numerator_over(b, &k);
        self.reduce(TwistedElement {
            numerator: num,
            denominator: k,
        })
    }

    pub fn mul_poly(&self, g: &MultiPoly, u: &TwistedElement) -> TwistedElement {
        self.reduce(TwistedElement {
            numerator: g * &u.numerator,
            denominator: u.denominator.clone(),
        })
    }

    /// Exact equality, deciding through a common denominator.
    pub fn equal(&self, a: &TwistedElement, b: &TwistedElement) -> bool {
        let k: Vec<u32> = a.denominator.iter().zip(&b.denominator).map(|(x, y)| *x.max(y)).collect();
        self.numerator_over(a, &k) == self.numerator_over(b, &k)
    }

    /// `∂_i (g ∏ f^{s−k}) = (∂_i g + Σ_j (s_j − k_j) g ∂_i f_j / f_j) ∏ f^{s−k}`.
    pub fn apply_d(&self, i: usize, u: &TwistedElement) -> TwistedElement {
        let g = &u.numerator;
        let r = self.f.len();
        let active: Vec<usize> = (0..r).filter(|&j| !self.df[i][j].is_zero()).collect();
        let mut prod_all = MultiPoly::one(&self.xs);
        for &j in &active {
            prod_all = &prod_all * &self.f[j];
        }
        let mut num = &g.derivative(i) * &prod_all;
        for &j in &active {
            let mut others = MultiPoly::one(&self.xs);
            for &l in &active {
                if l != j {
                    others = &others * &self.f[l];
                }
            }
            let sj = MultiPoly::var(&self.xs, self.wsig.n() + j);
            let shift = &sj - &MultiPoly::constant(&self.xs, Rational::from_integer(BigInt::from(u.denominator[j])));
            num = &num + &(&(&shift * g) * &(&self.df[i][j] * &others));
        }
        let mut k = u.denominator.clone();
        for &j in &active {
            k[j] += 1;
        }
        self.reduce(TwistedElement {
            numerator: num,
            denominator: k,
        })
    }

    /// `∂^β u`, memoized over all intermediate multi-indices.
    pub fn apply_d_power(
        &self,
        beta: &[u32],
        u: &TwistedElement,
        memo: &mut HashMap<Vec<u32>, TwistedElement>,
    ) -> TwistedElement {
        if let Some(v) = memo.get(beta) {
            return v.clone();
        }
        let v = match beta.iter().position(|&b| b > 0) {
            None => u.clone(),
            Some(i) => {
                let mut prev = beta.to_vec();
                prev[i] -= 1;
                let w = self.apply_d_power(&prev, u, memo);
                self.apply_d(i, &w)
            }
        };
        memo.insert(beta.to_vec(), v.clone());
        v
    }

    /// Act by `P ∈ D_n[s]`.
    pub fn apply(&self, p: &WeylElement, u: &TwistedElement) -> Result<TwistedElement> {
        p.signature().check_same(&self.wsig)?;
        let n = self.wsig.n();
        let r = self.wsig.r();
        // group by derivation part; the rest is a polynomial multiplier
        let mut by_beta: std::collections::BTreeMap<Vec<u32>, MultiPoly> = Default::default();
        for (m, c) in p.terms() {
            let beta: Vec<u32> = (0..n).map(|i| m.0[self.wsig.d(i)]).collect();
            let mut e = vec![0u32; n + r];
            for i in 0..n {
                e[i] = m.0[self.wsig.x(i)];
            }
            for j in 0..r {
                e[n + j] = m.0[self.wsig.s(j)];
            }
            by_beta
                .entry(beta)
                .or_insert_with(|| MultiPoly::zero(&self.xs))
                .add_term(Monomial(e), c.clone());
        }
        let mut memo = HashMap::new();
        let mut acc = TwistedElement {
            numerator: MultiPoly::zero(&self.xs),
            denominator: vec![0; r],
        };
        for (beta, coeff) in by_beta {
            let d = self.apply_d_power(&beta, u, &mut memo);
            acc = self.add(&acc, &self.mul_poly(&coeff, &d));
        }
        Ok(acc)
    }

    /// Whether `u` is the zero element.
    pub fn is_zero(&self, u: &TwistedElement) -> bool {
        u.numerator.is_zero()
    }

    /// `b(s) · ∏ f^{s}` for `b` over the parameter signature.
    pub fn from_s_poly(&self, b: &MultiPoly) -> Result<TwistedElement> {
        let g = b.embed_by_name(&self.xs)?;
        Ok(TwistedElement {
            numerator: g,
            denominator: vec![0; self.f.len()],
        })
    }
}

/// Formal action of `P` on `u` inside the module twisted by `F`.
pub fn weyl_apply_twisted(p: &WeylElement, f: &[MultiPoly], u: &TwistedElement) -> Result<TwistedElement> {
    if p.signature().extended() {
        return Err(Error::InvalidInput("extended operators do not act on the twisted module".into()));
    }
    let module = TwistedModule::new(p.signature(), f)?;
    if u.denominator.len() != f.len() {
        return Err(Error::RankMismatch {
            expected: f.len(),
            got: u.denominator.len(),
        });
    }
    let u = TwistedElement {
        numerator: u.numerator.embed_by_name(module.xs_signature())?,
        denominator: u.denominator.clone(),
    };
    module.apply(p, &u)
}

impl PartialEq for TwistedElement {
    /// Structural equality of the reduced representation; use
    /// [`TwistedModule::equal`] for equality as module elements.
    fn eq(&self, other: &Self) -> bool {
        self.denominator == other.denominator && self.numerator == other.numerator
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use proptest::prelude::*;

    fn parse_x(names: &[&str], terms: &[(&[u32], i64)]) -> MultiPoly {
        let sig = Signature::x_vars(names).unwrap();
        MultiPoly::from_terms(&sig, terms.iter().map(|(e, c)| (Monomial(e.to_vec()), int(*c))))
    }

    #[test]
    fn derivative_of_power() {
        let sig = WeylSignature::new(&["x"], 1, false).unwrap();
        let f = vec![parse_x(&["x"], &[(&[1], 1)])];
        let d = WeylElement::d(&sig, 0);
        let m = TwistedModule::new(&sig, &f).unwrap();

        let v = weyl_apply_twisted(&d, &f, &m.power(&[0])).unwrap();
        assert_eq!(v.numerator.to_string(), "s");
        assert_eq!(v.denominator, vec![1]);

        let v = weyl_apply_twisted(&d, &f, &m.power(&[1])).unwrap();
        assert_eq!(v.numerator.to_string(), "s + 1");
        assert_eq!(v.denominator, vec![0]);
    }

    #[test]
    fn laplacian_on_sum_of_squares() {
        let sig = WeylSignature::new(&["x", "y"], 1, false).unwrap();
        let f = vec![parse_x(&["x", "y"], &[(&[2, 0], 1), (&[0, 2], 1)])];
        let dx = WeylElement::d(&sig, 0);
        let dy = WeylElement::d(&sig, 1);
        let p = (&(&dx * &dx) + &(&dy * &dy)).scale(&rat(1, 4));
        let m = TwistedModule::new(&sig, &f).unwrap();
        let v = m.apply(&p, &m.power(&[1])).unwrap();
        assert_eq!(v.denominator, vec![0]);
        assert_eq!(v.numerator.to_string(), "s^2 + 2*s + 1");
    }

    #[test]
    fn rejects_extended_operators() {
        let sig = WeylSignature::new(&["x"], 1, true).unwrap();
        let f = vec![parse_x(&["x"], &[(&[1], 1)])];
        let u = TwistedElement {
            numerator: MultiPoly::one(&Signature::xs(&["x"], 1).unwrap()),
            denominator: vec![0],
        };
        assert!(weyl_apply_twisted(&WeylElement::t(&sig, 0), &f, &u).is_err());
    }

    fn d2s() -> WeylSignature {
        WeylSignature::new(&["x", "y"], 1, false).unwrap()
    }

    fn small_f() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -2i64..3), 1..4).prop_map(|ts| {
            let sig = Signature::x_vars(&["x", "y"]).unwrap();
            let mut p = MultiPoly::from_terms(&sig, ts.into_iter().map(|((a, b), c)| (Monomial(vec![a, b]), int(c))));
            if p.is_zero() {
                p = MultiPoly::var(&sig, 0);
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn action_is_compatible_with_product(
            p in super::super::element::tests::arb_element(d2s(), 1, 2),
            q in super::super::element::tests::arb_element(d2s(), 1, 2),
            f in small_f(),
        ) {
            let m = TwistedModule::new(&d2s(), &[f]).unwrap();
            let u = m.power(&[1]);
            let lhs = m.apply(&(&p * &q), &u).unwrap();
            let rhs = m.apply(&p, &m.apply(&q, &u).unwrap()).unwrap();
            prop_assert!(m.equal(&lhs, &rhs));
        }
    }
}
