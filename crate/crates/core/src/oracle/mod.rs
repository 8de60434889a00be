//! Bounded linear-algebra search for functional equations
//! `b(s)·∏ f_i^{s_i} = P·∏ f_i^{s_i+m_i}`.
//!
//! The operator is an unknown combination of `x^α s^σ ∂^β` inside the given
//! bounds. Both sides are brought over a common denominator in the twisted
//! module and compared coefficient by coefficient, giving a linear system
//! over ℚ that is solved exactly. Nothing here touches the Gröbner code.

mod solve;

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, MultiPoly, Rational, Signature};
use crate::error::{Error, Result};
use crate::pipeline::{BSIdeal, InputTuple, MultiIndex};
use crate::weyl::{TwistedModule, WeylElement, WeylSignature};
use solve::Echelon;

/// Shape of the operator ansatz.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AnsatzBounds {
    /// Total order in `∂`.
    pub max_order: u32,
    /// Total degree in `x` of each coefficient.
    pub max_x_degree: u32,
    /// Total degree in `s` of each coefficient.
    pub max_s_degree: u32,
    /// Refuse systems with more unknowns than this.
    pub max_unknowns: usize,
}

impl AnsatzBounds {
    pub fn new(max_order: u32, max_x_degree: u32, max_s_degree: u32) -> Self {
        AnsatzBounds {
            max_order,
            max_x_degree,
            max_s_degree,
            ..Default::default()
        }
    }

    pub fn with_order(self, max_order: u32) -> Self {
        AnsatzBounds { max_order, ..self }
    }
}

impl Default for AnsatzBounds {
    fn default() -> Self {
        AnsatzBounds {
            max_order: 4,
            max_x_degree: 4,
            max_s_degree: 3,
            max_unknowns: 20_000,
        }
    }
}

/// Exponent vectors of length `k` with entries summing to at most `d`,
/// in graded order.
fn exponents_up_to(k: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=d {
        exponents_exact(k, total, &mut vec![0; k], 0, &mut out);
    }
    out
}

fn exponents_exact(k: usize, left: u32, cur: &mut Vec<u32>, pos: usize, out: &mut Vec<Vec<u32>>) {
    if pos + 1 >= k {
        if k > 0 {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
        } else if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        exponents_exact(k, left - e, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

/// One unknown coefficient of `P`: the term `x^α s^σ ∂^β`.
struct Term {
    alpha: Vec<u32>,
    sigma: Vec<u32>,
    beta: Vec<u32>,
}

/// The linear map `P ↦ P·f^{s+m}` restricted to the ansatz, written over
/// the common denominator `∏ f_j^{K_j}`.
struct Ansatz {
    module: TwistedModule,
    wsig: WeylSignature,
    terms: Vec<Term>,
    columns: Vec<BTreeMap<Monomial, Rational>>,
    target: Vec<u32>,
}

impl Ansatz {
    fn build(input: &InputTuple, m: &MultiIndex, bounds: &AnsatzBounds, extra_unknowns: usize) -> Result<Self> {
        let (n, r) = (input.n(), input.r());
        let wsig = input.weyl_signature();
        let module = TwistedModule::new(&wsig, input.f())?;
        let betas = exponents_up_to(n, bounds.max_order);
        let alphas = exponents_up_to(n, bounds.max_x_degree);
        let sigmas = exponents_up_to(r, bounds.max_s_degree);
        let count = betas.len() * alphas.len() * sigmas.len() + extra_unknowns;
        if count > bounds.max_unknowns {
            return Err(Error::Resource {
                limit: "max_unknowns",
                max: bounds.max_unknowns,
                reached: count,
            });
        }

        let start = module.power(m.as_slice());
        let mut memo = HashMap::new();
        let images: Vec<_> = betas
            .iter()
            .map(|b| module.apply_d_power(b, &start, &mut memo))
            .collect();
        let mut target = vec![0u32; r];
        for u in &images {
            for (t, k) in target.iter_mut().zip(&u.denominator) {
                *t = (*t).max(*k);
            }
        }
        let numerators: Vec<MultiPoly> = images.iter().map(|u| module.numerator_over(u, &target)).collect();

        let mut terms = Vec::with_capacity(count);
        let mut columns = Vec::with_capacity(count);
        for (beta, num) in betas.iter().zip(&numerators) {
            for alpha in &alphas {
                for sigma in &sigmas {
                    let shift = Monomial::from_exponents(alpha.iter().chain(sigma).copied().collect());
                    let col = num.terms().map(|(mono, c)| (mono.mul(&shift), c.clone())).collect();
                    columns.push(col);
                    terms.push(Term {
                        alpha: alpha.clone(),
                        sigma: sigma.clone(),
                        beta: beta.clone(),
                    });
                }
            }
        }
        Ok(Ansatz {
            module,
            wsig,
            terms,
            columns,
            target,
        })
    }

    /// `g·∏ f^{s}` over the common denominator, for `g` in the `s`-variables.
    fn times_denominator(&self, g: &MultiPoly) -> Result<MultiPoly> {
        let u = self.module.from_s_poly(g)?;
        Ok(self.module.numerator_over(&u, &self.target))
    }

    /// Solves `Σ c_k·col_k + Σ e_l·extra_l = rhs` by equating coefficients.
    fn solve(&self, extra: &[MultiPoly], rhs: &MultiPoly) -> Option<Vec<Rational>> {
        let ncols = self.columns.len() + extra.len();
        let mut rows: BTreeMap<Monomial, BTreeMap<usize, Rational>> = BTreeMap::new();
        for (k, col) in self.columns.iter().enumerate() {
            for (mono, v) in col {
                rows.entry(mono.clone()).or_default().insert(k, v.clone());
            }
        }
        for (l, p) in extra.iter().enumerate() {
            for (mono, v) in p.terms() {
                rows.entry(mono.clone()).or_default().insert(self.columns.len() + l, v.clone());
            }
        }
        for (mono, _) in rhs.terms() {
            rows.entry(mono.clone()).or_default();
        }
        let mut ech = Echelon::new(ncols);
        for (mono, row) in rows {
            ech.push(row, rhs.coeff(&mono));
            if !ech.is_consistent() {
                return None;
            }
        }
        ech.solution()
    }

    fn operator(&self, coeffs: &[Rational]) -> WeylElement {
        let (n, r) = (self.wsig.n(), self.wsig.r());
        let mut terms = Vec::new();
        for (t, c) in self.terms.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0u32; self.wsig.num_vars()];
            for i in 0..n {
                e[self.wsig.x(i)] = t.alpha[i];
                e[self.wsig.d(i)] = t.beta[i];
            }
            for j in 0..r {
                e[self.wsig.s(j)] = t.sigma[j];
            }
            terms.push((Monomial::from_exponents(e), c.clone()));
        }
        WeylElement::from_terms(&self.wsig, terms)
    }

    /// Replays `P·f^{s+m}` and compares with `b·f^s`.
    fn replay(&self, p: &WeylElement, b: &MultiPoly, m: &MultiIndex) -> Result<bool> {
        let lhs = self.module.apply(p, &self.module.power(m.as_slice()))?;
        let rhs = self.module.from_s_poly(b)?;
        Ok(self.module.equal(&lhs, &rhs))
    }
}

fn s_signature(r: usize) -> Signature {
    Signature::s_params(r)
}

/// An operator `P` with `P·∏ f_i^{s_i+m_i} = b·∏ f_i^{s_i}` inside `bounds`,
/// or `None` when no such operator fits the bounds.
pub fn find_witness(
    b: &MultiPoly,
    input: &InputTuple,
    m: &MultiIndex,
    bounds: &AnsatzBounds,
) -> Result<Option<WeylElement>> {
    if b.is_zero() {
        return Err(Error::ZeroInput("find_witness"));
    }
    m.validate(input)?;
    let b = b.embed_by_name(&s_signature(input.r()))?;
    let ansatz = Ansatz::build(input, m, bounds, 0)?;
    let rhs = ansatz.times_denominator(&b)?;
    let Some(sol) = ansatz.solve(&[], &rhs) else {
        return Ok(None);
    };
    let p = ansatz.operator(&sol);
    if !ansatz.replay(&p, &b, m)? {
        return Err(Error::Contradiction(format!("witness for {b} failed replay")));
    }
    Ok(Some(p))
}

/// A polynomial `b` together with an operator proving `b ∈ B_F^m`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub b: MultiPoly,
    pub operator: WeylElement,
}

/// Minimal-degree monic `b` in one parameter with a witness inside `bounds`.
pub fn oracle_bfunction_tuple(
    input: &InputTuple,
    m: &MultiIndex,
    bounds: &AnsatzBounds,
) -> Result<Option<Certificate>> {
    if input.r() != 1 {
        return Err(Error::RankMismatch {
            expected: 1,
            got: input.r(),
        });
    }
    m.validate(input)?;
    let ssig = s_signature(1);
    let max_deg = bounds.max_s_degree + bounds.max_order;
    let ansatz = Ansatz::build(input, m, bounds, max_deg as usize)?;
    for d in 0..=max_deg {
        let mut extra = Vec::with_capacity(d as usize);
        for e in 0..d {
            let se = MultiPoly::var(&ssig, 0).pow(e);
            extra.push(-&ansatz.times_denominator(&se)?);
        }
        let lead = MultiPoly::var(&ssig, 0).pow(d);
        let rhs = ansatz.times_denominator(&lead)?;
        let Some(sol) = ansatz.solve(&extra, &rhs) else {
            continue;
        };
        let k = ansatz.columns.len();
        let mut b = lead;
        for (e, c) in sol[k..].iter().enumerate() {
            if !c.is_zero() {
                b = &b + &MultiPoly::var(&ssig, 0).pow(e as u32).scale(c);
            }
        }
        let p = ansatz.operator(&sol[..k]);
        if !ansatz.replay(&p, &b, m)? {
            return Err(Error::Contradiction(format!("witness for {b} failed replay")));
        }
        return Ok(Some(Certificate { b, operator: p }));
    }
    Ok(None)
}

/// [`oracle_bfunction_tuple`] for a single polynomial and `m = 1`.
pub fn oracle_bfunction(f: &MultiPoly, bounds: &AnsatzBounds) -> Result<Option<Certificate>> {
    let input = InputTuple::from_polys(std::slice::from_ref(f))?;
    oracle_bfunction_tuple(&input, &MultiIndex::ones(1), bounds)
}

/// Outcome for one pipeline generator.
#[derive(Clone, Debug)]
pub struct CrossEntry {
    pub generator: MultiPoly,
    /// Smallest order at which a witness was found, with the witness.
    pub witness: Option<(u32, WeylElement)>,
}

#[derive(Clone, Debug)]
pub struct CrossReport {
    pub entries: Vec<CrossEntry>,
    /// At `r = 1`, the oracle's own minimal `b` within the bounds.
    pub oracle_b: Option<MultiPoly>,
}

impl CrossReport {
    pub fn all_verified(&self) -> bool {
        self.entries.iter().all(|e| e.witness.is_some())
    }
}

/// Attempts a witness for every generator of `ideal`, sweeping the order
/// upward to the bound. At `r = 1` the oracle also searches for its own
/// minimal `b`; one of lower degree than the pipeline generator, or one the
/// generator does not divide, is reported as [`Error::Contradiction`].
pub fn cross_validate(
    ideal: &BSIdeal,
    input: &InputTuple,
    m: &MultiIndex,
    bounds: &AnsatzBounds,
) -> Result<CrossReport> {
    let mut entries = Vec::with_capacity(ideal.generators.len());
    for g in &ideal.generators {
        let mut witness = None;
        for order in 0..=bounds.max_order {
            if let Some(p) = find_witness(g, input, m, &bounds.with_order(order))? {
                witness = Some((order, p));
                break;
            }
        }
        entries.push(CrossEntry {
            generator: g.clone(),
            witness,
        });
    }
    let mut oracle_b = None;
    if input.r() == 1 {
        if let [g] = ideal.generators.as_slice() {
            if let Some(cert) = oracle_bfunction_tuple(input, m, bounds)? {
                let b = cert.b.embed_by_name(g.signature())?;
                if b.total_degree() < g.total_degree() {
                    return Err(Error::Contradiction(format!(
                        "oracle found {b} of lower degree than {g}"
                    )));
                }
                if b.try_exact_div(g)?.is_none() {
                    return Err(Error::Contradiction(format!("{g} does not divide oracle's {b}")));
                }
                oracle_b = Some(b);
            }
        }
    }
    Ok(CrossReport { entries, oracle_b })
}

impl CrossEntry {
    pub fn is_verified(&self) -> bool {
        self.witness.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn x1() -> Signature {
        Signature::x_vars(&["x"]).unwrap()
    }

    #[test]
    fn enumerates_exponents() {
        assert_eq!(exponents_up_to(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(exponents_up_to(1, 2).len(), 3);
        assert_eq!(exponents_up_to(3, 2).len(), 10);
    }

    #[test]
    fn witness_for_x() {
        let f = MultiPoly::var(&x1(), 0);
        let input = InputTuple::from_polys(&[f]).unwrap();
        let ssig = Signature::s_params(1);
        let b = &MultiPoly::var(&ssig, 0) + &MultiPoly::one(&ssig);
        let p = find_witness(&b, &input, &MultiIndex::ones(1), &AnsatzBounds::new(1, 0, 0))
            .unwrap()
            .unwrap();
        assert_eq!(p.to_string(), "d_x");
    }

    #[test]
    fn witness_for_x_squared() {
        let f = MultiPoly::var(&x1(), 0).pow(2);
        let input = InputTuple::from_polys(&[f]).unwrap();
        let ssig = Signature::s_params(1);
        let s = MultiPoly::var(&ssig, 0);
        let b = &(&s + &MultiPoly::one(&ssig)) * &(&s + &MultiPoly::constant(&ssig, rat(1, 2)));
        let p = find_witness(&b, &input, &MultiIndex::ones(1), &AnsatzBounds::new(2, 0, 0))
            .unwrap()
            .unwrap();
        assert_eq!(p.to_string(), "1/4*d_x^2");
        let lin = &s + &MultiPoly::one(&ssig);
        assert!(find_witness(&lin, &input, &MultiIndex::ones(1), &AnsatzBounds::new(3, 3, 3))
            .unwrap()
            .is_none());
    }

    #[test]
    fn bfunction_of_cube() {
        let f = MultiPoly::var(&x1(), 0).pow(3);
        let cert = oracle_bfunction(&f, &AnsatzBounds::new(3, 0, 0)).unwrap().unwrap();
        let roots = crate::algebra::univariate_rational_roots(&cert.b).unwrap();
        assert_eq!(roots, vec![(rat(-1, 1), 1), (rat(-2, 3), 1), (rat(-1, 3), 1)]);
    }

    #[test]
    fn too_many_unknowns() {
        let f = MultiPoly::var(&x1(), 0);
        let bounds = AnsatzBounds {
            max_unknowns: 5,
            ..AnsatzBounds::new(3, 3, 3)
        };
        assert!(oracle_bfunction(&f, &bounds).unwrap_err().is_resource());
    }
}
