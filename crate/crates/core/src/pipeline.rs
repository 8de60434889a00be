//! Annihilators of `∏ f_j^{s_j}`, Bernstein-Sato ideals and b-functions.
//!
//! `Ann(f^s)` comes from the Malgrange ideal `⟨t_j − f_j, ∂_i + Σ_j ∂_i f_j ∂_{t_j}⟩`
//! homogenized with respect to the `t`-weight by auxiliary variables
//! `u_j, v_j` (`t_j − u_j f_j`, `∂_i + Σ_j u_j ∂_i f_j ∂_{t_j}`, `u_j v_j − 1`).
//! Eliminating the auxiliaries leaves the ideal spanned by the homogeneous
//! elements of the Malgrange ideal; its weight-zero part, rewritten through
//! `t_j∂_{t_j} = −s_j − 1`, is the annihilator. `B_F^m` is then
//! `(Ann + D[s]·f^m) ∩ ℚ[s]`, read off an `{x, ∂}`-elimination basis.

use serde::{Deserialize, Serialize};

use crate::algebra::{Block, MultiPoly, Rational, Signature};
use crate::error::{Error, Result};
use crate::groebner::{eliminate_block, left_buchberger, weight_zero_part, Budget, GroebnerBasis, TermOrder};
use crate::weyl::{substitute_s, TwistedModule, WeylElement, WeylSignature};

/// The tuple `F = (f_1, …, f_r)` over a common set of `x`-variables.
#[derive(Clone, Debug)]
pub struct InputTuple {
    x_sig: Signature,
    f: Vec<MultiPoly>,
}

impl InputTuple {
    /// Every `f_j` is re-read over `x_names`; none may be zero and at least
    /// one must be non-constant.
    pub fn new<S: AsRef<str>>(x_names: &[S], f: &[MultiPoly]) -> Result<Self> {
        if x_names.is_empty() {
            return Err(Error::InvalidInput("no x-variables".into()));
        }
        if f.is_empty() {
            return Err(Error::InvalidInput("empty tuple".into()));
        }
        let x_sig = Signature::x_vars(x_names)?;
        let f = f
            .iter()
            .map(|p| {
                if p.variables().iter().any(|&i| p.signature().block(i) != Block::X) {
                    return Err(Error::InvalidInput(format!("{p} involves a non-x variable")));
                }
                p.embed_by_name(&x_sig)
            })
            .collect::<Result<Vec<_>>>()?;
        if f.iter().any(MultiPoly::is_zero) {
            return Err(Error::InvalidInput("f_j must be nonzero".into()));
        }
        if f.iter().all(MultiPoly::is_constant) {
            return Err(Error::InvalidInput("all f_j are constant".into()));
        }
        Ok(InputTuple { x_sig, f })
    }

    /// A tuple over the variables of the polynomials' own signature.
    pub fn from_polys(f: &[MultiPoly]) -> Result<Self> {
        let first = f.first().ok_or_else(|| Error::InvalidInput("empty tuple".into()))?;
        let names = first.signature().block_names(Block::X);
        Self::new(&names, f)
    }

    pub fn n(&self) -> usize {
        self.x_sig.len()
    }

    pub fn r(&self) -> usize {
        self.f.len()
    }

    pub fn x_names(&self) -> &[String] {
        self.x_sig.names()
    }

    pub fn f(&self) -> &[MultiPoly] {
        &self.f
    }

    /// `D_n[s_1..s_r]` for this tuple.
    pub fn weyl_signature(&self) -> WeylSignature {
        WeylSignature::new(self.x_names(), self.r(), false).expect("n, r >= 1")
    }

    /// `∏ f_j^{m_j}` over the `x`-signature.
    pub fn power_product(&self, m: &MultiIndex) -> MultiPoly {
        self.f
            .iter()
            .zip(m.as_slice())
            .fold(MultiPoly::one(&self.x_sig), |acc, (f, &e)| &acc * &f.pow(e))
    }

    /// Display strings of the `f_j`.
    pub fn describe(&self) -> Vec<String> {
        self.f.iter().map(ToString::to_string).collect()
    }
}

/// A multi-index `m ∈ ℕ^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(m: Vec<u32>) -> Self {
        MultiIndex(m)
    }

    /// `e_i` in `ℕ^r`.
    pub fn unit(r: usize, i: usize) -> Self {
        let mut m = vec![0; r];
        m[i] = 1;
        MultiIndex(m)
    }

    /// `(1, …, 1)`.
    pub fn ones(r: usize) -> Self {
        MultiIndex(vec![1; r])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Rank matches and `∏ f_i^{m_i}` is not a constant.
    pub fn validate(&self, input: &InputTuple) -> Result<()> {
        if self.0.len() != input.r() {
            return Err(Error::RankMismatch {
                expected: input.r(),
                got: self.0.len(),
            });
        }
        if input.power_product(self).is_constant() {
            return Err(Error::InvalidInput(format!(
                "f^m is constant for m = {:?}",
                self.0
            )));
        }
        Ok(())
    }
}

/// Where a [`BSIdeal`] came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub x_names: Vec<String>,
    pub f: Vec<String>,
    pub m: Vec<u32>,
}

/// An ideal of `ℚ[s_1..s_r]` given by its reduced graded reverse
/// lexicographic Gröbner basis, each generator monic.
#[derive(Clone, Debug)]
pub struct BSIdeal {
    pub generators: Vec<MultiPoly>,
    pub r: usize,
    pub provenance: Provenance,
}

impl BSIdeal {
    /// Wraps polynomials that already form a reduced Gröbner basis.
    fn from_basis(gb: &GroebnerBasis, r: usize, provenance: Provenance) -> Result<Self> {
        let generators = gb
            .generators
            .iter()
            .map(WeylElement::to_s_poly)
            .collect::<Result<Vec<_>>>()?;
        Ok(BSIdeal {
            generators,
            r,
            provenance,
        })
    }

    fn groebner(&self) -> Result<GroebnerBasis> {
        let sig = WeylSignature::parameters_only(self.r);
        let generators = self
            .generators
            .iter()
            .map(|g| WeylElement::from_poly(&sig, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroebnerBasis {
            generators,
            order: TermOrder::degrevlex(&sig),
            reduced: true,
        })
    }

    /// Whether `b` lies in the ideal (normal form against the basis).
    pub fn contains(&self, b: &MultiPoly) -> Result<bool> {
        let gb = self.groebner()?;
        let sig = gb.signature().clone();
        let b = WeylElement::from_poly(&sig, &b.embed_by_name(&Signature::s_params(self.r))?)?;
        gb.contains(&b)
    }

    pub fn is_principal(&self) -> bool {
        self.generators.len() == 1
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(MultiPoly::is_constant)
    }
}

/// `{t_j − f_j} ∪ {∂_i + Σ_j ∂_i f_j · ∂_{t_j}}` in the extended algebra.
pub fn malgrange_ideal(input: &InputTuple) -> Vec<WeylElement> {
    let sig = WeylSignature::new(input.x_names(), input.r(), true).expect("n, r >= 1");
    malgrange_generators(input, &sig, None)
}

fn aux_names(r: usize) -> Vec<String> {
    let u = (1..=r).map(|j| format!("_u{j}"));
    let v = (1..=r).map(|j| format!("_v{j}"));
    u.chain(v).collect()
}

/// Generators over `sig`; with `homogenize`, `f_j` is weighted by the
/// auxiliary `u_j` (aux index `j`).
fn malgrange_generators(input: &InputTuple, sig: &WeylSignature, homogenize: Option<()>) -> Vec<WeylElement> {
    let r = input.r();
    let lift = |p: &MultiPoly| WeylElement::from_poly(sig, p).expect("x-names are shared");
    let weight = |j: usize, e: WeylElement| match homogenize {
        Some(()) => &WeylElement::aux(sig, j) * &e,
        None => e,
    };
    let mut gens = Vec::with_capacity(input.n() + 2 * r);
    for (j, f) in input.f().iter().enumerate() {
        gens.push(&WeylElement::t(sig, j) - &weight(j, lift(f)));
    }
    for i in 0..input.n() {
        let mut g = WeylElement::d(sig, i);
        for (j, f) in input.f().iter().enumerate() {
            let df = f.derivative(i);
            if !df.is_zero() {
                g = &g + &weight(j, &lift(&df) * &WeylElement::dt(sig, j));
            }
        }
        gens.push(g);
    }
    if homogenize.is_some() {
        for j in 0..r {
            let uv = &WeylElement::aux(sig, j) * &WeylElement::aux(sig, r + j);
            gens.push(&uv - &WeylElement::one(sig));
        }
    }
    gens
}

/// `Ann_{D_n[s]}(∏ f_j^{s_j})` for a fixed tuple, reused across multi-indices.
#[derive(Clone, Debug)]
pub struct Annihilator {
    input: InputTuple,
    sig: WeylSignature,
    generators: Vec<WeylElement>,
    budget: Budget,
}

impl Annihilator {
    pub fn compute(input: &InputTuple, budget: &Budget) -> Result<Self> {
        let r = input.r();
        let hsig = WeylSignature::with_aux(input.x_names(), r, true, &aux_names(r))?;
        let gens = malgrange_generators(input, &hsig, Some(()));
        let order = TermOrder::elimination(&hsig, &[hsig.aux_block()])?;
        let gb = left_buchberger(&gens, &order, budget)?;
        let homogeneous = eliminate_block(&gb, &hsig.aux_block())?;

        let tsig = WeylSignature::new(input.x_names(), r, true)?;
        let homogeneous = homogeneous
            .iter()
            .map(|g| g.reembed(&tsig))
            .collect::<Result<Vec<_>>>()?;
        let sig = input.weyl_signature();
        let ann = weight_zero_part(&homogeneous)?
            .iter()
            .map(|g| substitute_s(g)?.reembed(&sig))
            .collect::<Result<Vec<_>>>()?;
        let gb = left_buchberger(&ann, &TermOrder::degrevlex(&sig), budget)?;
        Ok(Annihilator {
            input: input.clone(),
            sig,
            generators: gb.generators,
            budget: *budget,
        })
    }

    pub fn input(&self) -> &InputTuple {
        &self.input
    }

    pub fn signature(&self) -> &WeylSignature {
        &self.sig
    }

    /// Reduced degrevlex Gröbner basis of the annihilator.
    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    /// The twisted module hosting `∏ f_j^{s_j}`.
    pub fn module(&self) -> TwistedModule {
        TwistedModule::new(&self.sig, self.input.f()).expect("validated tuple")
    }

    /// Every generator kills `∏ f_j^{s_j}` exactly.
    pub fn verify(&self) -> Result<bool> {
        let module = self.module();
        let fs = module.power(&vec![0; self.input.r()]);
        for g in &self.generators {
            if !module.apply(g, &fs)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `B_F^m = (Ann + D_n[s]·f^m) ∩ ℚ[s]`.
    pub fn bs_ideal(&self, m: &MultiIndex) -> Result<BSIdeal> {
        m.validate(&self.input)?;
        let fm = WeylElement::from_poly(&self.sig, &self.input.power_product(m))?;
        let mut gens = self.generators.clone();
        gens.push(fm);
        let ops = self.sig.operator_block();
        let order = TermOrder::elimination(&self.sig, std::slice::from_ref(&ops))?;
        let gb = left_buchberger(&gens, &order, &self.budget)?;
        let s_only = eliminate_block(&gb, &ops)?;
        if s_only.is_empty() {
            return Err(Error::InvalidInput("B_F^m came out zero".into()));
        }
        let r = self.input.r();
        let psig = WeylSignature::parameters_only(r);
        let s_gens = s_only
            .iter()
            .map(|g| WeylElement::from_poly(&psig, &g.to_s_poly()?))
            .collect::<Result<Vec<_>>>()?;
        let sgb = left_buchberger(&s_gens, &TermOrder::degrevlex(&psig), &self.budget)?;
        let provenance = Provenance {
            x_names: self.input.x_names().to_vec(),
            f: self.input.describe(),
            m: m.as_slice().to_vec(),
        };
        BSIdeal::from_basis(&sgb, r, provenance)
    }
}

/// `Ann_{D_n[s]}(∏ f_j^{s_j})`.
pub fn annihilator_fs(input: &InputTuple, budget: &Budget) -> Result<Vec<WeylElement>> {
    Ok(Annihilator::compute(input, budget)?.generators)
}

/// `B_F^m` for a single multi-index.
pub fn bs_ideal(input: &InputTuple, m: &MultiIndex, budget: &Budget) -> Result<BSIdeal> {
    m.validate(input)?;
    Annihilator::compute(input, budget)?.bs_ideal(m)
}

/// The monic Bernstein-Sato polynomial `b_f(s)`.
pub fn bfunction(f: &MultiPoly, budget: &Budget) -> Result<MultiPoly> {
    let input = InputTuple::from_polys(std::slice::from_ref(f))?;
    let ideal = bs_ideal(&input, &MultiIndex::ones(1), budget)?;
    match ideal.generators.as_slice() {
        [b] => Ok(b.clone()),
        _ => Err(Error::InvalidInput("r = 1 ideal is not principal".into())),
    }
}

/// Whether `b ∈ B_F^m`.
pub fn membership(b: &MultiPoly, input: &InputTuple, m: &MultiIndex, budget: &Budget) -> Result<bool> {
    bs_ideal(input, m, budget)?.contains(b)
}

/// Negative of the largest root of `b_f`.
pub fn lct(f: &MultiPoly, budget: &Budget) -> Result<Rational> {
    let b = bfunction(f, budget)?;
    lct_of(&b)
}

/// Negative of the largest rational root of a b-function.
pub fn lct_of(b: &MultiPoly) -> Result<Rational> {
    let roots = crate::algebra::univariate_rational_roots(b)?;
    roots
        .last()
        .map(|(x, _)| -x.clone())
        .ok_or_else(|| Error::InvalidInput(format!("{b} has no rational root")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn xy() -> Signature {
        Signature::x_vars(&["x", "y"]).unwrap()
    }

    fn poly(sig: &Signature, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            sig,
            terms.iter().map(|(e, c)| {
                (
                    crate::algebra::Monomial::from_exponents(e.to_vec()),
                    Rational::from_integer((*c).into()),
                )
            }),
        )
    }

    fn show(v: &[WeylElement]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn malgrange_shapes() {
        let sig = xy();
        let cusp = poly(&sig, &[(&[2, 0], 1), (&[0, 3], 1)]);
        let input = InputTuple::new(&["x", "y"], &[cusp]).unwrap();
        let g = malgrange_ideal(&input);
        assert_eq!(show(&g), ["-y^3 - x^2 + t", "2*x*d_t + d_x", "3*y^2*d_t + d_y"]);
    }

    #[test]
    fn annihilator_of_x() {
        let sig = Signature::x_vars(&["x"]).unwrap();
        let input = InputTuple::new(&["x"], &[MultiPoly::var(&sig, 0)]).unwrap();
        let ann = Annihilator::compute(&input, &Budget::default()).unwrap();
        assert_eq!(show(ann.generators()), ["x*d_x - s"]);
        assert!(ann.verify().unwrap());
        let b = ann.bs_ideal(&MultiIndex::ones(1)).unwrap();
        assert_eq!(b.generators[0].to_string(), "s + 1");
    }

    #[test]
    fn annihilator_of_coordinates() {
        let sig = xy();
        let f = [MultiPoly::var(&sig, 0), MultiPoly::var(&sig, 1)];
        let input = InputTuple::new(&["x", "y"], &f).unwrap();
        let ann = Annihilator::compute(&input, &Budget::default()).unwrap();
        assert_eq!(show(ann.generators()), ["y*d_y - s2", "x*d_x - s1"]);
        assert!(ann.verify().unwrap());
        let b = ann.bs_ideal(&MultiIndex::ones(2)).unwrap();
        assert_eq!(b.generators.len(), 1);
        assert_eq!(b.generators[0].to_string(), "s1*s2 + s1 + s2 + 1");
        let b = ann.bs_ideal(&MultiIndex::unit(2, 0)).unwrap();
        assert_eq!(b.generators[0].to_string(), "s1 + 1");
    }

    #[test]
    fn cusp() {
        let sig = xy();
        let cusp = poly(&sig, &[(&[2, 0], 1), (&[0, 3], 1)]);
        let input = InputTuple::new(&["x", "y"], std::slice::from_ref(&cusp)).unwrap();
        let ann = Annihilator::compute(&input, &Budget::default()).unwrap();
        assert!(ann.verify().unwrap());
        let wsig = ann.signature().clone();
        let gb = GroebnerBasis {
            generators: ann.generators().to_vec(),
            order: TermOrder::degrevlex(&wsig),
            reduced: true,
        };
        let x = WeylElement::x(&wsig, 0);
        let y = WeylElement::x(&wsig, 1);
        let dx = WeylElement::d(&wsig, 0);
        let dy = WeylElement::d(&wsig, 1);
        let three = Rational::from_integer(3.into());
        let two = Rational::from_integer(2.into());
        let vf = &(&(&y * &y) * &dx).scale(&three) - &(&x * &dy).scale(&two);
        let euler = &(&(&x * &dx).scale(&three) + &(&y * &dy).scale(&two))
            - &WeylElement::s(&wsig, 0).scale(&Rational::from_integer(6.into()));
        assert!(gb.contains(&vf).unwrap());
        assert!(gb.contains(&euler).unwrap());

        let b = bfunction(&cusp, &Budget::default()).unwrap();
        let roots = crate::algebra::univariate_rational_roots(&b).unwrap();
        assert_eq!(roots, vec![(rat(-7, 6), 1), (rat(-1, 1), 1), (rat(-5, 6), 1)]);
        assert_eq!(lct_of(&b).unwrap(), rat(5, 6));
    }

    #[test]
    fn powers_of_x() {
        let sig = Signature::x_vars(&["x"]).unwrap();
        for a in 1..=4u32 {
            let f = MultiPoly::var(&sig, 0).pow(a);
            let b = bfunction(&f, &Budget::default()).unwrap();
            let roots = crate::algebra::univariate_rational_roots(&b).unwrap();
            let expect: Vec<_> = (1..=a as i64).rev().map(|k| (rat(-k, a as i64), 1)).collect();
            assert_eq!(roots, expect, "a = {a}");
        }
    }

    #[test]
    fn rejects_constant_power() {
        let sig = xy();
        let f = [MultiPoly::var(&sig, 0), MultiPoly::constant(&sig, rat(2, 1))];
        let input = InputTuple::new(&["x", "y"], &f).unwrap();
        assert!(bs_ideal(&input, &MultiIndex::unit(2, 1), &Budget::default()).is_err());
        assert!(InputTuple::new(&["x"], &[MultiPoly::constant(&sig, rat(1, 1))]).is_err());
    }
}
