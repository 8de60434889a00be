//! Zero loci of Bernstein-Sato ideals, their images under
//! `Exp: α ↦ exp(2πiα)`, and exact arithmetic of torsion-translated subtori.
//!
//! A root of unity `exp(2πiθ)` is always stored as its angle `θ ∈ [0, 1) ∩ ℚ`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{fmt_rational, frac};
use crate::algebra::{linear_factorization, LinearForm, MultiPoly, Rational, Signature};
use crate::error::{Error, Result};
use crate::groebner::{left_buchberger, Budget, GroebnerBasis, TermOrder};
use crate::pipeline::{BSIdeal, MultiIndex};
use crate::weyl::{WeylElement, WeylSignature};

/// An angle `θ ∈ [0, 1)`, standing for `exp(2πiθ)`.
pub type Angle = Rational;

/// The hyperplane `a·s + b = 0` with `a ∈ ℕ^r ∖ 0` and `b > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HyperplaneComponent {
    pub a: Vec<i64>,
    pub b: i64,
}

impl HyperplaneComponent {
    pub fn new(a: Vec<i64>, b: i64) -> Result<Self> {
        if a.iter().all(|&x| x == 0) {
            return Err(Error::InvalidInput("hyperplane with a = 0".into()));
        }
        if a.iter().any(|&x| x < 0) || b <= 0 {
            return Err(Error::InvalidInput(format!(
                "({a:?}, {b}) is not of the form a ∈ ℕ^r, b > 0"
            )));
        }
        Ok(HyperplaneComponent { a, b })
    }

    /// The form, when it has nonnegative slopes and a positive constant.
    pub fn from_form(form: &LinearForm) -> Option<Self> {
        let a: Option<Vec<i64>> = form.coeffs().iter().map(ToPrimitive::to_i64).collect();
        let b = form.constant().to_i64()?;
        HyperplaneComponent::new(a?, b).ok()
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn to_form(&self) -> LinearForm {
        LinearForm::from_ints(&self.a, self.b).expect("a ≠ 0")
    }

    /// Divided by the content of `(a, b)`; `(2,2)·s + 2` and `s + 1` agree.
    pub fn primitive(&self) -> Self {
        let g = self.a.iter().fold(self.b, |acc, &x| acc.gcd(&x));
        HyperplaneComponent {
            a: self.a.iter().map(|x| x / g).collect(),
            b: self.b / g,
        }
    }
}

impl fmt::Display for HyperplaneComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_form())
    }
}

/// `{t ∈ (ℂ*)^r : ∏ t_i^{a_i} = exp(2πiθ)}` with `a` primitive and its
/// first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionSubtorus {
    direction: Vec<i64>,
    theta: Angle,
}

impl TorsionSubtorus {
    /// `a` must be primitive; the sign is fixed by `(a, θ) ↦ (−a, −θ)`.
    pub fn new(direction: Vec<i64>, theta: Angle) -> Result<Self> {
        let g = direction.iter().fold(0i64, |acc, x| acc.gcd(x));
        if g != 1 {
            return Err(Error::InvalidInput(format!("direction {direction:?} is not primitive")));
        }
        let flip = direction.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
        let (direction, theta) = if flip {
            (direction.iter().map(|x| -x).collect(), -theta)
        } else {
            (direction, theta)
        };
        Ok(TorsionSubtorus {
            direction,
            theta: frac(&theta),
        })
    }

    pub fn direction(&self) -> &[i64] {
        &self.direction
    }

    pub fn theta(&self) -> &Angle {
        &self.theta
    }

    pub fn rank(&self) -> usize {
        self.direction.len()
    }
}

impl fmt::Display for TorsionSubtorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.direction.len();
        let mut lhs = Vec::new();
        for (i, &a) in self.direction.iter().enumerate() {
            let t = if r == 1 { "t".to_string() } else { format!("t{}", i + 1) };
            match a {
                0 => {}
                1 => lhs.push(t),
                _ => lhs.push(format!("{t}^{a}")),
            }
        }
        write!(f, "{} = exp(2πi·{})", lhs.join("*"), fmt_rational(&self.theta))
    }
}

/// `Exp` of an arbitrary integral hyperplane `a·s + b = 0`.
fn exp_of(a: &[BigInt], b: &BigInt) -> TorsionSubtorus {
    let d = a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let direction = a
        .iter()
        .map(|x| (x / &d).to_i64().expect("direction fits in i64"))
        .collect();
    TorsionSubtorus::new(direction, Rational::new(-b.clone(), d)).expect("primitive")
}

/// `Exp({a·s + b = 0})`: with `d = gcd(a)` the direction is `a/d` and the
/// translate `θ ≡ −b/d (mod 1)`.
pub fn exp_image(h: &HyperplaneComponent) -> TorsionSubtorus {
    let a: Vec<BigInt> = h.a.iter().map(|&x| x.into()).collect();
    exp_of(&a, &h.b.into())
}

/// A finite union of torsion-translated codimension-one subtori of `(ℂ*)^r`,
/// kept as a sorted duplicate-free set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportLocus {
    r: usize,
    components: BTreeSet<TorsionSubtorus>,
}

impl SupportLocus {
    pub fn empty(r: usize) -> Self {
        SupportLocus {
            r,
            components: BTreeSet::new(),
        }
    }

    pub fn from_components(r: usize, comps: impl IntoIterator<Item = TorsionSubtorus>) -> Result<Self> {
        let mut out = Self::empty(r);
        for c in comps {
            out.insert(c)?;
        }
        Ok(out)
    }

    pub fn insert(&mut self, c: TorsionSubtorus) -> Result<()> {
        if c.rank() != self.r {
            return Err(Error::RankMismatch {
                expected: self.r,
                got: c.rank(),
            });
        }
        self.components.insert(c);
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = &TorsionSubtorus> {
        self.components.iter()
    }

    /// At `r = 1`: the finitely many points, as angles.
    pub fn angles(&self) -> Option<BTreeSet<Angle>> {
        (self.r == 1).then(|| self.components.iter().map(|c| c.theta.clone()).collect())
    }
}

impl fmt::Display for SupportLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn locus_union(u: &SupportLocus, v: &SupportLocus) -> Result<SupportLocus> {
    if u.r != v.r {
        return Err(Error::RankMismatch {
            expected: u.r,
            got: v.r,
        });
    }
    Ok(SupportLocus {
        r: u.r,
        components: u.components.union(&v.components).cloned().collect(),
    })
}

pub fn locus_equal(u: &SupportLocus, v: &SupportLocus) -> Result<bool> {
    if u.r != v.r {
        return Err(Error::RankMismatch {
            expected: u.r,
            got: v.r,
        });
    }
    Ok(u.components == v.components)
}

/// The zero locus of an ideal split into what can be certified.
#[derive(Clone, Debug)]
pub struct LocusDecomposition {
    pub r: usize,
    /// Codimension-one components of the expected shape.
    pub components: Vec<HyperplaneComponent>,
    /// Linear codimension-one components with a negative slope or `b ≤ 0`.
    pub atypical: Vec<LinearForm>,
    /// Generators of what is left once common linear factors are removed;
    /// empty when that remainder is the unit ideal.
    pub unresolved: Vec<MultiPoly>,
}

/// Splits `Z(B)` into linear codimension-one components and an unresolved
/// remainder. For a principal ideal this is the factorization of the
/// generator; otherwise the linear forms dividing every generator are the
/// components and the quotient ideal is the remainder.
pub fn locus_components(ideal: &BSIdeal) -> Result<LocusDecomposition> {
    let gens = &ideal.generators;
    if gens.is_empty() || gens.iter().all(MultiPoly::is_zero) {
        return Err(Error::ZeroInput("locus_components"));
    }
    let sig = Signature::s_params(ideal.r);
    let gens: Vec<MultiPoly> = gens.iter().map(|g| g.embed_by_name(&sig)).collect::<Result<_>>()?;

    let first = linear_factorization(&gens[0])?;
    let mut common = Vec::new();
    let mut quotients = gens.clone();
    for form in &first.forms {
        let lp = form.to_poly(&sig);
        let mut mult = form.multiplicity();
        for g in &gens[1..] {
            let mut k = 0;
            let mut q = g.clone();
            while k < mult {
                match q.try_exact_div(&lp)? {
                    Some(next) => {
                        q = next;
                        k += 1;
                    }
                    None => break,
                }
            }
            mult = k;
        }
        if mult == 0 {
            continue;
        }
        let divisor = lp.pow(mult);
        for q in quotients.iter_mut() {
            *q = q.exact_div(&divisor)?;
        }
        common.push(form.clone());
    }

    let mut components = Vec::new();
    let mut atypical = Vec::new();
    for form in common {
        match HyperplaneComponent::from_form(&form) {
            Some(h) => components.push(h),
            None => atypical.push(form),
        }
    }
    let unresolved = residual(&quotients, ideal.r)?;
    Ok(LocusDecomposition {
        r: ideal.r,
        components,
        atypical,
        unresolved,
    })
}

/// Reduced basis of the ideal generated by `qs`, or nothing for the unit ideal.
fn residual(qs: &[MultiPoly], r: usize) -> Result<Vec<MultiPoly>> {
    if qs.iter().any(MultiPoly::is_constant) {
        return Ok(Vec::new());
    }
    let gb = s_basis(qs, r)?;
    if gb.generators.iter().any(|g| g.operator_degree() == 0 && g.s_degree() == 0) {
        return Ok(Vec::new());
    }
    gb.generators.iter().map(WeylElement::to_s_poly).collect()
}

fn s_basis(qs: &[MultiPoly], r: usize) -> Result<GroebnerBasis> {
    let psig = WeylSignature::parameters_only(r);
    let elems = qs
        .iter()
        .map(|q| WeylElement::from_poly(&psig, q))
        .collect::<Result<Vec<_>>>()?;
    left_buchberger(&elems, &TermOrder::degrevlex(&psig), &Budget::default())
}

/// Outcome of the translation check for the part of `Z(B)` that is not a
/// union of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranslationCheck {
    /// Nothing outside the hyperplane components.
    Vacuous,
    /// The whole remainder moves into `component` under `s ↦ s + shift`.
    Verified {
        component: HyperplaneComponent,
        shift: Vec<i64>,
    },
    /// No single translate in the box was found.
    NotVerifiedWithinBox { box_size: i64 },
}

/// Result of [`check_structure`].
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub decomposition: LocusDecomposition,
    /// Linear components that are not of the form `a ∈ ℕ^r`, `b > 0`.
    pub shape_violations: Vec<String>,
    /// Components with `a_i = 0` for every `i` with `m_i ≠ 0`.
    pub support_violations: Vec<HyperplaneComponent>,
    pub translation: TranslationCheck,
}

impl StructureReport {
    pub fn passes(&self) -> bool {
        self.shape_violations.is_empty()
            && self.support_violations.is_empty()
            && !matches!(self.translation, TranslationCheck::NotVerifiedWithinBox { .. })
    }
}

/// Checks the hyperplane shape of the codimension-one components, that each
/// has `a_i > 0` for some `i` with `m_i ≠ 0`, and searches integer shifts
/// `‖v‖_∞ ≤ box_size` carrying the rest of the locus into one component.
pub fn check_structure(ideal: &BSIdeal, m: &MultiIndex, box_size: i64) -> Result<StructureReport> {
    if m.as_slice().len() != ideal.r {
        return Err(Error::RankMismatch {
            expected: ideal.r,
            got: m.as_slice().len(),
        });
    }
    let decomposition = locus_components(ideal)?;
    let shape_violations = decomposition.atypical.iter().map(ToString::to_string).collect();
    let support_violations = decomposition
        .components
        .iter()
        .filter(|h| !h.a.iter().zip(m.as_slice()).any(|(&a, &mi)| mi != 0 && a > 0))
        .cloned()
        .collect();
    let translation = if decomposition.unresolved.is_empty() {
        TranslationCheck::Vacuous
    } else {
        translate_into_component(&decomposition, box_size)?
    };
    Ok(StructureReport {
        decomposition,
        shape_violations,
        support_violations,
        translation,
    })
}

/// Looks for `(H, v)` with `Z(J) + v ⊆ H`, certified by `ℓ_H(s + v)^k ∈ J`.
fn translate_into_component(dec: &LocusDecomposition, box_size: i64) -> Result<TranslationCheck> {
    let r = dec.r;
    let sig = Signature::s_params(r);
    let gb = s_basis(&dec.unresolved, r)?;
    let psig = gb.signature().clone();
    let max_k = dec.unresolved.iter().map(MultiPoly::total_degree).max().unwrap_or(1).max(1);
    let shifts = box_points(r, box_size);
    for h in &dec.components {
        let ell = h.to_form().to_poly(&sig);
        for v in &shifts {
            // ℓ(s + v) = ℓ(s) + a·v
            let av: i64 = h.a.iter().zip(v).map(|(a, x)| a * x).sum();
            let shifted = &ell + &MultiPoly::constant(&sig, Rational::from_integer(av.into()));
            let mut power = shifted.clone();
            for _ in 0..max_k {
                if gb.contains(&WeylElement::from_poly(&psig, &power)?)? {
                    return Ok(TranslationCheck::Verified {
                        component: h.clone(),
                        shift: v.clone(),
                    });
                }
                power = &power * &shifted;
            }
        }
    }
    Ok(TranslationCheck::NotVerifiedWithinBox { box_size })
}

/// Integer points of `[−T, T]^r`, smallest norms first.
fn box_points(r: usize, t: i64) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..r {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-t..=t).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts.sort_by_key(|p| {
        let sup = p.iter().map(|x| x.abs()).max().unwrap_or(0);
        (sup, p.iter().map(|x| x.abs()).sum::<i64>(), p.clone())
    });
    pts
}

/// `Exp(Z(B))`. Linear components of any sign contribute their image; a
/// remainder that is not a union of hyperplanes is accepted only when an
/// integer shift carries it into a component (its image then adds nothing),
/// otherwise [`Error::Unresolved`] lists it.
pub fn exp_locus(ideal: &BSIdeal) -> Result<SupportLocus> {
    let dec = locus_components(ideal)?;
    if !dec.unresolved.is_empty() {
        if let TranslationCheck::NotVerifiedWithinBox { .. } = translate_into_component(&dec, 10)? {
            return Err(Error::Unresolved(dec.unresolved.iter().map(ToString::to_string).collect()));
        }
    }
    let mut out = SupportLocus::empty(dec.r);
    for h in &dec.components {
        out.insert(exp_image(h))?;
    }
    for form in &dec.atypical {
        out.insert(exp_of(form.coeffs(), form.constant()))?;
    }
    Ok(out)
}

/// A subset of `ℂ*` given by angles, or all of `ℂ*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleLocus {
    pub angles: BTreeSet<Angle>,
    /// Some component pulls back to all of `ℂ*`.
    pub everything: bool,
}

impl CircleLocus {
    /// The points `Exp(roots)` of a one-parameter locus.
    pub fn from_locus(l: &SupportLocus) -> Result<Self> {
        let angles = l.angles().ok_or(Error::RankMismatch {
            expected: 1,
            got: l.rank(),
        })?;
        Ok(CircleLocus {
            angles,
            everything: false,
        })
    }
}

/// Pulls `L` back along `λ ↦ (λ^{m_1}, …, λ^{m_r})`: a component
/// `t^a = exp(2πiθ)` becomes `λ^N = exp(2πiθ)` with `N = a·m`, whose
/// solutions have angles `(θ + k)/N`.
pub fn diagonal_specialization(l: &SupportLocus, m: &[u32]) -> Result<CircleLocus> {
    if m.len() != l.rank() {
        return Err(Error::RankMismatch {
            expected: l.rank(),
            got: m.len(),
        });
    }
    if m.contains(&0) {
        return Err(Error::InvalidInput("diagonal weights must be positive".into()));
    }
    let mut out = CircleLocus {
        angles: BTreeSet::new(),
        everything: false,
    };
    for c in l.components() {
        let n: i64 = c.direction.iter().zip(m).map(|(a, &w)| a * w as i64).sum();
        if n == 0 {
            out.everything |= c.theta.is_zero();
            continue;
        }
        let (n, theta) = if n < 0 { (-n, frac(&-c.theta.clone())) } else { (n, c.theta.clone()) };
        for k in 0..n {
            let angle = (&theta + Rational::from_integer(k.into())) / Rational::from_integer(n.into());
            out.angles.insert(frac(&angle));
        }
    }
    Ok(out)
}

/// Whether `b ∈ ℤ` shifted by `gcd(a)·k` leaves the image unchanged.
pub fn translation_invariant(h: &HyperplaneComponent, k: i64) -> bool {
    let d = h.a.iter().fold(0i64, |acc, x| acc.gcd(x));
    let b = h.b + d * k;
    let a: Vec<BigInt> = h.a.iter().map(|&x| x.into()).collect();
    exp_of(&a, &b.into()) == exp_image(h)
}

impl LocusDecomposition {
    pub fn is_fully_resolved(&self) -> bool {
        self.unresolved.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::pipeline::Provenance;

    fn ideal(r: usize, gens: Vec<MultiPoly>) -> BSIdeal {
        BSIdeal {
            generators: gens,
            r,
            provenance: Provenance {
                x_names: vec![],
                f: vec![],
                m: vec![],
            },
        }
    }

    fn form(a: &[i64], b: i64) -> MultiPoly {
        LinearForm::from_ints(a, b).unwrap().to_poly(&Signature::s_params(a.len()))
    }

    fn h(a: &[i64], b: i64) -> HyperplaneComponent {
        HyperplaneComponent::new(a.to_vec(), b).unwrap()
    }

    #[test]
    fn components_of_principal_ideals() {
        let b = ideal(1, vec![&form(&[1], 1) * &form(&[2], 1)]);
        let d = locus_components(&b).unwrap();
        assert_eq!(d.components, vec![h(&[1], 1), h(&[2], 1)]);
        assert!(d.unresolved.is_empty());

        let b = ideal(2, vec![&form(&[1, 0], 1) * &form(&[0, 1], 1)]);
        let d = locus_components(&b).unwrap();
        assert_eq!(d.components, vec![h(&[0, 1], 1), h(&[1, 0], 1)]);

        let s = MultiPoly::var(&Signature::s_params(1), 0);
        let b = ideal(1, vec![&s.pow(2) + &MultiPoly::one(s.signature())]);
        let d = locus_components(&b).unwrap();
        assert!(d.components.is_empty());
        assert_eq!(d.unresolved[0].to_string(), "s^2 + 1");
        assert!(matches!(exp_locus(&b), Err(Error::Unresolved(_))));
    }

    #[test]
    fn exp_images() {
        let t = exp_image(&h(&[2], 1));
        assert_eq!((t.direction(), t.theta()), (&[1i64][..], &rat(1, 2)));
        let t = exp_image(&h(&[1, 1], 2));
        assert_eq!((t.direction(), t.theta()), (&[1i64, 1][..], &rat(0, 1)));
        let t = exp_image(&h(&[6], 5));
        assert_eq!(t.theta(), &rat(1, 6));
        for k in -5..=5 {
            assert!(translation_invariant(&h(&[2, 4], 3), k));
        }
    }

    #[test]
    fn union_and_equality() {
        let t1 = exp_image(&h(&[1, 0], 1));
        let t2 = exp_image(&h(&[0, 1], 1));
        let a = SupportLocus::from_components(2, [t1.clone()]).unwrap();
        let b = SupportLocus::from_components(2, [t1.clone(), t2.clone()]).unwrap();
        let u = locus_union(&a, &b).unwrap();
        assert_eq!(u.len(), 2);
        assert!(locus_equal(&u, &SupportLocus::from_components(2, [t2, t1]).unwrap()).unwrap());
        let c = SupportLocus::from_components(2, [exp_image(&h(&[1, 1], 2))]).unwrap();
        // 2s1 + 2s2 + 1 = 0 maps to t1·t2 = −1
        let d = SupportLocus::from_components(2, [exp_image(&h(&[2, 2], 1))]).unwrap();
        assert!(!locus_equal(&c, &d).unwrap());
        assert!(locus_union(&a, &SupportLocus::empty(1)).is_err());
    }

    #[test]
    fn structure_checks() {
        let b = ideal(2, vec![&form(&[1, 0], 1) * &form(&[0, 1], 1)]);
        assert!(check_structure(&b, &MultiIndex::ones(2), 10).unwrap().passes());
        let b = ideal(2, vec![form(&[1, 0], 1)]);
        let rep = check_structure(&b, &MultiIndex::new(vec![0, 1]), 10).unwrap();
        assert!(!rep.passes());
        assert_eq!(rep.support_violations, vec![h(&[1, 0], 1)]);
    }

    #[test]
    fn point_component_translates_into_a_line() {
        // ⟨(s1+1)(s1+2), (s1+1)(s2+3)⟩ = (s1+1) ∩ (s1+2, s2+3): the point
        // (−2, −3) moves onto s1 + 1 = 0 by the shift (1, 0)
        let l1 = form(&[1, 0], 1);
        let b = ideal(2, vec![&l1 * &form(&[1, 0], 2), &l1 * &form(&[0, 1], 3)]);
        let rep = check_structure(&b, &MultiIndex::ones(2), 10).unwrap();
        assert_eq!(rep.decomposition.components, vec![h(&[1, 0], 1)]);
        assert_eq!(rep.decomposition.unresolved.len(), 2);
        assert_eq!(
            rep.translation,
            TranslationCheck::Verified {
                component: h(&[1, 0], 1),
                shift: vec![1, 0]
            }
        );
        assert!(rep.passes());
        assert_eq!(exp_locus(&b).unwrap().len(), 1);
    }

    #[test]
    fn diagonal() {
        let l = SupportLocus::from_components(2, [exp_image(&h(&[1, 1], 2))]).unwrap();
        let d = diagonal_specialization(&l, &[1, 1]).unwrap();
        assert_eq!(d.angles, [rat(0, 1), rat(1, 2)].into_iter().collect());
        let l = SupportLocus::from_components(2, [exp_image(&h(&[1, 0], 1)), exp_image(&h(&[0, 1], 1))]).unwrap();
        let d = diagonal_specialization(&l, &[1, 1]).unwrap();
        assert_eq!(d.angles, [rat(0, 1)].into_iter().collect());
        assert!(diagonal_specialization(&l, &[0, 1]).is_err());
    }
}
