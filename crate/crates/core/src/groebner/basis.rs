//! Buchberger's algorithm for left ideals of a Weyl algebra.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, Zero};

use super::order::{OrderKey, TermOrder};
use crate::algebra::{Monomial, Rational};
use crate::error::{Error, Result};
use crate::weyl::element::mono_product;
use crate::weyl::{WeylElement, WeylSignature};

/// Caps for a single Gröbner run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Budget {
    /// S-pairs that may be reduced.
    pub max_pairs: usize,
    /// Total degree in `x, ∂, t, ∂_t` (and auxiliaries) of any basis element.
    pub max_degree: u32,
    /// Total degree in `s` of any basis element.
    pub max_s_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 50_000,
            max_degree: 64,
            max_s_degree: 48,
        }
    }
}

/// A left Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub generators: Vec<WeylElement>,
    pub order: TermOrder,
    pub reduced: bool,
}

/// Working polynomial: terms keyed by order key, largest last.
#[derive(Clone, Debug)]
struct Poly {
    terms: BTreeMap<OrderKey, (Monomial, Rational)>,
}

impl Poly {
    fn from_element(e: &WeylElement, ord: &TermOrder) -> Self {
        Poly {
            terms: e
                .terms()
                .map(|(m, c)| (ord.key(m), (m.clone(), c.clone())))
                .collect(),
        }
    }

    fn to_element(&self, sig: &WeylSignature) -> WeylElement {
        WeylElement::from_terms(sig, self.terms.values().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> Option<(&OrderKey, &Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(k, (m, c))| (k, m, c))
    }

    fn make_monic(&mut self) {
        if let Some((_, _, c)) = self.leading() {
            let inv = c.recip();
            if !inv.is_one() {
                for (_, c) in self.terms.values_mut() {
                    *c *= &inv;
                }
            }
        }
    }

    /// `self -= c · X^delta · g`
    fn sub_left_multiple(&mut self, c: &Rational, delta: &Monomial, g: &Poly, ord: &TermOrder, pairs: usize) {
        for (gm, gc) in g.terms.values() {
            let base = c * gc;
            for (m, w) in mono_product(pairs, delta.exponents(), gm.exponents()) {
                let key = ord.key(&m);
                let v = &base * Rational::from_integer(w);
                use std::collections::btree_map::Entry;
                match self.terms.entry(key) {
                    Entry::Vacant(e) => {
                        e.insert((m, -v));
                    }
                    Entry::Occupied(mut e) => {
                        e.get_mut().1 -= v;
                        if e.get().1.is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
    }

    fn degrees(&self, sig: &WeylSignature) -> (u32, u32) {
        let ops = 2 * sig.pairs();
        let s_lo = ops;
        let s_hi = ops + sig.r();
        let mut d = 0;
        let mut sd = 0;
        for (m, _) in self.terms.values() {
            let e = m.exponents();
            let od: u32 = e[..ops].iter().sum::<u32>() + e[s_hi..].iter().sum::<u32>();
            d = d.max(od);
            sd = sd.max(e[s_lo..s_hi].iter().sum());
        }
        (d, sd)
    }
}

struct Engine<'a> {
    ord: &'a TermOrder,
    sig: WeylSignature,
    pairs: usize,
}

impl Engine<'_> {
    /// Left division remainder. With `full == false` stops once the leading
    /// term is irreducible.
    fn reduce(&self, mut p: Poly, basis: &[Poly], full: bool) -> Poly {
        let mut rem: BTreeMap<OrderKey, (Monomial, Rational)> = BTreeMap::new();
        while let Some((key, m, c)) = p.leading().map(|(k, m, c)| (k.clone(), m.clone(), c.clone())) {
            let reducer = basis.iter().find(|g| g.leading().is_some_and(|(_, gm, _)| gm.divides(&m)));
            match reducer {
                Some(g) => {
                    let (_, gm, gc) = g.leading().unwrap();
                    let delta = m.div(gm);
                    let q = &c / gc;
                    p.sub_left_multiple(&q, &delta, g, self.ord, self.pairs);
                    debug_assert!(!p.terms.contains_key(&key));
                }
                None => {
                    if !full {
                        p.terms.extend(rem);
                        return p;
                    }
                    let entry = p.terms.remove(&key).unwrap();
                    rem.insert(key, entry);
                }
            }
        }
        Poly { terms: rem }
    }

    fn spoly(&self, a: &Poly, b: &Poly) -> Poly {
        let (_, am, ac) = a.leading().unwrap();
        let (_, bm, bc) = b.leading().unwrap();
        let l = lcm(am, bm);
        let mut p = Poly { terms: BTreeMap::new() };
        p.sub_left_multiple(&-bc.clone(), &l.div(am), a, self.ord, self.pairs);
        p.sub_left_multiple(ac, &l.div(bm), b, self.ord, self.pairs);
        p
    }
}

fn lcm(a: &Monomial, b: &Monomial) -> Monomial {
    Monomial::from_exponents(
        a.exponents()
            .iter()
            .zip(b.exponents())
            .map(|(x, y)| *x.max(y))
            .collect(),
    )
}

/// Left Gröbner basis of the left ideal generated by `gens`.
///
/// Pairs are treated smallest-lcm first; the Gebauer-Möller chain criterion
/// discards redundant pairs (the coprime criterion does not hold here).
/// The result is reduced, monic and sorted by leading monomial.
pub fn left_buchberger(gens: &[WeylElement], order: &TermOrder, budget: &Budget) -> Result<GroebnerBasis> {
    let sig = order.signature().clone();
    if gens.is_empty() {
        return Err(Error::InvalidInput("empty generator list".into()));
    }
    for g in gens {
        g.signature().check_same(&sig)?;
    }
    let eng = Engine {
        ord: order,
        sig: sig.clone(),
        pairs: sig.pairs(),
    };

    let mut basis: Vec<Poly> = Vec::new();
    let mut queue: BTreeSet<(OrderKey, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |p: Poly, basis: &mut Vec<Poly>, queue: &mut BTreeSet<_>, pending: &mut HashSet<_>| -> Result<()> {
        let (d, sd) = p.degrees(&sig);
        if d > budget.max_degree {
            return Err(Error::Resource {
                limit: "max_degree",
                max: budget.max_degree as usize,
                reached: d as usize,
            });
        }
        if sd > budget.max_s_degree {
            return Err(Error::Resource {
                limit: "max_s_degree",
                max: budget.max_s_degree as usize,
                reached: sd as usize,
            });
        }
        let j = basis.len();
        let (_, pm, _) = p.leading().unwrap();
        for (i, g) in basis.iter().enumerate() {
            let (_, gm, _) = g.leading().unwrap();
            let l = lcm(gm, pm);
            queue.insert((order.key(&l), i, j));
            pending.insert((i, j));
        }
        basis.push(p);
        Ok(())
    };

    // seed: interreduce the input a little so duplicates vanish early
    for g in gens {
        let mut p = eng.reduce(Poly::from_element(g, order), &basis, true);
        if !p.is_zero() {
            p.make_monic();
            add(p, &mut basis, &mut queue, &mut pending)?;
        }
    }

    let mut processed = 0usize;
    while let Some((lkey, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        let l = {
            let (_, a, _) = basis[i].leading().unwrap();
            let (_, b, _) = basis[j].leading().unwrap();
            lcm(a, b)
        };
        if chain_redundant(&basis, &pending, order, i, j, &l, &lkey) {
            continue;
        }
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::Resource {
                limit: "max_pairs",
                max: budget.max_pairs,
                reached: processed,
            });
        }
        let s = eng.spoly(&basis[i], &basis[j]);
        let mut h = eng.reduce(s, &basis, true);
        if !h.is_zero() {
            h.make_monic();
            add(h, &mut basis, &mut queue, &mut pending)?;
        }
    }

    let generators = interreduce(&eng, basis);
    Ok(GroebnerBasis {
        generators,
        order: order.clone(),
        reduced: true,
    })
}

fn chain_redundant(
    basis: &[Poly],
    pending: &HashSet<(usize, usize)>,
    order: &TermOrder,
    i: usize,
    j: usize,
    l: &Monomial,
    lkey: &OrderKey,
) -> bool {
    let key_pair = |a: usize, b: usize| (a.min(b), a.max(b));
    for (k, g) in basis.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        let (_, km, _) = g.leading().unwrap();
        if !km.divides(l) {
            continue;
        }
        if pending.contains(&key_pair(i, k)) || pending.contains(&key_pair(j, k)) {
            continue;
        }
        let (_, im, _) = basis[i].leading().unwrap();
        let (_, jm, _) = basis[j].leading().unwrap();
        if &order.key(&lcm(im, km)) != lkey && &order.key(&lcm(jm, km)) != lkey {
            return true;
        }
    }
    false
}

fn interreduce(eng: &Engine<'_>, basis: Vec<Poly>) -> Vec<WeylElement> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Poly> = Vec::new();
    for (idx, p) in basis.iter().enumerate() {
        let (_, pm, _) = p.leading().unwrap();
        let redundant = basis.iter().enumerate().any(|(o, q)| {
            if o == idx {
                return false;
            }
            let (_, qm, _) = q.leading().unwrap();
            qm.divides(pm) && (qm != pm || o < idx)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    keep.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    let mut out = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<Poly> = keep
            .iter()
            .enumerate()
            .filter(|(o, _)| *o != idx)
            .map(|(_, p)| p.clone())
            .collect();
        let (k, m, c) = {
            let (k, m, c) = keep[idx].leading().unwrap();
            (k.clone(), m.clone(), c.clone())
        };
        let mut tail = keep[idx].clone();
        tail.terms.remove(&k);
        let mut red = eng.reduce(tail, &others, true);
        red.terms.insert(k, (m, c));
        red.make_monic();
        keep[idx] = red.clone();
        out.push(red.to_element(&eng.sig));
    }
    out
}

impl GroebnerBasis {
    fn polys(&self) -> Vec<Poly> {
        self.generators
            .iter()
            .map(|g| Poly::from_element(g, &self.order))
            .collect()
    }

    fn engine(&self) -> Engine<'_> {
        Engine {
            ord: &self.order,
            sig: self.order.signature().clone(),
            pairs: self.order.signature().pairs(),
        }
    }

    pub fn signature(&self) -> &WeylSignature {
        self.order.signature()
    }

    /// Leading monomial of `p` under the basis order.
    pub fn leading_monomial(&self, p: &WeylElement) -> Option<Monomial> {
        p.terms()
            .map(|(m, _)| m)
            .max_by(|a, b| self.order.cmp(a, b))
            .cloned()
    }

    pub fn normal_form(&self, p: &WeylElement) -> Result<WeylElement> {
        left_normal_form(p, self)
    }

    pub fn contains(&self, p: &WeylElement) -> Result<bool> {
        Ok(left_normal_form(p, self)?.is_zero())
    }

    /// Whether every S-pair reduces to zero (exhaustive, no criteria).
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let eng = self.engine();
        let polys = self.polys();
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                let s = eng.spoly(&polys[i], &polys[j]);
                if !eng.reduce(s, &polys, true).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// No generator has a term divisible by another generator's leading monomial.
    pub fn is_reduced(&self) -> bool {
        let lms: Vec<Monomial> = self
            .generators
            .iter()
            .map(|g| self.leading_monomial(g).unwrap())
            .collect();
        self.generators.iter().enumerate().all(|(i, g)| {
            g.terms().all(|(m, _)| {
                lms.iter()
                    .enumerate()
                    .all(|(j, lm)| j == i || !lm.divides(m))
            })
        })
    }
}

/// Remainder of left division of `p` by the basis.
pub fn left_normal_form(p: &WeylElement, g: &GroebnerBasis) -> Result<WeylElement> {
    p.signature().check_same(g.signature())?;
    let eng = g.engine();
    let polys = g.polys();
    Ok(eng
        .reduce(Poly::from_element(p, &g.order), &polys, true)
        .to_element(g.signature()))
}

/// Basis elements free of every generator in `block`. Requires an order
/// that eliminates `block`, in which case they generate the intersection of
/// the ideal with the subalgebra (or subring) not involving `block`.
pub fn eliminate_block(g: &GroebnerBasis, block: &[usize]) -> Result<Vec<WeylElement>> {
    if !g.order.eliminates(block) {
        let names: Vec<&str> = block.iter().map(|&i| g.signature().names()[i].as_str()).collect();
        return Err(Error::NotEliminating(names.join(",")));
    }
    Ok(g.generators
        .iter()
        .filter(|e| !e.involves(block))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn d1() -> WeylSignature {
        WeylSignature::new(&["x"], 1, false).unwrap()
    }

    #[test]
    fn single_generator() {
        let sig = d1();
        let d = WeylElement::d(&sig, 0);
        let gb = left_buchberger(std::slice::from_ref(&d), &TermOrder::degrevlex(&sig), &Budget::default()).unwrap();
        assert_eq!(gb.generators, vec![d]);
    }

    #[test]
    fn relation_gives_unit_ideal() {
        let sig = d1();
        let gb = left_buchberger(
            &[WeylElement::x(&sig, 0), WeylElement::d(&sig, 0)],
            &TermOrder::degrevlex(&sig),
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(gb.generators, vec![WeylElement::one(&sig)]);
    }

    #[test]
    fn parameter_falls_out() {
        let sig = d1();
        let x = WeylElement::x(&sig, 0);
        let xd_s = &(&x * &WeylElement::d(&sig, 0)) - &WeylElement::s(&sig, 0);
        let ord = TermOrder::elimination(&sig, &[sig.operator_block()]).unwrap();
        let gb = left_buchberger(&[xd_s.clone(), x.clone()], &ord, &Budget::default()).unwrap();
        // ∂·x − (x∂ − s) = s + 1; s itself is not in the left ideal
        let sp1 = &WeylElement::s(&sig, 0) + &WeylElement::one(&sig);
        assert!(gb.contains(&sp1).unwrap());
        assert!(!gb.contains(&WeylElement::s(&sig, 0)).unwrap());
        assert!(gb.contains(&xd_s).unwrap());
        assert!(gb.satisfies_buchberger_criterion());
        let elim = eliminate_block(&gb, &sig.operator_block()).unwrap();
        assert_eq!(elim, vec![sp1]);
        assert!(matches!(eliminate_block(&gb, &sig.s_block()), Err(Error::NotEliminating(_))));
    }

    #[test]
    fn normal_forms() {
        let sig = d1();
        let x = WeylElement::x(&sig, 0);
        let d = WeylElement::d(&sig, 0);
        let ord = TermOrder::degrevlex(&sig);
        let gd = left_buchberger(std::slice::from_ref(&d), &ord, &Budget::default()).unwrap();
        assert_eq!(left_normal_form(&(&d * &x), &gd).unwrap(), WeylElement::one(&sig));
        let gx = left_buchberger(std::slice::from_ref(&x), &ord, &Budget::default()).unwrap();
        assert!(left_normal_form(&(&x * &x), &gx).unwrap().is_zero());
        let g = left_buchberger(&[&(&x * &d) - &WeylElement::s(&sig, 0)], &ord, &Budget::default()).unwrap();
        let sp1 = &WeylElement::s(&sig, 0) + &WeylElement::one(&sig);
        assert_eq!(left_normal_form(&sp1, &g).unwrap(), sp1);
    }

    #[test]
    fn commutative_elimination() {
        let sig = WeylSignature::parameters_only(2);
        let s1 = WeylElement::s(&sig, 0);
        let s2 = WeylElement::s(&sig, 1);
        let ord = TermOrder::elimination(&sig, &[vec![sig.s(1)]]).unwrap();
        let gb = left_buchberger(&[&s1 - &s2, s2.clone()], &ord, &Budget::default()).unwrap();
        assert_eq!(eliminate_block(&gb, &[sig.s(1)]).unwrap(), vec![s1]);
    }

    #[test]
    fn budget_is_enforced() {
        let sig = WeylSignature::new(&["x", "y"], 1, false).unwrap();
        let x = WeylElement::x(&sig, 0);
        let y = WeylElement::x(&sig, 1);
        let dx = WeylElement::d(&sig, 0);
        let g1 = &(&(&x * &x) * &dx) - &(&y * &WeylElement::d(&sig, 1));
        let g2 = &(&y * &y) - &WeylElement::constant(&sig, int(2));
        let tight = Budget {
            max_pairs: 0,
            ..Budget::default()
        };
        let err = left_buchberger(&[g1, g2], &TermOrder::degrevlex(&sig), &tight).unwrap_err();
        assert!(matches!(err, Error::Resource { limit: "max_pairs", .. }));
    }
}
