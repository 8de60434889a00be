//! The Weyl algebra `D_n[s_1..s_r]`, optionally extended by `t_j, ∂_{t_j}`.
//!
//! Elements are stored in normal order: every monomial is
//! `x^α t^γ ∂^β ∂_t^δ s^σ` with all coordinates to the left of all
//! derivations. The parameters `s_j` (and any auxiliary commuting variables)
//! are central.

pub(crate) mod element;
mod twisted;

pub use element::{substitute_s, weyl_mul, WeylElement};
pub use twisted::{weyl_apply_twisted, TwistedElement, TwistedModule};

use std::fmt;
use std::sync::Arc;

use crate::algebra::signature::{s_names, t_names};
use crate::algebra::Signature;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    x_names: Vec<String>,
    r: usize,
    extended: bool,
    aux_names: Vec<String>,
    names: Vec<String>,
}

/// Shape of a Weyl algebra: `n` coordinate/derivation pairs, `r` central
/// parameters, whether the graph pairs `(t_j, ∂_{t_j})` are present, and any
/// extra central commuting variables used for homogenization.
///
/// Generator layout (indices into exponent vectors):
/// `x_1..x_n, [t_1..t_r], ∂_1..∂_n, [∂_{t_1}..∂_{t_r}], s_1..s_r, aux…`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylSignature(Arc<Inner>);

impl WeylSignature {
    /// `D_n[s_1..s_r]`, with the `t`-block when `extended`.
    pub fn new<S: AsRef<str>>(x_names: &[S], r: usize, extended: bool) -> Result<Self> {
        if x_names.is_empty() {
            return Err(Error::InvalidInput("Weyl algebra needs n >= 1".into()));
        }
        if r == 0 {
            return Err(Error::InvalidInput("Weyl algebra needs r >= 1".into()));
        }
        Self::build(x_names, r, extended, &[] as &[&str])
    }

    /// Same as [`WeylSignature::new`] plus central commuting variables.
    pub fn with_aux<S: AsRef<str>, A: AsRef<str>>(
        x_names: &[S],
        r: usize,
        extended: bool,
        aux: &[A],
    ) -> Result<Self> {
        if x_names.is_empty() || r == 0 {
            return Err(Error::InvalidInput("Weyl algebra needs n, r >= 1".into()));
        }
        Self::build(x_names, r, extended, aux)
    }

    /// The commutative ring `ℚ[s_1..s_r]` seen as a Weyl algebra with no pairs.
    pub fn parameters_only(r: usize) -> Self {
        Self::build(&[] as &[&str], r, false, &[] as &[&str]).expect("valid layout")
    }

    fn build<S: AsRef<str>, A: AsRef<str>>(
        x_names: &[S],
        r: usize,
        extended: bool,
        aux: &[A],
    ) -> Result<Self> {
        let x_names: Vec<String> = x_names.iter().map(|s| s.as_ref().to_string()).collect();
        let aux_names: Vec<String> = aux.iter().map(|s| s.as_ref().to_string()).collect();
        let tn = if extended { t_names(r) } else { Vec::new() };
        let mut names: Vec<String> = x_names.iter().cloned().chain(tn.iter().cloned()).collect();
        names.extend(x_names.iter().chain(tn.iter()).map(|v| format!("d_{v}")));
        names.extend(s_names(r));
        names.extend(aux_names.iter().cloned());
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate generator `{n}`")));
            }
        }
        Ok(WeylSignature(Arc::new(Inner {
            x_names,
            r,
            extended,
            aux_names,
            names,
        })))
    }

    pub fn n(&self) -> usize {
        self.0.x_names.len()
    }

    pub fn r(&self) -> usize {
        self.0.r
    }

    pub fn extended(&self) -> bool {
        self.0.extended
    }

    pub fn x_names(&self) -> &[String] {
        &self.0.x_names
    }

    pub fn aux_names(&self) -> &[String] {
        &self.0.aux_names
    }

    /// Number of (coordinate, derivation) pairs.
    pub fn pairs(&self) -> usize {
        self.n() + if self.extended() { self.r() } else { 0 }
    }

    pub fn num_vars(&self) -> usize {
        2 * self.pairs() + self.r() + self.0.aux_names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn x(&self, i: usize) -> usize {
        assert!(i < self.n());
        i
    }

    pub fn d(&self, i: usize) -> usize {
        assert!(i < self.n());
        self.pairs() + i
    }

    pub fn t(&self, j: usize) -> usize {
        assert!(self.extended() && j < self.r());
        self.n() + j
    }

    pub fn dt(&self, j: usize) -> usize {
        assert!(self.extended() && j < self.r());
        self.pairs() + self.n() + j
    }

    pub fn s(&self, j: usize) -> usize {
        assert!(j < self.r());
        2 * self.pairs() + j
    }

    pub fn aux(&self, k: usize) -> usize {
        assert!(k < self.0.aux_names.len());
        2 * self.pairs() + self.r() + k
    }

    pub fn x_block(&self) -> Vec<usize> {
        (0..self.n()).collect()
    }

    pub fn d_block(&self) -> Vec<usize> {
        (0..self.n()).map(|i| self.d(i)).collect()
    }

    pub fn t_block(&self) -> Vec<usize> {
        if self.extended() {
            (0..self.r()).flat_map(|j| [self.t(j), self.dt(j)]).collect()
        } else {
            Vec::new()
        }
    }

    pub fn s_block(&self) -> Vec<usize> {
        (0..self.r()).map(|j| self.s(j)).collect()
    }

    pub fn aux_block(&self) -> Vec<usize> {
        (0..self.0.aux_names.len()).map(|k| self.aux(k)).collect()
    }

    /// Variables that are not central (coordinates and derivations).
    pub fn operator_block(&self) -> Vec<usize> {
        (0..2 * self.pairs()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Commutative signature `x_1..x_n, s_1..s_r` hosting twisted-module numerators.
    pub fn xs_signature(&self) -> Signature {
        Signature::xs(self.x_names(), self.r()).expect("distinct names")
    }

    /// Drop the `t`-block and auxiliaries.
    pub fn base(&self) -> WeylSignature {
        Self::build(self.x_names(), self.r(), false, &[] as &[&str]).expect("valid")
    }

    pub(crate) fn check_same(&self, other: &WeylSignature) -> Result<()> {
        if Arc::ptr_eq(&self.0, &other.0) || self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

impl fmt::Debug for WeylSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D<{}>", self.0.names.join(","))
    }
}
