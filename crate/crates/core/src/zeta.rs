//! Candidate poles of the multivariate motivic zeta function from the
//! numerical data of an embedded resolution, and their containment in the
//! zero locus of a Bernstein-Sato ideal.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{MultiPoly, Rational, Signature};
use crate::error::{Error, Result};
use crate::locus::HyperplaneComponent;
use crate::pipeline::BSIdeal;

/// One exceptional or strict-transform divisor `E_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    /// `N_{k,j}`: order of vanishing of `f_j` along `E_k`.
    #[serde(rename = "N")]
    pub n: Vec<u32>,
    /// Discrepancy plus one.
    pub nu: u32,
    #[serde(default)]
    pub label: String,
}

/// Numerical data of an embedded resolution, supplied by the user.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionData {
    pub r: usize,
    pub divisors: Vec<Divisor>,
    #[serde(default)]
    pub label: String,
}

impl ResolutionData {
    /// Checks ranks and `ν ≥ 1`; divisors with `N = 0` are dropped.
    pub fn validated(mut self) -> Result<Self> {
        if self.r == 0 {
            return Err(Error::InvalidInput("resolution data needs r >= 1".into()));
        }
        for d in &self.divisors {
            if d.n.len() != self.r {
                return Err(Error::RankMismatch {
                    expected: self.r,
                    got: d.n.len(),
                });
            }
            if d.nu == 0 {
                return Err(Error::InvalidInput(format!("divisor `{}` has nu = 0", d.label)));
            }
        }
        self.divisors.retain(|d| d.n.iter().any(|&x| x > 0));
        Ok(self)
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let data: ResolutionData =
            serde_json::from_str(src).map_err(|e| Error::InvalidInput(format!("resolution data: {e}")))?;
        data.validated()
    }
}

/// The distinct hyperplanes `Σ_j N_{k,j} s_j + ν_k = 0`, each divided by
/// its content, in sorted order.
pub fn polar_candidates(data: &ResolutionData) -> Result<Vec<HyperplaneComponent>> {
    let data = data.clone().validated()?;
    let mut out = BTreeSet::new();
    for d in &data.divisors {
        let h = HyperplaneComponent::new(d.n.iter().map(|&x| x as i64).collect(), d.nu as i64)?;
        out.insert(h.primitive());
    }
    Ok(out.into_iter().collect())
}

/// Whether every generator vanishes identically on `a·s + b = 0`: solve
/// for the first `s_k` with `a_k ≠ 0` and substitute.
pub fn hyperplane_in_zero_locus(h: &HyperplaneComponent, ideal: &BSIdeal) -> Result<bool> {
    if h.rank() != ideal.r {
        return Err(Error::RankMismatch {
            expected: ideal.r,
            got: h.rank(),
        });
    }
    let sig = Signature::s_params(ideal.r);
    let k = h.a.iter().position(|&a| a != 0).expect("a ≠ 0");
    let ak = Rational::from_integer(h.a[k].into());
    // s_k = −(b + Σ_{j≠k} a_j s_j) / a_k
    let mut value = MultiPoly::constant(&sig, Rational::from_integer((-h.b).into()) / &ak);
    for (j, &a) in h.a.iter().enumerate() {
        if j != k && a != 0 {
            let c = Rational::from_integer((-a).into()) / &ak;
            value = &value + &MultiPoly::var(&sig, j).scale(&c);
        }
    }
    for g in &ideal.generators {
        if !g.embed_by_name(&sig)?.substitute(k, &value)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Containment of the candidate polar locus in `Z(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub candidates: Vec<HyperplaneComponent>,
    pub contained: Vec<HyperplaneComponent>,
    /// Candidates outside `Z(B)`. Candidate poles may cancel, so these are
    /// not counterexamples.
    pub candidate_only: Vec<HyperplaneComponent>,
}

impl ConjectureReport {
    pub fn all_contained(&self) -> bool {
        self.candidate_only.is_empty()
    }
}

pub fn conjecture_check(data: &ResolutionData, ideal: &BSIdeal) -> Result<ConjectureReport> {
    if data.r != ideal.r {
        return Err(Error::RankMismatch {
            expected: ideal.r,
            got: data.r,
        });
    }
    let candidates = polar_candidates(data)?;
    let mut contained = Vec::new();
    let mut candidate_only = Vec::new();
    for h in &candidates {
        if hyperplane_in_zero_locus(h, ideal)? {
            contained.push(h.clone());
        } else {
            candidate_only.push(h.clone());
        }
    }
    Ok(ConjectureReport {
        candidates,
        contained,
        candidate_only,
    })
}
