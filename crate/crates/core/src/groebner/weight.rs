use crate::error::{Error, Result};
use crate::weyl::{WeylElement, WeylSignature};

/// Multi-degree of a monomial under the `t`-weights: entry `j` is
/// `deg t_j − deg ∂_{t_j}` (so `w(t_j) = 1`, `w(∂_{t_j}) = −1`, zero elsewhere).
pub fn t_weight(sig: &WeylSignature, e: &[u32]) -> Vec<i64> {
    (0..sig.r())
        .map(|j| e[sig.t(j)] as i64 - e[sig.dt(j)] as i64)
        .collect()
}

/// The `t`-multidegree of a homogeneous element.
pub fn homogeneous_t_weight(p: &WeylElement) -> Result<Vec<i64>> {
    let sig = p.signature();
    let mut w: Option<Vec<i64>> = None;
    for (m, _) in p.terms() {
        let wm = t_weight(sig, m.exponents());
        match &w {
            None => w = Some(wm),
            Some(prev) if *prev == wm => {}
            Some(_) => return Err(Error::NotHomogeneous(p.to_string())),
        }
    }
    Ok(w.unwrap_or_else(|| vec![0; sig.r()]))
}

/// Weight-zero generators of the weight-zero part of a left ideal given by
/// `t`-homogeneous generators.
///
/// A generator of weight `d_j > 0` in `t_j` is multiplied on the left by
/// `∂_{t_j}^{d_j}`, one of weight `d_j < 0` by `t_j^{−d_j}`. Homogeneous
/// elements of fixed negative (positive) weight are left multiples of a
/// power of `∂_t` (`t`) by weight-zero elements, so these products generate
/// the weight-zero part. Weight-zero generators pass through unchanged.
pub fn weight_zero_part(gens: &[WeylElement]) -> Result<Vec<WeylElement>> {
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        let sig = g.signature();
        if !sig.extended() {
            return Err(Error::InvalidInput("weight_zero_part needs the t-block".into()));
        }
        if g.is_zero() {
            continue;
        }
        let w = homogeneous_t_weight(g)?;
        let mut lifted = g.clone();
        for (j, &d) in w.iter().enumerate() {
            let factor = if d > 0 {
                WeylElement::dt(sig, j)
            } else if d < 0 {
                WeylElement::t(sig, j)
            } else {
                continue;
            };
            for _ in 0..d.unsigned_abs() {
                lifted = &factor * &lifted;
            }
        }
        out.push(lifted);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> WeylSignature {
        WeylSignature::new(&["x"], 1, true).unwrap()
    }

    #[test]
    fn passes_weight_zero_through() {
        let sig = sig();
        let e = &(&WeylElement::x(&sig, 0) * &WeylElement::d(&sig, 0))
            + &(&WeylElement::t(&sig, 0) * &WeylElement::dt(&sig, 0));
        assert_eq!(weight_zero_part(std::slice::from_ref(&e)).unwrap(), vec![e]);
    }

    #[test]
    fn lifts_pure_t() {
        let sig = sig();
        let t = WeylElement::t(&sig, 0);
        let out = weight_zero_part(std::slice::from_ref(&t)).unwrap();
        assert_eq!(out, vec![&WeylElement::dt(&sig, 0) * &t]);
        assert_eq!(crate::weyl::substitute_s(&out[0]).unwrap().to_string(), "-s");
    }

    #[test]
    fn rejects_inhomogeneous() {
        let sig = sig();
        let e = &WeylElement::t(&sig, 0) - &WeylElement::x(&sig, 0);
        assert!(matches!(weight_zero_part(&[e]), Err(Error::NotHomogeneous(_))));
    }
}
