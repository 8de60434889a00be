//! Canonical strings for result documents.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::rational::fmt_rational;
use crate::algebra::{linear_factorization, univariate_rational_roots, LinearForm, MultiPoly, Rational};
use crate::error::Result;

/// `p` without spaces, as used inside factored strings.
pub fn compact(p: &MultiPoly) -> String {
    p.to_string().replace(' ', "")
}

/// One-parameter form written monic: `s+1/2`.
fn monic_factor(form: &LinearForm) -> (Rational, String) {
    let root = form.root().expect("rank one");
    let c = -root.clone();
    let body = if c.is_zero() {
        "s".to_string()
    } else if c.is_positive() {
        format!("s+{}", fmt_rational(&c))
    } else {
        format!("s-{}", fmt_rational(&-c))
    };
    (root, body)
}

fn with_power(body: String, k: u32) -> String {
    if k == 1 {
        format!("({body})")
    } else {
        format!("({body})^{k}")
    }
}

/// Product of linear factors: monic in `s` at `r = 1` (ordered by root),
/// primitive integral forms otherwise (`s1` terms first). A scalar other
/// than one leads; a factor without rational linear factors trails.
pub fn factored(p: &MultiPoly) -> Result<String> {
    if p.is_zero() {
        return Ok("0".into());
    }
    if p.is_constant() {
        return Ok(fmt_rational(&p.as_constant().unwrap()));
    }
    let fac = linear_factorization(p)?;
    let mut scalar = fac.constant.clone();
    let mut parts = Vec::new();
    if p.signature().len() == 1 {
        let mut forms: Vec<(Rational, String, u32)> = fac
            .forms
            .iter()
            .map(|f| {
                let (root, body) = monic_factor(f);
                let lead = Rational::from_integer(f.coeffs()[0].clone());
                for _ in 0..f.multiplicity() {
                    scalar *= &lead;
                }
                (root, body, f.multiplicity())
            })
            .collect();
        forms.sort_by(|a, b| a.0.cmp(&b.0));
        parts.extend(forms.into_iter().map(|(_, body, k)| with_power(body, k)));
    } else {
        let sig = p.signature();
        let mut forms: Vec<&LinearForm> = fac.forms.iter().collect();
        forms.sort_by(|a, b| b.coeffs().cmp(a.coeffs()).then_with(|| a.constant().cmp(b.constant())));
        for f in forms {
            parts.push(with_power(compact(&f.to_poly(sig)), f.multiplicity()));
        }
    }
    if !fac.is_complete() {
        parts.push(format!("({})", compact(&fac.remainder)));
    }
    if !scalar.is_one() {
        parts.insert(0, fmt_rational(&scalar));
    }
    Ok(parts.join("*"))
}

/// `[[num, den, multiplicity]]` for the rational roots, ascending.
pub fn roots_triples(b: &MultiPoly) -> Result<Vec<(BigInt, BigInt, u32)>> {
    Ok(univariate_rational_roots(b)?
        .into_iter()
        .map(|(q, k)| (q.numer().clone(), q.denom().clone(), k))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse::parse_s_poly;

    #[test]
    fn factored_strings() {
        let b = parse_s_poly("(s+1)*(s+1/2)", 1).unwrap();
        assert_eq!(factored(&b).unwrap(), "(s+1)*(s+1/2)");
        let b = parse_s_poly("(s+1)*(s+5/6)*(s+7/6)", 1).unwrap();
        assert_eq!(factored(&b).unwrap(), "(s+7/6)*(s+1)*(s+5/6)");
        let b = parse_s_poly("2*(s+1)^2*(s^2+1)", 1).unwrap();
        assert_eq!(factored(&b).unwrap(), "2*(s+1)^2*(s^2+1)");
        let b = parse_s_poly("(s1+1)*(s2+1)", 2).unwrap();
        assert_eq!(factored(&b).unwrap(), "(s1+1)*(s2+1)");
        let b = parse_s_poly("(s2+1)*(s1+s2+2)*(s1+s2+1)", 2).unwrap();
        assert_eq!(factored(&b).unwrap(), "(s1+s2+1)*(s1+s2+2)*(s2+1)");
        let b = parse_s_poly("s", 1).unwrap();
        assert_eq!(factored(&b).unwrap(), "(s)");
    }

    #[test]
    fn factored_strings_parse_back() {
        for src in ["(s+1)*(s+1/2)", "3*(s-2)^3", "(s1+s2+2)*(s2+1)"] {
            let r = if src.contains("s1") { 2 } else { 1 };
            let p = parse_s_poly(src, r).unwrap();
            assert_eq!(parse_s_poly(&factored(&p).unwrap(), r).unwrap(), p);
        }
    }
}
