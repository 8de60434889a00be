use std::cmp::Ordering;

use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::weyl::WeylSignature;

/// Comparison key: lexicographic comparison of keys realizes the order.
///
/// Layout: one entry per weight row, then total degree, then the negated
/// exponents from the last generator to the first (reverse lexicographic).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey(pub(crate) Box<[i64]>);

/// Weight rows refined by total degree and graded reverse lexicographic
/// order on the generator layout of a [`WeylSignature`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    sig: WeylSignature,
    rows: Vec<Vec<i64>>,
}

impl TermOrder {
    /// Builds and validates an order. Rows must have one entry per generator
    /// and be nonnegative (so the order is a well-order), and every
    /// `x_i ∂_i` must exceed `1`.
    pub fn new(sig: &WeylSignature, rows: Vec<Vec<i64>>) -> Result<Self> {
        let nv = sig.num_vars();
        if let Some(r) = rows.iter().find(|r| r.len() != nv) {
            return Err(Error::InadmissibleOrder(format!(
                "weight row has {} entries, expected {nv}",
                r.len()
            )));
        }
        let order = TermOrder {
            sig: sig.clone(),
            rows,
        };
        order.check_admissible()?;
        if order.rows.iter().flatten().any(|&w| w < 0) {
            return Err(Error::InadmissibleOrder("negative weights do not give a well-order".into()));
        }
        Ok(order)
    }

    /// Plain graded reverse lexicographic order.
    pub fn degrevlex(sig: &WeylSignature) -> Self {
        TermOrder::new(sig, Vec::new()).expect("degrevlex is admissible")
    }

    /// Successive elimination blocks, each realized by a 0/1 weight row.
    pub fn elimination(sig: &WeylSignature, blocks: &[Vec<usize>]) -> Result<Self> {
        let rows = blocks
            .iter()
            .map(|b| {
                let mut w = vec![0; sig.num_vars()];
                for &i in b {
                    w[i] = 1;
                }
                w
            })
            .collect();
        TermOrder::new(sig, rows)
    }

    pub fn signature(&self) -> &WeylSignature {
        &self.sig
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Every `x_i ∂_i` must compare greater than `1`, which is what makes
    /// leading monomials multiply additively.
    pub fn check_admissible(&self) -> Result<()> {
        let nv = self.sig.num_vars();
        let one = self.key(&Monomial::one(nv));
        for i in 0..self.sig.pairs() {
            let mut e = vec![0; nv];
            e[i] = 1;
            e[self.sig.pairs() + i] = 1;
            if self.key(&Monomial::from_exponents(e)) <= one {
                return Err(Error::InadmissibleOrder(format!(
                    "{}*{} is not greater than 1",
                    self.sig.names()[i],
                    self.sig.names()[self.sig.pairs() + i]
                )));
            }
        }
        Ok(())
    }

    pub fn key(&self, m: &Monomial) -> OrderKey {
        let e = m.exponents();
        let mut k = Vec::with_capacity(self.rows.len() + 1 + e.len());
        for row in &self.rows {
            k.push(row.iter().zip(e).map(|(w, &x)| w * x as i64).sum());
        }
        k.push(e.iter().map(|&x| x as i64).sum());
        k.extend(e.iter().rev().map(|&x| -(x as i64)));
        OrderKey(k.into_boxed_slice())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    /// Whether every monomial involving `block` exceeds every monomial free
    /// of it: a prefix of rows is supported inside `block` and jointly
    /// covers it.
    pub fn eliminates(&self, block: &[usize]) -> bool {
        if block.is_empty() {
            return true;
        }
        let mut covered = vec![false; self.sig.num_vars()];
        for row in &self.rows {
            let inside = row
                .iter()
                .enumerate()
                .all(|(i, &w)| w == 0 || block.contains(&i));
            if !inside {
                return false;
            }
            for (i, &w) in row.iter().enumerate() {
                if w > 0 {
                    covered[i] = true;
                }
            }
            if block.iter().all(|&b| covered[b]) {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        let sig = WeylSignature::new(&["x"], 1, false).unwrap();
        // x∂ weighted below 1
        let mut bad = vec![0; sig.num_vars()];
        bad[sig.x(0)] = -1;
        assert!(matches!(TermOrder::new(&sig, vec![bad]), Err(Error::InadmissibleOrder(_))));
        let mut neg = vec![0; sig.num_vars()];
        neg[sig.s(0)] = -1;
        assert!(TermOrder::new(&sig, vec![neg]).is_err());
        assert!(TermOrder::degrevlex(&sig).check_admissible().is_ok());
    }

    #[test]
    fn elimination_property() {
        let sig = WeylSignature::new(&["x", "y"], 2, false).unwrap();
        let xd: Vec<usize> = sig.operator_block();
        let ord = TermOrder::elimination(&sig, std::slice::from_ref(&xd)).unwrap();
        assert!(ord.eliminates(&xd));
        assert!(!ord.eliminates(&sig.s_block()));
        assert!(!TermOrder::degrevlex(&sig).eliminates(&xd));
        // x beats any power of s
        let mut x = vec![0; sig.num_vars()];
        x[sig.x(0)] = 1;
        let mut s = vec![0; sig.num_vars()];
        s[sig.s(0)] = 9;
        assert_eq!(
            ord.cmp(&Monomial::from_exponents(x), &Monomial::from_exponents(s)),
            Ordering::Greater
        );
    }

    #[test]
    fn grevlex_tiebreak() {
        let sig = WeylSignature::parameters_only(3);
        let ord = TermOrder::degrevlex(&sig);
        let m = |e: [u32; 3]| Monomial::from_exponents(e.to_vec());
        // s1*s3 < s2^2 in grevlex
        assert_eq!(ord.cmp(&m([1, 0, 1]), &m([0, 2, 0])), Ordering::Less);
        assert_eq!(ord.cmp(&m([2, 0, 0]), &m([1, 1, 0])), Ordering::Greater);
    }
}
