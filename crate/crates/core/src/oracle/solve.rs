//! Exact sparse linear solving over ℚ.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::rational::height;
use crate::algebra::Rational;

type Row = BTreeMap<usize, Rational>;

/// Rows are fed one at a time and kept in echelon form; free unknowns are
/// set to zero in the returned solution.
pub(crate) struct Echelon {
    ncols: usize,
    pivots: Vec<(usize, Row, Rational)>,
    consistent: bool,
}

impl Echelon {
    pub(crate) fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: Vec::new(),
            consistent: true,
        }
    }

    #[cfg(test)]
    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub(crate) fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// Adds `Σ row[c]·u_c = rhs`.
    pub(crate) fn push(&mut self, mut row: Row, mut rhs: Rational) {
        if !self.consistent {
            return;
        }
        // pivot rows only mention later pivot columns, so one ordered pass suffices
        for k in 0..self.pivots.len() {
            let col = self.pivots[k].0;
            let Some(c) = row.remove(&col) else { continue };
            let (_, prow, prhs) = &self.pivots[k];
            for (j, v) in prow {
                let e = row.entry(*j).or_insert_with(Rational::zero);
                *e -= &c * v;
                if e.is_zero() {
                    row.remove(j);
                }
            }
            rhs -= &c * prhs;
        }
        if row.is_empty() {
            if !rhs.is_zero() {
                self.consistent = false;
            }
            return;
        }
        // smallest entry keeps fraction growth down; lowest column breaks ties
        let (&col, _) = row
            .iter()
            .min_by_key(|(j, v)| (height(v), **j))
            .expect("nonempty");
        let inv = row.remove(&col).unwrap().recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        rhs *= &inv;
        self.pivots.push((col, row, rhs));
    }

    /// A solution with free unknowns zero, when consistent.
    pub(crate) fn solution(&self) -> Option<Vec<Rational>> {
        if !self.consistent {
            return None;
        }
        let mut x = vec![Rational::zero(); self.ncols];
        for (col, row, rhs) in self.pivots.iter().rev() {
            let mut v = rhs.clone();
            for (j, c) in row {
                if !x[*j].is_zero() {
                    v -= c * &x[*j];
                }
            }
            x[*col] = v;
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn row(entries: &[(usize, i64)]) -> Row {
        entries.iter().map(|&(j, v)| (j, int(v))).collect()
    }

    #[test]
    fn solves_and_detects_inconsistency() {
        // x + y = 3, x − y = 1
        let mut e = Echelon::new(2);
        e.push(row(&[(0, 1), (1, 1)]), int(3));
        e.push(row(&[(0, 1), (1, -1)]), int(1));
        assert_eq!(e.solution().unwrap(), vec![int(2), int(1)]);
        e.push(row(&[(0, 2)]), int(5));
        assert!(e.solution().is_none());
    }

    #[test]
    fn free_unknowns_are_zero() {
        let mut e = Echelon::new(3);
        e.push(row(&[(0, 2), (2, 4)]), int(2));
        e.push(row(&[(0, 1), (2, 2)]), int(1));
        assert_eq!(e.rank(), 1);
        let x = e.solution().unwrap();
        assert_eq!(&x[0] * int(2) + &x[2] * int(4), int(2));
    }
}
