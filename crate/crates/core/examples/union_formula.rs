//! Exp Z(B_F^(1,1)) against the union over the unit multi-indices.

use bsideal::groebner::Budget;
use bsideal::io::parse::parse_tuple;
use bsideal::locus::{exp_locus, locus_union};
use bsideal::pipeline::{Annihilator, MultiIndex};

fn main() -> bsideal::Result<()> {
    for pair in [["x", "y"], ["x", "x+y"], ["x", "x*y"]] {
        let input = parse_tuple(&pair)?;
        let ann = Annihilator::compute(&input, &Budget::default())?;
        let locus = |m: Vec<u32>| exp_locus(&ann.bs_ideal(&MultiIndex::new(m))?);
        let full = locus(vec![1, 1])?;
        let union = locus_union(&locus(vec![1, 0])?, &locus(vec![0, 1])?)?;
        println!("({}, {}): {full}", pair[0], pair[1]);
        println!("    union of units: {union}  equal: {}", full == union);
    }
    Ok(())
}
