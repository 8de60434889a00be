//! B_F^m for a tuple and every multi-index in {0,1}^r, with the structure check.
//!
//! cargo run --example tuple_ideal -- x "x*y"

use bsideal::groebner::Budget;
use bsideal::io::format::factored;
use bsideal::io::parse::parse_tuple;
use bsideal::locus::check_structure;
use bsideal::pipeline::{Annihilator, MultiIndex};

fn main() -> bsideal::Result<()> {
    let srcs: Vec<String> = std::env::args().skip(1).collect();
    let srcs = if srcs.is_empty() { vec!["x".into(), "x*y".into()] } else { srcs };
    let input = parse_tuple(&srcs)?;
    let ann = Annihilator::compute(&input, &Budget::default())?;
    let r = input.r();
    println!("F = ({})", input.describe().join(", "));
    for mask in 1u32..(1 << r) {
        let m = MultiIndex::new((0..r).map(|i| (mask >> i) & 1).collect());
        if m.validate(&input).is_err() {
            continue;
        }
        let ideal = ann.bs_ideal(&m)?;
        let gens: Vec<String> = ideal.generators.iter().map(|g| factored(g).unwrap()).collect();
        let report = check_structure(&ideal, &m, 10)?;
        println!("m = {:?}: <{}>  structure ok: {}", m.as_slice(), gens.join(", "), report.passes());
    }
    Ok(())
}
