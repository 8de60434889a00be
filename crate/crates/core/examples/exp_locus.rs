//! Exp of the zero locus as a union of torsion-translated subtori.
//!
//! cargo run --example exp_locus -- x "x+y"

use bsideal::groebner::Budget;
use bsideal::io::parse::parse_tuple;
use bsideal::locus::{exp_locus, locus_components};
use bsideal::pipeline::{bs_ideal, MultiIndex};

fn main() -> bsideal::Result<()> {
    let srcs: Vec<String> = std::env::args().skip(1).collect();
    let srcs = if srcs.is_empty() { vec!["x".into(), "x+y".into()] } else { srcs };
    let input = parse_tuple(&srcs)?;
    let ideal = bs_ideal(&input, &MultiIndex::ones(input.r()), &Budget::default())?;
    for h in locus_components(&ideal)?.components {
        println!("component {h} = 0");
    }
    println!("Exp Z(B_F):");
    for t in exp_locus(&ideal)?.components() {
        println!("  {t}");
    }
    Ok(())
}
