//! Candidate poles of the motivic zeta function from resolution data, and
//! whether they lie in the zero locus of the Bernstein-Sato ideal.
//!
//! cargo run --example zeta_polar -- examples/data/cusp_resolution.json "x^2+y^3"

use bsideal::groebner::Budget;
use bsideal::io::parse::parse_tuple;
use bsideal::pipeline::{bs_ideal, MultiIndex};
use bsideal::zeta::{conjecture_check, polar_candidates, ResolutionData};

fn main() -> bsideal::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/cusp_resolution.json").into());
    let fs: Vec<String> = args.collect();
    let fs = if fs.is_empty() { vec!["x^2+y^3".to_string()] } else { fs };

    let data = ResolutionData::from_json(&std::fs::read_to_string(path)?)?;
    println!("{}:", data.label);
    for h in polar_candidates(&data)? {
        println!("  candidate {h} = 0");
    }
    let input = parse_tuple(&fs)?;
    let ideal = bs_ideal(&input, &MultiIndex::ones(input.r()), &Budget::default())?;
    let report = conjecture_check(&data, &ideal)?;
    println!("inside Z(B_F): {}", report.contained.len());
    println!("outside:       {}", report.candidate_only.len());
    Ok(())
}
