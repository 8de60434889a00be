use bsideal::algebra::{MultiPoly, Signature};
use bsideal::groebner::Budget;
use bsideal::io::parse::{parse_s_poly, parse_tuple};
use bsideal::oracle::{cross_validate, find_witness, oracle_bfunction, AnsatzBounds};
use bsideal::pipeline::{bfunction, Annihilator, MultiIndex};
use bsideal::Error;

fn xy() -> Signature {
    Signature::x_vars(&["x", "y"]).unwrap()
}

#[test]
fn cusp_agrees() {
    let sig = xy();
    let f = &MultiPoly::var(&sig, 0).pow(2) + &MultiPoly::var(&sig, 1).pow(3);
    let cert = oracle_bfunction(&f, &AnsatzBounds::new(3, 3, 1)).unwrap().unwrap();
    assert_eq!(cert.b, bfunction(&f, &Budget::default()).unwrap());
    assert_eq!(cert.b.to_string(), "s^3 + 3*s^2 + 107/36*s + 35/36");
    assert_eq!(cert.operator.to_string(), "-1/8*x*d_x^3 + 1/2*d_x^2*s + 1/27*d_y^3 + 3/8*d_x^2");
    // order 2 is too small for the cusp
    assert!(oracle_bfunction(&f, &AnsatzBounds::new(2, 3, 1)).unwrap().is_none());
}

type Case = (&'static [&'static str], [u32; 2], &'static [(u32, &'static str)]);

#[test]
fn tuples_cross_validate() {
    let cases: [Case; 4] = [
        (&["x", "y"], [1, 1], &[(2, "d_x*d_y")]),
        (&["x", "x"], [1, 1], &[(2, "d_x^2")]),
        (&["x", "x*y"], [1, 1], &[(3, "d_x^2*d_y")]),
        (&["x", "x*y"], [0, 1], &[(2, "d_x*d_y")]),
    ];
    for (fs, m, want) in cases {
        let input = parse_tuple(fs).unwrap();
        let m = MultiIndex::new(m.to_vec());
        let ideal = Annihilator::compute(&input, &Budget::default()).unwrap().bs_ideal(&m).unwrap();
        let rep = cross_validate(&ideal, &input, &m, &AnsatzBounds::new(3, 2, 1)).unwrap();
        let got: Vec<(u32, String)> = rep
            .entries
            .iter()
            .map(|e| {
                let (k, p) = e.witness.as_ref().expect("every generator is certified");
                (*k, p.to_string())
            })
            .collect();
        let want: Vec<(u32, String)> = want.iter().map(|(k, p)| (*k, p.to_string())).collect();
        assert_eq!(got, want, "{fs:?} {m:?}");
    }
}

#[test]
fn asserted_generator_for_repeated_coordinate_has_no_witness() {
    let input = parse_tuple(&["x", "x"]).unwrap();
    let b = parse_s_poly("s1+s2+2", 2).unwrap();
    let w = find_witness(&b, &input, &MultiIndex::ones(2), &AnsatzBounds::default()).unwrap();
    assert!(w.is_none());
}

#[test]
fn oracle_rejects_oversized_systems() {
    let input = parse_tuple(&["x^2+y^3"]).unwrap();
    let b = parse_s_poly("s+1", 1).unwrap();
    let mut bounds = AnsatzBounds::new(6, 6, 3);
    bounds.max_unknowns = 50;
    let err = find_witness(&b, &input, &MultiIndex::ones(1), &bounds).unwrap_err();
    assert!(matches!(err, Error::Resource { .. }), "{err}");
}
