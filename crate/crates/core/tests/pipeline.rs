use bsideal::algebra::{MultiPoly, Signature};
use bsideal::groebner::Budget;
use bsideal::pipeline::{bfunction, Annihilator, InputTuple, MultiIndex};

fn xy() -> Signature {
    Signature::x_vars(&["x", "y"]).unwrap()
}

fn x() -> MultiPoly {
    MultiPoly::var(&xy(), 0)
}

fn y() -> MultiPoly {
    MultiPoly::var(&xy(), 1)
}

fn ideal(f: &[MultiPoly], m: &[u32]) -> Vec<String> {
    let input = InputTuple::new(&["x", "y"], f).unwrap();
    let ann = Annihilator::compute(&input, &Budget::default()).unwrap();
    assert!(ann.verify().unwrap());
    let b = ann.bs_ideal(&MultiIndex::new(m.to_vec())).unwrap();
    b.generators.iter().map(ToString::to_string).collect()
}

#[test]
fn repeated_coordinate() {
    // f^m = x^2, so b(s1 + s2) must absorb a drop of two: (S + 1)(S + 2)
    assert_eq!(
        ideal(&[x(), x()], &[1, 1]),
        ["s1^2 + 2*s1*s2 + s2^2 + 3*s1 + 3*s2 + 2"]
    );
    assert_eq!(ideal(&[x(), x()], &[1, 0]), ["s1 + s2 + 1"]);
}

#[test]
fn normal_crossing_change_of_coordinates() {
    assert_eq!(ideal(&[x(), &x() + &y()], &[1, 1]), ["s1*s2 + s1 + s2 + 1"]);
}

#[test]
fn x_and_xy() {
    let f = [x(), &x() * &y()];
    // (s1 + s2 + 1)(s1 + s2 + 2)(s2 + 1)
    assert_eq!(
        ideal(&f, &[1, 1]),
        ["s1^2*s2 + 2*s1*s2^2 + s2^3 + s1^2 + 5*s1*s2 + 4*s2^2 + 3*s1 + 5*s2 + 2"]
    );
    assert_eq!(ideal(&f, &[1, 0]), ["s1 + s2 + 1"]);
    // (s1 + s2 + 1)(s2 + 1)
    assert_eq!(ideal(&f, &[0, 1]), ["s1*s2 + s2^2 + s1 + 2*s2 + 1"]);
}

#[test]
fn two_variable_bfunctions() {
    let b = bfunction(&(&x().pow(2) + &y().pow(2)), &Budget::default()).unwrap();
    assert_eq!(b.to_string(), "s^2 + 2*s + 1");
    let b = bfunction(&(&x() * &y()), &Budget::default()).unwrap();
    assert_eq!(b.to_string(), "s^2 + 2*s + 1");
}
