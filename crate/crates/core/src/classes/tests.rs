use super::*;
use crate::parse::parse_ideal;

fn ideal(src: &str, vars: &str) -> Ideal {
    let v: Vec<String> = vars.split(',').map(|s| s.trim().to_string()).collect();
    parse_ideal(src, Some(&v), FieldSpec::Rationals).unwrap()
}

fn class(n: usize, c: &[i64]) -> ChowClass {
    ChowClass::from_ints(n, c)
}

const P2: &str = "x,y,z";
const P3: &str = "x,y,z,w";

#[test]
fn identity_map_degrees() {
    let d = projective_degrees(&ideal("x, y, z", P2)).unwrap();
    assert_eq!(d.g, vec![1, 1, 1]);
    assert_eq!(d.map_degree, 1);
}

#[test]
fn three_coordinate_products() {
    let i = ideal("x*y, x*z, y*z", P3);
    let d = projective_degrees(&i).unwrap();
    assert_eq!(d.g, vec![1, 2, 1, 0]);
    assert_eq!(segre(&i).unwrap(), class(3, &[0, 0, 3, -10]));
    assert_eq!(fulton(&i).unwrap(), class(3, &[0, 0, 3, 2]));
}

#[test]
fn hyperplane_classes() {
    let i = ideal("z", P3);
    assert_eq!(segre(&i).unwrap(), class(3, &[0, 1, -1, 1]));
    assert_eq!(fulton(&i).unwrap(), class(3, &[0, 1, 3, 3]));
    assert_eq!(csm(&i).unwrap(), class(3, &[0, 1, 3, 3]));
}

#[test]
fn segre_of_mixed_degrees() {
    let i = ideal("z, x*y*(x+y)", P3);
    assert_eq!(segre(&i).unwrap(), class(3, &[0, 0, 3, -12]));
    assert_eq!(fulton(&i).unwrap(), class(3, &[0, 0, 3, 0]));
}

#[test]
fn plane_cubics() {
    let smooth = ideal("x^3+y^3+z^3", P2);
    let nodal = ideal("x*y*(x+y)", P2);
    assert_eq!(fulton(&smooth).unwrap(), class(2, &[0, 3, 0]));
    assert_eq!(fulton(&nodal).unwrap(), class(2, &[0, 3, 0]));
    assert_eq!(csm(&smooth).unwrap(), class(2, &[0, 3, 0]));
    assert_eq!(csm(&nodal).unwrap(), class(2, &[0, 3, 4]));
    assert_eq!(euler(&nodal).unwrap(), BigInt::from(4));
}

#[test]
fn pair_of_lines() {
    let i = ideal("x*y", P2);
    assert_eq!(fulton(&i).unwrap(), class(2, &[0, 2, 2]));
    assert_eq!(csm(&i).unwrap(), class(2, &[0, 2, 3]));
    assert_eq!(euler(&i).unwrap(), BigInt::from(3));
}

#[test]
fn affine_euler_characteristics() {
    let p = Pipeline::default();
    let lines = ideal("x*y*(x+y)", "x,y");
    assert_eq!(p.euler_affine(&lines, AffineMethod::Limit).unwrap(), BigInt::from(1));
    assert_eq!(p.euler_affine(&lines, AffineMethod::Union).unwrap(), BigInt::from(1));
    let cubic = ideal("x^3+y^3-1", "x,y");
    assert_eq!(p.euler_affine(&cubic, AffineMethod::Limit).unwrap(), BigInt::from(-3));
    assert_eq!(p.euler_affine(&cubic, AffineMethod::Union).unwrap(), BigInt::from(-3));
    let point = ideal("x, y", "x,y");
    assert_eq!(p.euler_affine(&point, AffineMethod::Limit).unwrap(), BigInt::from(1));
    assert_eq!(p.euler_affine(&ideal("x, x - 1", "x,y"), AffineMethod::Limit).unwrap(), BigInt::from(0));
}

#[test]
fn degenerate_inputs() {
    let v: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    let zero = parse_ideal("0", Some(&v), FieldSpec::Rationals).unwrap();
    assert_eq!(csm(&zero).unwrap(), class(3, &[1, 4, 6, 4]));
    assert_eq!(euler(&zero).unwrap(), BigInt::from(4));
    assert_eq!(segre(&zero), Err(Error::ZeroIdeal));
    let unit = ideal("1, x", P3);
    assert!(segre(&unit).unwrap().is_zero());
    assert!(fulton(&unit).unwrap().is_zero());
    assert!(csm(&unit).unwrap().is_zero());
    let gf2 = FieldSpec::prime_field(2).unwrap();
    let sq = parse_ideal("x^2", Some(&v[..3]), gf2).unwrap();
    assert_eq!(csm(&sq), Err(Error::VanishingJacobian));
}

#[test]
fn excess_counts() {
    let cases = [((13, -70), 0), ((11, -58), 18), ((9, -34), 24), ((7, -22), 42)];
    for ((a, b), want) in cases {
        assert_eq!(excess_count(&class(3, &[0, 0, a, b]), 5).unwrap(), BigInt::from(want));
    }
    assert_eq!(excess_count(&ChowClass::zero(3), 5).unwrap(), BigInt::from(125));
}

#[test]
fn hand_computed_segre_from_degrees() {
    let d = ProjectiveDegrees { g: vec![1, 2, 1, 0], map_degree: 2 };
    assert_eq!(segre_from_degrees(&d), class(3, &[0, 0, 3, -10]));
    // a smooth conic's gradient map is a linear isomorphism
    let d = ProjectiveDegrees { g: vec![1, 1, 1], map_degree: 1 };
    assert_eq!(csm_from_gradient_degrees(&d), class(2, &[0, 2, 2]));
}

#[test]
fn milnor_report_identity() {
    let r = milnor(&ideal("x*y, x*z", P3)).unwrap();
    assert_eq!(r.milnor.clone().unwrap(), class(3, &[0, 0, 0, 2]));
    assert_eq!(r.milnor.unwrap(), r.csm.unwrap().sub(&r.fulton.unwrap()).unwrap());
}

#[test]
fn seeds_do_not_change_results() {
    let i = ideal("x*y, x*z, y*z", P3);
    for seed in [1, 2, 3] {
        let p = Pipeline::new(ClassOptions { seed, certify: true, simplify: false });
        assert_eq!(p.segre(&i).unwrap(), class(3, &[0, 0, 3, -10]));
        assert!(p.bases_computed() > 0);
    }
}

#[test]
fn prime_field_segre_matches_rationals() {
    let v: Vec<String> = P3.split(',').map(String::from).collect();
    let gf = FieldSpec::prime_field(32003).unwrap();
    let i = parse_ideal("z, x*y*(x+y)", Some(&v), gf).unwrap();
    assert_eq!(segre(&i).unwrap(), class(3, &[0, 0, 3, -12]));
}

#[test]
fn simplification_keeps_classes() {
    let i = ideal("x*y, x*z, y*z, x*y + y*z", P3);
    let p = Pipeline::new(ClassOptions { simplify: true, ..ClassOptions::default() });
    assert_eq!(p.segre(&i).unwrap(), class(3, &[0, 0, 3, -10]));
}
