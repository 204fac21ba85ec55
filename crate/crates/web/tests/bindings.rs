use fqlab_web::{curve_json, roots_json, spectrum_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn curve_has_one_closed_branch() {
    let v = parse(&curve_json(0.5, 128).unwrap());
    let branches = v["branches"].as_array().unwrap();
    assert_eq!(branches.len(), 1);
    assert_eq!(branches[0].as_array().unwrap().len(), 128);
    assert_eq!(v["wraps"], serde_json::json!([1]));
}

#[test]
fn roots_agree_with_contour_count() {
    let v = parse(&roots_json(0.3, 1.0, 2f64.sqrt(), 0.0, 50.0).unwrap());
    let n = v["roots"].as_array().unwrap().len() as i64;
    assert_eq!(v["contour_count"].as_i64(), Some(n));
    assert!((v["density"].as_f64().unwrap() - (1.0 + 2f64.sqrt())).abs() < 0.1);
}

#[test]
fn spectrum_mass_and_size() {
    let v = parse(&spectrum_json(0.5, 1.0, 2f64.sqrt(), 2).unwrap());
    assert!((v["mass"].as_f64().unwrap() - (1.0 + 2f64.sqrt())).abs() < 1e-8);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 25);
}

#[test]
fn inputs_are_validated() {
    assert!(curve_json(1.5, 128).is_err());
    assert!(curve_json(0.5, 100).is_err());
    assert!(roots_json(0.5, 1.0, 1.4, 5.0, 1.0).is_err());
    assert!(roots_json(0.5, 1.0, -1.0, 0.0, 1.0).is_err());
    assert!(spectrum_json(0.5, 1.0, 1.4, 20).is_err());
}
