use detpoly_web::{almost_surjective, check_determined, find_decomposition};
use serde_json::Value;

fn json(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn determined_export() {
    let v = json(check_determined("t1, t2", "t1; t1*t2", "t1*t2^2", 0));
    assert_eq!(v["determined"], true);
    assert_eq!(v["certificate"], "RationalOnly");
    assert_eq!(v["verified"], true);
    let v = json(check_determined("t1,t2", "t1; t1*t2", "t2", 0));
    assert_eq!(v["determined"], false);
    let v = json(check_determined("t1", "t1^3", "t1", 3));
    assert_eq!(v["certificate"], "RadChi");
}

#[test]
fn decomposition_export() {
    let v = json(find_decomposition("t1,t2", "t1 + t2; t1*t2", "t1^2 + t2^2", 0));
    assert_eq!(v["p"], "x1^2 - 2*x2");
    let v = json(find_decomposition("t1", "t1^2", "t1", 2));
    assert_eq!((v["p"].as_str(), v["nu"].as_u64()), (Some("x1"), Some(1)));
    let v = json(find_decomposition("t1,t2", "t1; t1*t2", "t2", 0));
    assert_eq!(v["found"], false);
}

#[test]
fn surjectivity_export() {
    assert_eq!(json(almost_surjective("t1,t2", "t1 + t2; t1*t2", 0))["verdict"], "Yes");
    let v = json(almost_surjective("t1,t2", "t1; t1*t2", 0));
    assert_eq!(v["verdict"], "No");
    assert_eq!(v["verified"], true);
}

#[test]
fn errors_are_reported_as_json() {
    let v = json(check_determined("t1", "t1^", "t1", 0));
    assert!(v["error"].as_str().unwrap().contains("column"));
    let v = json(almost_surjective("t1", "t1", 4));
    assert!(v["error"].is_string());
}
