use dq_web::{patch_check, star_product, surface_summary};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).expect("entry points return JSON")
}

#[test]
fn star_of_coordinates() {
    let v = parse(&star_product(1, 3, "z1", "z2"));
    assert_eq!(v["ok"]["product"], "z1*z2 - 1/2*i*h");
}

#[test]
fn star_reports_parse_errors() {
    let v = parse(&star_product(1, 3, "z1 +", "z2"));
    assert!(v["error"].is_string());
    assert!(parse(&star_product(0, 3, "1", "1"))["error"].is_string());
}

#[test]
fn octagon_summary() {
    let v = parse(&surface_summary("octagon"));
    assert_eq!(v["ok"]["genus"], 2);
    assert_eq!(v["ok"]["zero_orders"], serde_json::json!([2]));
}

#[test]
fn summary_accepts_polygon_json() {
    let square = r#"{"edges":[["1","0"],["0","1"],["-1","0"],["0","-1"]],"pairing":[[0,2],[1,3]]}"#;
    let v = parse(&surface_summary(square));
    assert_eq!(v["ok"]["genus"], 1);
    assert!(parse(&surface_summary("klein-bottle"))["error"].is_string());
}

#[test]
fn patch_check_passes_on_square() {
    let v = parse(&patch_check("square", 1, 5, 4));
    assert_eq!(v["ok"]["passed"], true);
    assert!(parse(&patch_check("square", 1, 500, 4))["error"].is_string());
}
