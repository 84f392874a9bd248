//! The JSON contract the static page relies on.

use congruence_lab_demo::{catalog, check_range, legendre_at, represent_prime, MAX_DEMO_PRIME};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).expect("exports return JSON")
}

#[test]
fn catalog_lists_every_check() {
    let v = parse(catalog());
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 54);
    assert!(entries.iter().all(|e| e["id"].is_string() && e["kind"].is_string() && e["summary"].is_string()));
}

#[test]
fn check_rows_have_page_fields() {
    let v = parse(check_range("cor-3.3", 5, 50));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 13);
    for r in rows {
        assert!(r["p"].is_string() && r["status"].is_string() && r["clause"].is_string() && r["witness"].is_object());
    }
    assert_eq!(rows[1]["witness"]["L"], "1");
    assert!(parse(check_range("cor-3.3", 5, MAX_DEMO_PRIME + 1))["error"].is_string());
}

#[test]
fn legendre_quadratic_point() {
    // p = 7: 3 is a non-residue, so t = √3 lives in the extension.
    let v = parse(legendre_at(7, 1, 1, 3));
    assert_eq!(v["degree"], 2);
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 2);
    // P_2(t) = (3t² − 1)/2 with t² = 3 gives 4, the same at both roots.
    assert_eq!(values[0]["value"], values[1]["value"]);
    assert_eq!(values[0]["value"], "4");
    assert!(parse(legendre_at(7, 1, 7, 1))["error"].is_string());
}

#[test]
fn representations() {
    let v = parse(represent_prime(1, 11, "4p", 31));
    assert_eq!((v["x"].as_i64(), v["y"].as_i64()), (Some(5), Some(3)));
    assert!(parse(represent_prime(0, 11, "p", 31))["error"].is_string());
}
