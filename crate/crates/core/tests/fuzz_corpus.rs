//! Replays the checked-in fuzz corpus through every parser.

use std::path::PathBuf;

use seaweed_core::io::{
    format_matrix_text, parse_delta_dim, parse_matrix_text, report_from_json, report_to_json, representation_from_json,
    representation_to_json,
};
use seaweed_core::seaweed::Composition;
use seaweed_core::TypeAQuiver;

fn corpus(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn orientation_seeds() {
    let mut ok = 0;
    for (name, s) in corpus("orientation") {
        if let Ok(q) = s.parse::<TypeAQuiver>() {
            assert_eq!(q.orientation_string().parse::<TypeAQuiver>().unwrap(), q, "{name}");
            ok += 1;
        }
    }
    assert!(ok >= 3);
}

#[test]
fn composition_seeds() {
    for (name, s) in corpus("composition") {
        if let Ok(c) = s.parse::<Composition>() {
            assert_eq!(c.to_string().parse::<Composition>().unwrap(), c, "{name}");
        }
    }
    assert!("3,0".parse::<Composition>().is_err());
}

#[test]
fn delta_dim_seeds() {
    for (name, s) in corpus("delta_dim") {
        let r = parse_delta_dim(&s);
        assert_eq!(r.is_ok(), name != "negative", "{name}");
    }
}

#[test]
fn matrix_text_seeds() {
    for (name, s) in corpus("matrix_text") {
        match parse_matrix_text(&s) {
            Ok(x) => assert_eq!(parse_matrix_text(&format_matrix_text(&x)).unwrap(), x, "{name}"),
            Err(_) => assert!(name == "ragged" || name == "overflow", "{name}"),
        }
    }
}

#[test]
fn representation_json_seeds() {
    for (name, s) in corpus("representation_json") {
        match representation_from_json(&s) {
            Ok(m) => {
                let text = representation_to_json(&m).unwrap();
                assert_eq!(representation_from_json(&text).unwrap(), m, "{name}");
            }
            Err(_) => assert!(name == "fraction_bad_shape" || name == "zero_denominator", "{name}"),
        }
    }
}

#[test]
fn seaweed_report_json_seeds() {
    for (name, s) in corpus("seaweed_report_json") {
        match report_from_json(&s) {
            Ok(r) => {
                assert_eq!(report_to_json(&r).unwrap(), s, "{name} is not canonical");
            }
            Err(_) => assert_eq!(name, "wrong_shape"),
        }
    }
}
