#![no_main]
use libfuzzer_sys::fuzz_target;
use seaweed_core::io::{representation_from_json, representation_to_json};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(m) = representation_from_json(s) {
            let text = representation_to_json(&m).unwrap();
            assert_eq!(representation_from_json(&text).unwrap(), m);
        }
    }
});
