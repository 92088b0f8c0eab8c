#![no_main]
use libfuzzer_sys::fuzz_target;
use seaweed_core::io::{report_from_json, report_to_json};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(r) = report_from_json(s) {
            let text = report_to_json(&r).unwrap();
            assert_eq!(report_from_json(&text).unwrap(), r);
        }
    }
});
