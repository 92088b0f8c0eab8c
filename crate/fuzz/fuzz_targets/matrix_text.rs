#![no_main]
use libfuzzer_sys::fuzz_target;
use seaweed_core::io::{format_matrix_text, parse_matrix_text};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = parse_matrix_text(s) {
            assert_eq!(parse_matrix_text(&format_matrix_text(&x)).unwrap(), x);
        }
    }
});
