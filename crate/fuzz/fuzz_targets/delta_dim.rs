#![no_main]
use libfuzzer_sys::fuzz_target;
use seaweed_core::io::parse_delta_dim;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_delta_dim(s);
    }
});
