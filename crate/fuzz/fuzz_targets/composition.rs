#![no_main]
use libfuzzer_sys::fuzz_target;
use seaweed_core::seaweed::Composition;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(c) = s.parse::<Composition>() {
            assert_eq!(c.to_string().parse::<Composition>().unwrap(), c);
        }
    }
});
