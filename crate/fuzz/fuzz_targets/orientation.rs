#![no_main]
use libfuzzer_sys::fuzz_target;
use seaweed_core::TypeAQuiver;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(q) = s.parse::<TypeAQuiver>() {
            let back: TypeAQuiver = q.orientation_string().parse().unwrap();
            assert_eq!(back, q);
            let _ = q.relations();
        }
    }
});
