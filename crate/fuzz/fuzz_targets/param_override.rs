#![no_main]

use libfuzzer_sys::fuzz_target;
use pass_core::harness::{parse_assignment, ParamOverrides};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut overrides = ParamOverrides::default();
    for line in text.lines() {
        if let Ok((key, value)) = parse_assignment(line) {
            let _ = overrides.set(&key, &value);
        }
    }
    if let Ok(p) = overrides.resolve() {
        assert!(p.r > 0.0 && p.l > 0.0 && p.l <= p.r);
    }
});
