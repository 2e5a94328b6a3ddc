#![no_main]

use libfuzzer_sys::fuzz_target;
use pass_core::analysis::Metric;
use pass_core::harness::SweptVar;
use pass_core::Scenario;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = text.parse::<Scenario>() {
        assert_eq!(s.to_string().parse::<Scenario>().ok(), Some(s));
    }
    let _ = text.parse::<Metric>();
    if let Ok(v) = text.parse::<SweptVar>() {
        assert_eq!(v.as_str().parse::<SweptVar>().ok(), Some(v));
    }
});
