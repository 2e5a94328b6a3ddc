#![no_main]

use libfuzzer_sys::fuzz_target;
use pass_core::harness::SweepConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cfg) = SweepConfig::from_toml_str(text) else {
        return;
    };
    for series in cfg.effective_series() {
        for &scenario in &cfg.scenarios {
            let o = cfg.overrides_for(&series, scenario);
            let p = o.with_swept(cfg.sweep.variable, cfg.sweep.start).resolve();
            assert!(p.is_ok(), "accepted config has an invalid start point");
        }
    }
});
