#![no_main]

use libfuzzer_sys::fuzz_target;
use pass_core::harness::ValidateFile;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(file) = ValidateFile::from_toml_str(text) {
            assert!(file.quadrature_nodes >= 2);
        }
    }
});
