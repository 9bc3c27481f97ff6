#![no_main]

use std::path::Path;

use libfuzzer_sys::fuzz_target;
use sonnet_gam_cli::config::RunConfig;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = RunConfig::parse(text, Path::new("/nonexistent"));
    }
});
