#![no_main]

use libfuzzer_sys::fuzz_target;
use sonnet_gam::corpus::parse_metadata;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_metadata(text, b',');
        let _ = parse_metadata(text, b';');
    }
});
