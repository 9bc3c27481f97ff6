#![no_main]

use libfuzzer_sys::fuzz_target;
use sonnet_gam::textproc::LemmaTable;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = LemmaTable::parse(text, '\t');
        let _ = LemmaTable::parse(text, ',');
    }
});
