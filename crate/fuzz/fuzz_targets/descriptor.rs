#![no_main]

use libfuzzer_sys::fuzz_target;
use sonnet_gam::lexicon::LexiconDescriptor;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = LexiconDescriptor::parse(text);
    }
});
