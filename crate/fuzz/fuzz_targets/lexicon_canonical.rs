#![no_main]

use libfuzzer_sys::fuzz_target;
use sonnet_gam::lexicon::SourceLexicon;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(lex) = SourceLexicon::parse_canonical(text, b',') {
        for entry in lex.entries.values() {
            for (_, norm) in entry.dimensions() {
                assert!(norm.mean.is_finite());
            }
        }
    }
});
