#![no_main]

use libfuzzer_sys::fuzz_target;
use sonnet_gam::lexicon::{LexiconDescriptor, SourceLexicon};

// descriptor TOML, a NUL byte, then the native table
fuzz_target!(|data: &[u8]| {
    let Some(split) = data.iter().position(|b| *b == 0) else { return };
    let (Ok(desc), Ok(table)) = (std::str::from_utf8(&data[..split]), std::str::from_utf8(&data[split + 1..])) else {
        return;
    };
    if let Ok(descriptor) = LexiconDescriptor::parse(desc) {
        let _ = SourceLexicon::parse_native(table, &descriptor);
    }
});
