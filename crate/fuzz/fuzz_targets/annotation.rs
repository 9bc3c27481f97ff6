#![no_main]

use libfuzzer_sys::fuzz_target;
use sonnet_gam::corpus::AnnotationSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(set) = AnnotationSet::parse(text, 1, b',') else { return };
    // whatever parses must survive a write/read cycle unchanged
    let again = AnnotationSet::parse(&set.to_csv(b','), 1, b',').expect("reparse");
    assert_eq!(set.rows(), again.rows());
});
