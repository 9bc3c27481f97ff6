#![no_main]

use libfuzzer_sys::fuzz_target;
use sonnet_gam::gam::FeatureMatrix;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = FeatureMatrix::parse_csv(text) else { return };
    let again = FeatureMatrix::parse_csv(&m.to_csv()).expect("reparse");
    assert_eq!(m.to_csv(), again.to_csv());
});
