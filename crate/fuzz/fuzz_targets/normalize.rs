#![no_main]

use libfuzzer_sys::fuzz_target;
use sonnet_gam::textproc::{normalize, LemmaTable, NormalizationConfig, NormalizationMode};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let mut lemmas = LemmaTable::default();
    lemmas.insert("amores", "amor");
    for mode in NormalizationMode::ALL {
        let config = NormalizationConfig::new(mode).with_lemma_table(lemmas.clone());
        let tokens = normalize(text, &config).expect("valid config");
        for (i, t) in tokens.iter().enumerate() {
            assert_eq!(t.position, i + 1);
            assert!(!t.normalized.is_empty());
        }
    }
});
