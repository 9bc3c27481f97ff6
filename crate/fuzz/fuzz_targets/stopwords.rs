#![no_main]

use libfuzzer_sys::fuzz_target;
use sonnet_gam::textproc::StopwordList;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let list = StopwordList::parse(text);
        assert!(list.len() <= text.lines().count());
    }
});
