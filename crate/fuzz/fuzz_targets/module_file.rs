#![no_main]

use eamod::io::{module_from_json, module_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = module_from_json(text) {
        // anything accepted must validate and survive a round trip
        assert!(m.validate().is_ok());
        assert_eq!(module_from_json(&module_to_json(&m)).unwrap(), m);
    }
});
