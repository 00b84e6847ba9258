#![no_main]

use eamod::io::{field_from_json, field_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = field_from_json(text) {
        let g = field_from_json(&field_to_json(&f)).unwrap();
        assert_eq!(f.spec(), g.spec());
        let w = f.gen();
        assert_eq!(f.pow(w, f.q() as u64), w);
    }
});
