#![no_main]

use std::sync::OnceLock;

use eamod::gf::FieldCtx;
use eamod::io::parse_alpha;
use eamod::Error;
use libfuzzer_sys::fuzz_target;

fn fields() -> &'static [FieldCtx] {
    static FIELDS: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    FIELDS.get_or_init(|| [(3, 1), (3, 2), (5, 3)].iter().map(|&(p, m)| FieldCtx::new(p, m).unwrap()).collect())
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for f in fields() {
        match parse_alpha(f, text) {
            Ok(pt) => {
                assert!(pt.coords.iter().all(|c| c.0 < f.q()));
                let again: Vec<String> = pt.coords.iter().map(|&c| f.format(c)).collect();
                assert_eq!(parse_alpha(f, &again.join(",")).unwrap().coords, pt.coords);
            }
            Err(Error::ParseFailure { pos, .. }) => assert!(pos <= text.len()),
            Err(e) => panic!("unexpected error kind: {e}"),
        }
    }
});
