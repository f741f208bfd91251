#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use transys_core::pair::{parse_pair, PairLiteral};
use transys_core::{Family, FamilySpec};

fn families() -> &'static [Family] {
    static F: OnceLock<Vec<Family>> = OnceLock::new();
    F.get_or_init(|| {
        ["ab:maxorder=16", "cyc:maxorder=24", "sigma3"]
            .iter()
            .map(|s| FamilySpec::parse(s).unwrap().build().unwrap())
            .collect()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = PairLiteral::parse(text).map(|p| p.resolve());
    for f in families() {
        if let Ok((h, k)) = parse_pair(text, f) {
            assert!(k < f.subgroups(h).len());
        }
    }
});
