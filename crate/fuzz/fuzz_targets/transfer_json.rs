#![no_main]

use std::sync::{Arc, OnceLock};

use libfuzzer_sys::fuzz_target;
use transys_core::{Family, FamilySpec, TransferSystem};

fn families() -> &'static [Arc<Family>] {
    static F: OnceLock<Vec<Arc<Family>>> = OnceLock::new();
    F.get_or_init(|| {
        ["cycp:p=2,maxexp=3", "ab:maxorder=8", "sigma3"]
            .iter()
            .map(|s| Arc::new(FamilySpec::parse(s).unwrap().build().unwrap()))
            .collect()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for f in families() {
        if let Ok(t) = TransferSystem::from_json_in(text, f) {
            let again = TransferSystem::from_json_in(&t.to_json(), f).expect("output re-parses");
            assert_eq!(again, t);
        }
    }
});
