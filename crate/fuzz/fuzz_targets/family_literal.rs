#![no_main]

use libfuzzer_sys::fuzz_target;
use transys_core::FamilySpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = FamilySpec::parse(text) {
        let again = FamilySpec::parse(&spec.to_string()).expect("display re-parses");
        assert_eq!(again, spec);
    }
});
