#![no_main]

use libfuzzer_sys::fuzz_target;
use transys_core::groups::GroupLiteral;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(lit) = GroupLiteral::parse(text) {
        let again = GroupLiteral::parse(&lit.to_string()).expect("display re-parses");
        assert_eq!(again, lit);
        let _ = lit.to_group();
    }
});
