#![no_main]

use libfuzzer_sys::fuzz_target;
use transys_core::{Exponent, GeneralizedFactorization};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for default in [Exponent::ZERO, Exponent::Top] {
        if let Ok(n) = GeneralizedFactorization::parse(text, default) {
            let again = GeneralizedFactorization::parse(&n.to_string(), Exponent::ZERO).expect("display re-parses");
            assert_eq!(again, n);
        }
    }
});
