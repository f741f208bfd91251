//! Replays the checked-in fuzz corpus through the same entry points and
//! round-trip assertions as the fuzz targets.

use std::path::PathBuf;
use std::sync::Arc;

use transys_core::groups::GroupLiteral;
use transys_core::pair::{parse_pair, PairLiteral};
use transys_core::{Exponent, FamilySpec, GeneralizedFactorization, TransferSystem};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| std::fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus for {target}");
    out
}

#[test]
fn group_literal_corpus() {
    let mut parsed = 0;
    for text in seeds("group_literal") {
        if let Ok(lit) = GroupLiteral::parse(&text) {
            assert_eq!(GroupLiteral::parse(&lit.to_string()).unwrap(), lit);
            let _ = lit.to_group();
            parsed += 1;
        }
    }
    assert!(parsed > 3);
}

#[test]
fn family_literal_corpus() {
    let mut parsed = 0;
    for text in seeds("family_literal") {
        if let Ok(spec) = FamilySpec::parse(&text) {
            assert_eq!(FamilySpec::parse(&spec.to_string()).unwrap(), spec);
            parsed += 1;
        }
    }
    assert!(parsed > 3);
}

#[test]
fn pair_corpus() {
    let families: Vec<_> = ["ab:maxorder=16", "cyc:maxorder=24", "sigma3"]
        .iter()
        .map(|s| FamilySpec::parse(s).unwrap().build().unwrap())
        .collect();
    let mut resolved = 0;
    for text in seeds("pair") {
        let _ = PairLiteral::parse(&text).map(|p| p.resolve());
        for f in &families {
            if let Ok((h, k)) = parse_pair(&text, f) {
                assert!(k < f.subgroups(h).len());
                resolved += 1;
            }
        }
    }
    assert!(resolved > 3);
}

#[test]
fn label_literal_corpus() {
    for text in seeds("label_literal") {
        for default in [Exponent::ZERO, Exponent::Top] {
            if let Ok(n) = GeneralizedFactorization::parse(&text, default) {
                assert_eq!(GeneralizedFactorization::parse(&n.to_string(), Exponent::ZERO).unwrap(), n);
            }
        }
    }
}

#[test]
fn transfer_json_corpus() {
    let families: Vec<_> = ["cycp:p=2,maxexp=3", "ab:maxorder=8", "sigma3"]
        .iter()
        .map(|s| Arc::new(FamilySpec::parse(s).unwrap().build().unwrap()))
        .collect();
    let mut accepted = 0;
    for text in seeds("transfer_json") {
        for f in &families {
            if let Ok(t) = TransferSystem::from_json_in(&text, f) {
                assert_eq!(TransferSystem::from_json_in(&t.to_json(), f).unwrap(), t);
                accepted += 1;
            }
        }
    }
    assert!(accepted >= 3);
}
