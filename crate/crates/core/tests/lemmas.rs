use std::sync::Arc;

use transys_core::classify::{
    ablie_contains, enumerate_all, g_transfer_defect, AbLieGroup, Exponent, GeneralizedFactorization, LemmaChecks,
};
use transys_core::families::{ab_p_truncation, ab_truncation, cyc_p_truncation, cyc_truncation, sigma3_family};
use transys_core::groups::{make_fin_ab, subgroups, Group, Limits};
use transys_core::Family;

#[test]
fn structural_lemmas_on_enumerated_systems() {
    for f in [
        cyc_p_truncation(2, 3).unwrap(),
        ab_p_truncation(2, 16).unwrap(),
        cyc_truncation(12).unwrap(),
        ab_truncation(12).unwrap(),
        sigma3_family().unwrap(),
    ] {
        let f: Arc<Family> = Arc::new(f);
        let checks = LemmaChecks::new(&f);
        for t in enumerate_all(&f) {
            assert_eq!(checks.section_defect(&t), None, "{}", f.spec());
            assert_eq!(checks.product_defect(&t), None, "{}", f.spec());
            assert_eq!(g_transfer_defect(&t), None, "{}", f.spec());
        }
    }
}

#[test]
fn section_tables_include_projections() {
    let f = ab_truncation(8).unwrap();
    let checks = LemmaChecks::new(&f);
    // at least the projections C2xC2 -> C2, C2xC4 -> C4 and C2xC4 -> C2
    assert!(checks.section_count() >= 3);
    assert!(checks.product_count() >= 3);
}

fn factorizations() -> Vec<GeneralizedFactorization> {
    let mut out = vec![GeneralizedFactorization::one(), GeneralizedFactorization::top()];
    for e2 in [Exponent::Finite(0), Exponent::Finite(1), Exponent::Finite(2), Exponent::Top] {
        for e3 in [Exponent::Finite(0), Exponent::Finite(1), Exponent::Top] {
            let mut n = GeneralizedFactorization::one();
            n.set(2, e2);
            n.set(3, e3);
            out.push(n);
        }
    }
    out
}

#[test]
fn ablie_membership_ignores_torus_rank() {
    let limits = Limits::default();
    for part in [vec![], vec![2], vec![4], vec![2, 2], vec![8], vec![2, 4], vec![3], vec![6], vec![2, 2, 2], vec![4, 4], vec![16]] {
        let a = make_fin_ab(&part).unwrap();
        let g = Group::abelian(a.clone()).unwrap();
        for k in subgroups(&g, &limits).unwrap() {
            for n in factorizations() {
                let base = ablie_contains(&n, &AbLieGroup::new(0, a.clone()), &k);
                for rank in 1..=5 {
                    assert_eq!(ablie_contains(&n, &AbLieGroup::new(rank, a.clone()), &k), base);
                }
            }
        }
    }
}
