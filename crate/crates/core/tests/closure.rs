use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use transys_core::families::{ab_p_truncation, ab_truncation, cyc_p_truncation, cyc_truncation, sigma3_family};
use transys_core::groups::{homs, ElementSet, Limits};
use transys_core::{Family, TransferSystem};

/// Relation as `(registry index, subgroup elements)`.
type Relation = BTreeSet<(usize, u128)>;

/// Round-robin fixpoint straight from the definition: pullback along every
/// hom, and transitivity along every isomorphism onto the middle subgroup.
fn oracle_close(f: &Family, seed: &[(usize, usize)]) -> Relation {
    let limits = Limits::default();
    let n = f.len();
    let catalogue: Vec<Vec<_>> = (0..n)
        .map(|g| (0..n).map(|h| homs(f.group(g), f.group(h), &limits).unwrap()).collect())
        .collect();
    let mut rel: Relation = (0..n).map(|h| (h, f.group(h).all_elements().bits())).collect();
    for &(h, k) in seed {
        rel.insert((h, f.subgroups(h)[k].members().bits()));
    }
    loop {
        let mut next = rel.clone();
        for &(h, k) in &rel {
            let k = ElementSet::from_bits(k);
            for g in 0..n {
                for theta in &catalogue[g][h] {
                    next.insert((g, theta.preimage_set(k).bits()));
                }
            }
            for r in 0..n {
                for psi in &catalogue[r][h] {
                    if !psi.is_injective() || psi.image(f.group(r).all_elements()) != k {
                        continue;
                    }
                    for &(r2, l) in &rel {
                        if r2 == r {
                            next.insert((h, psi.image(ElementSet::from_bits(l)).bits()));
                        }
                    }
                }
            }
        }
        if next == rel {
            return rel;
        }
        rel = next;
    }
}

fn as_relation(t: &TransferSystem) -> Relation {
    let f = t.family();
    t.pairs().map(|(h, k)| (h, f.subgroups(h)[k].members().bits())).collect()
}

fn families() -> &'static [Arc<Family>] {
    static F: OnceLock<Vec<Arc<Family>>> = OnceLock::new();
    F.get_or_init(|| {
        vec![
            Arc::new(cyc_p_truncation(2, 3).unwrap()),
            Arc::new(cyc_truncation(6).unwrap()),
            Arc::new(ab_truncation(8).unwrap()),
            Arc::new(sigma3_family().unwrap()),
            Arc::new(ab_p_truncation(3, 9).unwrap()),
        ]
    })
}

fn seed_strategy() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..families().len(), prop::collection::vec(any::<usize>(), 0..4))
}

fn seed_pairs(f: &Family, raw: &[usize]) -> Vec<(usize, usize)> {
    raw.iter().map(|&r| f.pair(r % f.pair_count())).collect()
}

#[test]
fn documented_closures() {
    let f = &families()[0];
    let c4 = f.cyclic_index(4).unwrap();
    let t = TransferSystem::close(f, [(c4, 1)]).unwrap();
    assert_eq!(as_relation(&t), oracle_close(f, &[(c4, 1)]));
    assert_eq!(t.non_reflexive_len(), 3);
}

#[test]
fn every_single_pair_closure_matches_the_oracle() {
    for f in families() {
        for id in 0..f.pair_count() {
            let p = f.pair(id);
            let t = TransferSystem::close(f, [p]).unwrap();
            assert_eq!(as_relation(&t), oracle_close(f, &[p]), "{} pair {p:?}", f.spec());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn close_matches_the_oracle((fi, raw) in seed_strategy()) {
        let f = &families()[fi];
        let seed = seed_pairs(f, &raw);
        let t = TransferSystem::close(f, seed.iter().copied()).unwrap();
        prop_assert_eq!(as_relation(&t), oracle_close(f, &seed));
        prop_assert!(t.closure_defect().is_none());
    }

    #[test]
    fn closure_operator_laws((fi, a) in seed_strategy(), b in prop::collection::vec(any::<usize>(), 0..3)) {
        let f = &families()[fi];
        let sa = seed_pairs(f, &a);
        let mut sab = sa.clone();
        sab.extend(seed_pairs(f, &b));
        let ta = TransferSystem::close(f, sa.iter().copied()).unwrap();
        let tab = TransferSystem::close(f, sab.iter().copied()).unwrap();
        for &(h, k) in &sa {
            prop_assert!(ta.contains(h, k));
        }
        prop_assert!(ta.leq(&tab).unwrap());
        let again = TransferSystem::close(f, ta.pairs()).unwrap();
        prop_assert_eq!(again, ta);
    }

    #[test]
    fn lattice_laws((fi, a) in seed_strategy(), b in prop::collection::vec(any::<usize>(), 0..3), c in prop::collection::vec(any::<usize>(), 0..3)) {
        let f = &families()[fi];
        let ta = TransferSystem::close(f, seed_pairs(f, &a)).unwrap();
        let tb = TransferSystem::close(f, seed_pairs(f, &b)).unwrap();
        let tc = TransferSystem::close(f, seed_pairs(f, &c)).unwrap();
        let meet = ta.meet(&tb).unwrap();
        prop_assert!(meet.closure_defect().is_none());
        prop_assert_eq!(TransferSystem::close(f, meet.pairs()).unwrap(), meet.clone());
        prop_assert_eq!(ta.join(&tb).unwrap(), tb.join(&ta).unwrap());
        prop_assert_eq!(ta.join(&tb).unwrap().join(&tc).unwrap(), ta.join(&tb.join(&tc).unwrap()).unwrap());
        prop_assert_eq!(ta.join(&ta).unwrap(), ta.clone());
        prop_assert_eq!(ta.meet(&TransferSystem::all(f)).unwrap(), ta.clone());
        prop_assert_eq!(ta.meet(&TransferSystem::trivial(f)).unwrap(), TransferSystem::trivial(f));
        prop_assert_eq!(ta.join(&TransferSystem::trivial(f)).unwrap(), ta.clone());
        prop_assert_eq!(ta.join(&TransferSystem::all(f)).unwrap(), TransferSystem::all(f));
        prop_assert!(meet.leq(&ta).unwrap() && meet.leq(&tb).unwrap());
        let both = ta.leq(&tb).unwrap() && tb.leq(&ta).unwrap();
        prop_assert_eq!(both, ta.equals(&tb).unwrap());
    }

    #[test]
    fn json_round_trips((fi, a) in seed_strategy()) {
        let f = &families()[fi];
        let t = TransferSystem::close(f, seed_pairs(f, &a)).unwrap();
        let text = t.to_json();
        prop_assert_eq!(TransferSystem::from_json_in(&text, f).unwrap(), t.clone());
        prop_assert_eq!(TransferSystem::from_json(&text).unwrap().to_json(), text);
    }
}

#[test]
fn transitivity_does_not_depend_on_the_chosen_isomorphism() {
    // admissible sets are stable under automorphisms, so every isomorphism
    // onto the middle subgroup pushes the same pairs
    let limits = Limits::default();
    for f in families() {
        for t in transys_core::classify::enumerate_all(f) {
            for (h, k) in t.pairs() {
                let tr = f.transport(h, k);
                let r = tr.registry;
                for psi in homs(f.group(r), f.group(h), &limits).unwrap() {
                    if !psi.is_injective() || psi.image(f.group(r).all_elements()) != f.subgroups(h)[k].members() {
                        continue;
                    }
                    for l in 0..f.subgroups(r).len() {
                        if t.contains(r, l) {
                            let pushed = psi.image(f.subgroups(r)[l].members());
                            assert!(t.contains(h, f.subgroup_index(h, pushed).unwrap()));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn the_remark_non_example_is_not_pullback_closed() {
    for p in [2, 3, 5] {
        let f = Arc::new(cyc_p_truncation(p, 2).unwrap());
        let cp = f.cyclic_index(p).unwrap();
        let mut bits = TransferSystem::trivial(&f).bits().clone();
        bits.insert(f.pair_id(cp, 0));
        assert!(TransferSystem::from_bits(&f, bits.clone()).is_err());
        let closed = TransferSystem::close(&f, [(cp, 0)]).unwrap();
        assert!(bits.is_subset(closed.bits()) && closed.bits().count_ones(..) > bits.count_ones(..));
    }
}
