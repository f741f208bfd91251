//! Structural properties every global transfer system satisfies, checked
//! against the hom catalogue of its family.

use std::collections::HashSet;

use crate::families::Family;
use crate::groups::{self, ElementSet, Group};
use crate::transfer::TransferSystem;

/// Pullback tables of the catalogued surjections `π: G -> H` that admit a
/// section, as `(g, h, table)`.
pub fn section_tables(family: &Family) -> Vec<(usize, usize, Box<[u16]>)> {
    let mut out = Vec::new();
    for g in 0..family.len() {
        for h in 0..family.len() {
            let target = family.group(h);
            let candidates: Vec<ElementSet> = family
                .subgroups(g)
                .iter()
                .filter(|c| c.order() == target.order())
                .map(|c| c.members())
                .collect();
            let mut emitted = HashSet::new();
            for pi in family.homs(g, h) {
                if !pi.is_surjective() {
                    continue;
                }
                let table: Box<[u16]> = family
                    .subgroups(h)
                    .iter()
                    .map(|k| family.subgroup_index(g, pi.preimage_set(k.members())).unwrap() as u16)
                    .collect();
                if emitted.contains(&table) {
                    continue;
                }
                // a section exists iff π is injective on some C ≅ H
                if candidates.iter().any(|&c| pi.image(c).len() == c.len()) {
                    emitted.insert(table.clone());
                    out.push((g, h, table));
                }
            }
        }
    }
    out
}

/// Precomputed catalogue data for the section and product properties.
pub struct LemmaChecks {
    sections: Vec<(usize, usize, Box<[u16]>)>,
    /// `(a, b, p, table)` with `table[ka][kb]` the index of `Ka × Kb` in `p`.
    products: Vec<(usize, usize, usize, Vec<Vec<usize>>)>,
}

impl LemmaChecks {
    pub fn new(family: &Family) -> Self {
        Self {
            sections: section_tables(family),
            products: product_tables(family),
        }
    }

    /// For every split surjection `π: G -> H`: `K <=_T H` iff `π⁻¹K <=_T G`.
    pub fn section_defect(&self, t: &TransferSystem) -> Option<String> {
        let f = t.family();
        for (g, h, table) in &self.sections {
            for (k, &pre) in table.iter().enumerate() {
                if t.contains(*h, k) != t.contains(*g, pre as usize) {
                    return Some(format!(
                        "split surjection {} -> {}: {} and {} disagree",
                        f.group(*g),
                        f.group(*h),
                        t.describe_pair(*h, k),
                        t.describe_pair(*g, pre as usize)
                    ));
                }
            }
        }
        None
    }

    /// `K <=_T H` and `K' <=_T H'` give `K × K' <=_T H × H'`.
    pub fn product_defect(&self, t: &TransferSystem) -> Option<String> {
        for (a, b, p, table) in &self.products {
            for (ka, row) in table.iter().enumerate() {
                if !t.contains(*a, ka) {
                    continue;
                }
                for (kb, &kp) in row.iter().enumerate() {
                    if t.contains(*b, kb) && !t.contains(*p, kp) {
                        return Some(format!(
                            "{} and {} but not {}",
                            t.describe_pair(*a, ka),
                            t.describe_pair(*b, kb),
                            t.describe_pair(*p, kp)
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn product_count(&self) -> usize {
        self.products.len()
    }

    pub fn section_count(&self) -> usize {
        self.sections.len()
    }
}

fn product_tables(family: &Family) -> Vec<(usize, usize, usize, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for a in 0..family.len() {
        for b in 0..family.len() {
            let (Some(fa), Some(fb)) = (family.group(a).as_abelian(), family.group(b).as_abelian()) else {
                continue;
            };
            let orders: Vec<u64> = fa.factors().iter().chain(fb.factors()).map(|&q| q as u64).collect();
            let Ok(prod) = groups::make_fin_ab(&orders) else { continue };
            let Some(p) = Group::abelian(prod.clone()).ok().and_then(|g| family.registry_index(&g)) else {
                continue;
            };
            // slot of each factor of a, then b, among the product's factors
            let mut used = vec![false; prod.factors().len()];
            let slots: Vec<usize> = fa
                .factors()
                .iter()
                .chain(fb.factors())
                .map(|q| {
                    let s = (0..used.len()).find(|&s| !used[s] && prod.factors()[s] == *q).unwrap();
                    used[s] = true;
                    s
                })
                .collect();
            let embed = |x: usize, y: usize| {
                let mut r = vec![0u32; prod.factors().len()];
                for (i, v) in fa.residues(x).into_iter().chain(fb.residues(y)).enumerate() {
                    r[slots[i]] = v;
                }
                prod.index_of(&r)
            };
            let table = family
                .subgroups(a)
                .iter()
                .map(|ka| {
                    family
                        .subgroups(b)
                        .iter()
                        .map(|kb| {
                            let set: ElementSet = ka
                                .members()
                                .iter()
                                .flat_map(|x| kb.members().iter().map(move |y| (x, y)))
                                .map(|(x, y)| embed(x, y))
                                .collect();
                            family.subgroup_index(p, set).expect("product of subgroups")
                        })
                        .collect()
                })
                .collect();
            out.push((a, b, p, table));
        }
    }
    out
}

pub fn section_property_defect(t: &TransferSystem) -> Option<String> {
    LemmaChecks::new(t.family()).section_defect(t)
}

pub fn product_property_defect(t: &TransferSystem) -> Option<String> {
    LemmaChecks::new(t.family()).product_defect(t)
}

/// Checks, inside every registry group `G`, that the induced relation on
/// subgroups (`K` to `L` when the transported pair is admissible) is a
/// `G`-transfer system: reflexive, transitive, closed under restriction
/// `K∩M <= M` for `M <= L`, and under conjugation.
pub fn g_transfer_defect(t: &TransferSystem) -> Option<String> {
    let f = t.family();
    for h in 0..f.len() {
        let g = f.group(h);
        let subs = f.subgroups(h);
        let n = subs.len();
        let rel: Vec<Vec<bool>> = (0..n)
            .map(|l| {
                let tr = f.transport(h, l);
                (0..n)
                    .map(|k| {
                        if !subs[k].members().is_subset(subs[l].members()) {
                            return false;
                        }
                        let pre = tr.embedding.preimage_set(subs[k].members());
                        let kr = f.subgroup_index(tr.registry, pre).expect("preimage is a subgroup");
                        t.contains(tr.registry, kr)
                    })
                    .collect()
            })
            .collect();
        let name = |k: usize, l: usize| format!("subgroup {k} <= subgroup {l} of {g}");
        for l in 0..n {
            if !rel[l][l] {
                return Some(format!("not reflexive at subgroup {l} of {g}"));
            }
            for k in 0..n {
                if !rel[l][k] {
                    continue;
                }
                // rel[l][k]: K = subs[k] <= L = subs[l]
                for m in 0..n {
                    if rel[m][l] && !rel[m][k] {
                        return Some(format!("not transitive: {}", name(k, m)));
                    }
                    if subs[m].members().is_subset(subs[l].members()) {
                        let meet = subs[k].members().intersection(subs[m].members());
                        let i = f.subgroup_index(h, meet).expect("intersection of subgroups");
                        if !rel[m][i] {
                            return Some(format!("not closed under restriction: {}", name(k, l)));
                        }
                    }
                }
                for x in g.elements() {
                    let conj = |s: ElementSet| -> ElementSet {
                        s.iter().map(|y| g.op(g.op(x, y), g.inverse(x))).collect()
                    };
                    let kc = f.subgroup_index(h, conj(subs[k].members())).expect("conjugate subgroup");
                    let lc = f.subgroup_index(h, conj(subs[l].members())).expect("conjugate subgroup");
                    if !rel[lc][kc] {
                        return Some(format!("not closed under conjugation: {}", name(k, l)));
                    }
                }
            }
        }
    }
    None
}
