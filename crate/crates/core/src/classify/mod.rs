//! Enumeration and classification of transfer systems.
//!
//! Labels are generalized prime factorizations. On a truncation, an exponent
//! at `p` at or above the largest visible exponent (the `n` of the largest
//! `C_{p^n}` in the registry) cannot be told apart from `∞`, so labels report
//! `TOP` there.

mod ablie;
mod hasse;
mod label;
mod structure;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

pub use ablie::{ablie_contains, AbLieGroup};
pub use hasse::{HasseDiagram, HasseError, HasseNode};
pub use label::{Exponent, GeneralizedFactorization};
pub use structure::{g_transfer_defect, product_property_defect, section_property_defect, section_tables, LemmaChecks};

use crate::arith;
use crate::families::{Family, FamilySpec};
use crate::functors::restrict;
use crate::groups::ElementSet;
use crate::transfer::{TransferError, TransferSystem};

/// `T^N`: `(K, H)` is admissible iff `K` contains every element of `H` whose
/// order divides `N`.
pub fn t_from_label(n: &GeneralizedFactorization, family: &Arc<Family>) -> TransferSystem {
    let mut pairs = FixedBitSet::with_capacity(family.pair_count());
    for h in 0..family.len() {
        let group = family.group(h);
        let needed: ElementSet = group
            .elements()
            .filter(|&x| n.divides(group.element_order(x) as u64))
            .collect();
        for (k, sub) in family.subgroups(h).iter().enumerate() {
            if needed.is_subset(sub.members()) {
                pairs.insert(family.pair_id(h, k));
            }
        }
    }
    TransferSystem::from_bits(family, pairs).expect("T^N is closed under both rules")
}

/// Primes `p` with `C_p` in the registry, each with the largest `n` such
/// that `C_{p^n}` is in the registry.
pub fn visible_primes(family: &Family) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    for g in family.groups() {
        if let Some((p, n)) = arith::prime_power(g.order() as u64) {
            if g.is_cyclic() {
                let e = out.entry(p).or_insert(0);
                *e = (*e).max(n);
            }
        }
    }
    out
}

/// The label of a system: at each visible prime, the least `n` with
/// `C_{p^n} <= C_{p^{n+1}}` admissible, else `TOP`. Unlisted primes are 0.
pub fn label(t: &TransferSystem) -> GeneralizedFactorization {
    let f = t.family();
    let mut out = GeneralizedFactorization::one();
    for (p, top) in visible_primes(f) {
        let mut found = Exponent::Top;
        for n in 0..top {
            let Some(h) = f.cyclic_index(p.pow(n + 1)) else { break };
            if f.cyclic_index(p.pow(n)).is_none() {
                break;
            }
            // cyclic subgroups are sorted by order, one per divisor
            let k = f.subgroups(h).iter().position(|s| s.order() as u64 == p.pow(n));
            if k.is_some_and(|k| t.contains(h, k)) {
                found = Exponent::Finite(n);
                break;
            }
        }
        out.set(p, found);
    }
    out
}

/// Replaces exponents that the truncation cannot distinguish from `TOP`.
pub fn truncate_label(n: &GeneralizedFactorization, family: &Family) -> GeneralizedFactorization {
    let mut out = GeneralizedFactorization::one();
    for (p, top) in visible_primes(family) {
        let e = match n.get(p) {
            Exponent::Finite(e) if e < top => Exponent::Finite(e),
            _ => Exponent::Top,
        };
        out.set(p, e);
    }
    out
}

/// The label when it classifies `t`, i.e. `t_from_label(label(t)) = t`.
pub fn classified_label(t: &TransferSystem) -> Option<GeneralizedFactorization> {
    let n = label(t);
    (t_from_label(&n, t.family()) == *t).then_some(n)
}

/// Every label on the truncated grid, in grid order (first prime slowest).
pub fn label_grid(family: &Family) -> Vec<GeneralizedFactorization> {
    let mut grid = vec![GeneralizedFactorization::one()];
    for (p, top) in visible_primes(family) {
        let choices: Vec<Exponent> = (0..top).map(Exponent::Finite).chain([Exponent::Top]).collect();
        grid = grid
            .into_iter()
            .flat_map(|n| {
                choices.iter().map(move |&e| {
                    let mut m = n.clone();
                    m.set(p, e);
                    m
                })
            })
            .collect();
    }
    grid
}

/// Every transfer system on `family`, sorted (sizes increasing, so the order
/// extends inclusion).
///
/// Each system is the join of the closures of its single pairs, so growing
/// the set `{trivial}` by joins with those atoms reaches all of them.
pub fn enumerate_all(family: &Arc<Family>) -> Vec<TransferSystem> {
    let nonreflexive: Vec<(usize, usize)> = (0..family.pair_count())
        .map(|id| family.pair(id))
        .filter(|&(h, k)| k + 1 != family.subgroups(h).len())
        .collect();
    let mut atoms: Vec<TransferSystem> = nonreflexive
        .par_iter()
        .map(|&p| TransferSystem::close(family, [p]).expect("registry pair"))
        .collect();
    atoms.sort();
    atoms.dedup();

    let trivial = TransferSystem::trivial(family);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    seen.insert(trivial.bits().clone());
    let mut all = vec![trivial];
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next: Vec<TransferSystem> = frontier
            .par_iter()
            .flat_map_iter(|s| {
                atoms
                    .iter()
                    .filter(|a| !a.bits().is_subset(s.bits()))
                    .map(|a| s.join_unchecked(a))
                    .collect::<Vec<_>>()
            })
            .collect();
        next.sort();
        next.dedup();
        next.retain(|t| seen.insert(t.bits().clone()));
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort();
    all
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("brute force needs at most {limit} non-reflexive pairs, the family has {found}")]
    TooManyPairs { limit: usize, found: usize },
    #[error("{0} is not a cyclic or abelian truncation")]
    NotClassifiable(String),
    #[error(transparent)]
    Transfer(#[from] TransferError),
}

pub const BRUTE_FORCE_LIMIT: usize = 16;

/// Every subset of non-reflexive pairs that satisfies the axioms.
pub fn enumerate_brute_force(family: &Arc<Family>) -> Result<Vec<TransferSystem>, ClassifyError> {
    let base = TransferSystem::trivial(family);
    let free: Vec<usize> = (0..family.pair_count()).filter(|&id| !base.bits().contains(id)).collect();
    if free.len() > BRUTE_FORCE_LIMIT {
        return Err(ClassifyError::TooManyPairs {
            limit: BRUTE_FORCE_LIMIT,
            found: free.len(),
        });
    }
    let mut out: Vec<TransferSystem> = (0u32..1 << free.len())
        .into_par_iter()
        .filter_map(|mask| {
            let mut bits = base.bits().clone();
            for (i, &id) in free.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    bits.insert(id);
                }
            }
            TransferSystem::from_bits(family, bits).ok()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Result of checking the classification on one truncation. Serializes to
/// `{family, count, labels, chain_lengths, violations}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub family: String,
    pub count: usize,
    pub labels: Vec<String>,
    pub chain_lengths: BTreeMap<u64, usize>,
    pub violations: Vec<String>,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn is_main_theorem_family(family: &Family) -> bool {
    matches!(
        family.spec(),
        FamilySpec::CycP { .. } | FamilySpec::AbP { .. } | FamilySpec::Cyc { .. } | FamilySpec::Ab { .. }
    )
}

/// Checks on a cyclic or abelian truncation that the enumerated systems are
/// exactly the `T^N` on the label grid, with pairwise distinct labels,
/// `N <= N'` iff `T^{N'} <= T^N`, per-prime chains of the expected lengths,
/// and (abelian families) that restriction to the cyclic groups is a poset
/// isomorphism.
pub fn verify_main_theorem(family: &Arc<Family>) -> Result<ClassificationReport, ClassifyError> {
    if !is_main_theorem_family(family) {
        return Err(ClassifyError::NotClassifiable(family.spec().to_string()));
    }
    let systems = enumerate_all(family);
    let mut violations = Vec::new();

    let mut labels = Vec::with_capacity(systems.len());
    let mut by_label: HashMap<GeneralizedFactorization, usize> = HashMap::new();
    for (i, t) in systems.iter().enumerate() {
        let n = label(t);
        if t_from_label(&n, family) != *t {
            violations.push(format!("system {i} is not T^N for its label {n}: {t:?}"));
        }
        if let Some(j) = by_label.insert(n.clone(), i) {
            violations.push(format!("systems {j} and {i} share the label {n}"));
        }
        labels.push(n);
    }

    let grid = label_grid(family);
    let grid_systems: Vec<TransferSystem> = grid.par_iter().map(|n| t_from_label(n, family)).collect();
    for (n, t) in grid.iter().zip(&grid_systems) {
        if systems.binary_search(t).is_err() {
            violations.push(format!("T^{n} is missing from the enumeration"));
        }
    }
    if grid.len() != systems.len() {
        violations.push(format!("grid has {} labels, enumeration has {} systems", grid.len(), systems.len()));
    }
    let order_violations: Vec<String> = (0..grid.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (grid, gs) = (&grid, &grid_systems);
            (0..grid.len()).filter_map(move |j| {
                let by_label = grid[i].leq(&grid[j]);
                let by_system = gs[j].bits().is_subset(gs[i].bits());
                (by_label != by_system).then(|| {
                    format!("{} <= {} is {by_label} but T^{} <= T^{} is {by_system}", grid[i], grid[j], grid[j], grid[i])
                })
            })
        })
        .collect();
    violations.extend(order_violations);

    let visible = visible_primes(family);
    let mut chain_lengths = BTreeMap::new();
    for (&p, &top) in &visible {
        let seen: HashSet<Exponent> = labels.iter().map(|n| n.get(p)).collect();
        chain_lengths.insert(p, seen.len());
        if seen.len() != top as usize + 1 {
            violations.push(format!("chain at {p} has length {}, expected {}", seen.len(), top + 1));
        }
    }
    let product: usize = chain_lengths.values().product();
    if product != systems.len() {
        violations.push(format!("product of chain lengths {product} != {} systems", systems.len()));
    }

    if !family.groups().iter().all(|g| g.is_cyclic()) {
        let cyc = Arc::new(
            family
                .sub_truncation(|g| g.is_cyclic())
                .map_err(TransferError::from)?,
        );
        violations.extend(restriction_isomorphism_defects(&systems, &cyc)?);
    }

    let mut label_strings: Vec<String> = labels.iter().map(ToString::to_string).collect();
    label_strings.sort();
    Ok(ClassificationReport {
        family: family.spec().to_string(),
        count: systems.len(),
        labels: label_strings,
        chain_lengths,
        violations,
    })
}

/// Violations of "restriction to `sub` is a bijection onto the systems of
/// `sub` preserving and reflecting inclusion".
pub fn restriction_isomorphism_defects(
    systems: &[TransferSystem],
    sub: &Arc<Family>,
) -> Result<Vec<String>, TransferError> {
    let mut out = Vec::new();
    let restricted: Vec<TransferSystem> = systems.iter().map(|t| restrict(t, sub)).collect::<Result<_, _>>()?;
    let targets = enumerate_all(sub);
    let mut hit = vec![false; targets.len()];
    for (i, r) in restricted.iter().enumerate() {
        match targets.binary_search(r) {
            Ok(j) if hit[j] => out.push(format!("restriction is not injective at {r:?}")),
            Ok(j) => hit[j] = true,
            Err(_) => out.push(format!("restriction of system {i} is not a system on {}", sub.spec())),
        }
    }
    if let Some(j) = hit.iter().position(|&h| !h) {
        out.push(format!("restriction misses {:?}", targets[j]));
    }
    for (i, a) in systems.iter().enumerate() {
        for (j, b) in systems.iter().enumerate() {
            let before = a.bits().is_subset(b.bits());
            let after = restricted[i].bits().is_subset(restricted[j].bits());
            if before != after {
                out.push(format!("restriction changes the order between systems {i} and {j}"));
            }
        }
    }
    Ok(out)
}

/// Findings on the Σ₃ family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sigma3Report {
    pub family: String,
    pub count: usize,
    /// Each system as its list of non-reflexive pairs.
    pub labels: Vec<String>,
    pub chain_lengths: BTreeMap<u64, usize>,
    pub violations: Vec<String>,
    /// The two systems with equal restriction to `{C1, C2, C3}`.
    pub colliding: Vec<String>,
}

impl Sigma3Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn describe(t: &TransferSystem) -> String {
    let pairs: Vec<String> = t
        .non_reflexive_pairs()
        .map(|(h, k)| format!("[{}]", t.describe_pair(h, k)))
        .collect();
    if pairs.is_empty() {
        "trivial".to_string()
    } else {
        pairs.join(" ")
    }
}

/// The system admitting every pair except `(K, Σ₃)` with `|K| = 2`.
pub fn sigma3_exceptional(family: &Arc<Family>) -> Result<TransferSystem, TransferError> {
    let s3 = family.groups().iter().position(|g| !g.is_abelian());
    let mut bits = TransferSystem::all(family).bits().clone();
    if let Some(h) = s3 {
        for (k, sub) in family.subgroups(h).iter().enumerate() {
            if sub.order() == 2 {
                bits.set(family.pair_id(h, k), false);
            }
        }
    }
    TransferSystem::from_bits(family, bits)
}

pub fn sigma3_report() -> Result<Sigma3Report, ClassifyError> {
    let family = Arc::new(crate::families::sigma3_family().map_err(TransferError::from)?);
    let sub = Arc::new(family.sigma3_abelian_part().map_err(TransferError::from)?);
    let systems = enumerate_all(&family);
    let mut violations = Vec::new();
    if systems.len() != 5 {
        violations.push(format!("expected 5 systems, found {}", systems.len()));
    }
    let all = TransferSystem::all(&family);
    let exceptional = sigma3_exceptional(&family)?;
    if !systems.contains(&exceptional) {
        violations.push("the system without (order 2 <= S3) is missing".into());
    }
    let restricted: Vec<TransferSystem> = systems.iter().map(|t| restrict(t, &sub)).collect::<Result<_, _>>()?;
    let mut fibres: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, r) in restricted.iter().enumerate() {
        fibres.entry(r.bits().ones().collect()).or_default().push(i);
    }
    let big: Vec<&Vec<usize>> = fibres.values().filter(|v| v.len() > 1).collect();
    let mut colliding = Vec::new();
    match big.as_slice() {
        [pair] if pair.len() == 2 => {
            let (a, b) = (&systems[pair[0]], &systems[pair[1]]);
            let expected = (a == &all && b == &exceptional) || (a == &exceptional && b == &all);
            if !expected {
                violations.push("the colliding systems are not All and the exceptional system".into());
            }
            if restricted[pair[0]] != TransferSystem::all(&sub) {
                violations.push("the colliding systems do not restrict to All".into());
            }
            colliding = vec![describe(a), describe(b)];
        }
        _ => violations.push(format!("expected exactly one 2-element fibre, found {:?}", big)),
    }
    for (i, a) in systems.iter().enumerate() {
        for (j, b) in systems.iter().enumerate() {
            if a.bits().is_subset(b.bits()) && !restricted[i].bits().is_subset(restricted[j].bits()) {
                violations.push(format!("restriction is not monotone on systems {i}, {j}"));
            }
        }
    }
    Ok(Sigma3Report {
        family: family.spec().to_string(),
        count: systems.len(),
        labels: systems.iter().map(describe).collect(),
        chain_lengths: BTreeMap::new(),
        violations,
        colliding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{ab_p_truncation, ab_truncation, cyc_p_truncation, cyc_truncation, sigma3_family};

    fn arc(f: Family) -> Arc<Family> {
        Arc::new(f)
    }

    #[test]
    fn labels_of_extremes() {
        let f = arc(cyc_p_truncation(2, 3).unwrap());
        assert_eq!(label(&TransferSystem::all(&f)).to_string(), "1");
        assert_eq!(label(&TransferSystem::trivial(&f)).to_string(), "2^TOP");
        assert_eq!(t_from_label(&GeneralizedFactorization::one(), &f), TransferSystem::all(&f));
        assert_eq!(t_from_label(&GeneralizedFactorization::top(), &f), TransferSystem::trivial(&f));
        let c4 = f.cyclic_index(4).unwrap();
        let t = TransferSystem::close(&f, [(c4, 1)]).unwrap();
        assert_eq!(label(&t).to_string(), "2^1");
    }

    #[test]
    fn t_from_label_example() {
        let f = arc(ab_p_truncation(2, 8).unwrap());
        let n: GeneralizedFactorization = "2^1".parse().unwrap();
        let t = t_from_label(&n, &f);
        let c4 = f.cyclic_index(4).unwrap();
        assert!(t.contains(c4, 1));
        let v = f.groups().iter().position(|g| g.to_string() == "C2xC2").unwrap();
        let k = f.subgroup_index(v, ElementSet::from_iter([0, 2])).unwrap();
        assert!(!t.contains(v, k));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_all(&arc(cyc_p_truncation(2, 3).unwrap())).len(), 4);
        assert_eq!(enumerate_all(&arc(cyc_p_truncation(3, 2).unwrap())).len(), 3);
        assert_eq!(enumerate_all(&arc(cyc_p_truncation(2, 2).unwrap())).len(), 3);
        assert_eq!(enumerate_all(&arc(sigma3_family().unwrap())).len(), 5);
        assert_eq!(enumerate_all(&arc(cyc_truncation(1).unwrap())).len(), 1);
    }

    #[test]
    fn brute_force_agrees_on_small_families() {
        for f in [
            cyc_p_truncation(2, 3).unwrap(),
            cyc_p_truncation(3, 2).unwrap(),
            sigma3_family().unwrap(),
            cyc_truncation(6).unwrap(),
            ab_truncation(4).unwrap(),
        ] {
            let f = arc(f);
            assert_eq!(enumerate_all(&f), enumerate_brute_force(&f).unwrap(), "{}", f.spec());
        }
        let big = arc(ab_p_truncation(2, 16).unwrap());
        assert!(matches!(enumerate_brute_force(&big), Err(ClassifyError::TooManyPairs { .. })));
    }

    #[test]
    fn main_theorem_small() {
        let r = verify_main_theorem(&arc(cyc_p_truncation(3, 2).unwrap())).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.count, 3);
        let r = verify_main_theorem(&arc(ab_truncation(6).unwrap())).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.count, 3 * 2 * 2);
        assert!(verify_main_theorem(&arc(sigma3_family().unwrap())).is_err());
    }

    #[test]
    fn sigma3_findings() {
        let r = sigma3_report().unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.count, 5);
        assert_eq!(r.colliding.len(), 2);
    }

    #[test]
    fn label_grid_size() {
        assert_eq!(label_grid(&cyc_truncation(12).unwrap()).len(), 96);
        assert_eq!(label_grid(&cyc_p_truncation(2, 0).unwrap()).len(), 1);
    }
}
