//! Change-of-family functors: restriction `U`, the right adjoint `R`, and
//! the splitting of abelian systems into their p-primary parts.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::arith;
use crate::families::{Family, FamilyError, FamilySpec};
use crate::groups::{self, Group, Homomorphism};
use crate::transfer::{same_family, TransferError, TransferSystem};

fn not_sub(sub: &Family, sup: &Family) -> TransferError {
    TransferError::Family(FamilyError::NotSubTruncation {
        sub: sub.spec().to_string(),
        sup: sup.spec().to_string(),
    })
}

/// `U`: the pairs of `t` whose group lies in `e`.
pub fn restrict(t: &TransferSystem, e: &Arc<Family>) -> Result<TransferSystem, TransferError> {
    let f = t.family();
    let map = e.embedding_into(f).ok_or_else(|| not_sub(e, f))?;
    let mut pairs = FixedBitSet::with_capacity(e.pair_count());
    for (h, &fh) in map.iter().enumerate() {
        for k in 0..e.subgroups(h).len() {
            if t.contains(fh, k) {
                pairs.insert(e.pair_id(h, k));
            }
        }
    }
    Ok(TransferSystem::from_bits_unchecked(e, pairs))
}

/// `R`: `(K, H)` is admissible iff `θ⁻¹K` is admissible in `t` for every
/// catalogued `θ: G -> H` with `G` in `t`'s family. Requires that family to
/// be a sub-truncation of `f`.
pub fn right_adjoint(t: &TransferSystem, f: &Arc<Family>) -> Result<TransferSystem, TransferError> {
    let e = t.family();
    if !e.is_sub_truncation_of(f) {
        return Err(not_sub(e, f));
    }
    Ok(change_of_family(t, f))
}

/// Pullback tables for every `G` of `source` into group `h` of `target`:
/// `out[g]` lists, per hom, the map target subgroup -> source subgroup.
fn cross_pullbacks(source: &Family, target: &Family, h: usize) -> Vec<Vec<Box<[u16]>>> {
    let map = source.embedding_into_partial(target);
    (0..source.len())
        .map(|g| match map[g] {
            Some(fg) => target.pullbacks(fg, h).to_vec(),
            None => {
                let catalogue = groups::homs(source.group(g), target.group(h), target.limits())
                    .expect("registry groups are within limits");
                let mut tables: Vec<Box<[u16]>> = catalogue
                    .iter()
                    .map(|theta| pullback_table(source, g, target, h, theta))
                    .collect();
                tables.sort();
                tables.dedup();
                tables
            }
        })
        .collect()
}

fn pullback_table(source: &Family, g: usize, target: &Family, h: usize, theta: &Homomorphism) -> Box<[u16]> {
    target
        .subgroups(h)
        .iter()
        .map(|k| {
            source
                .subgroup_index(g, theta.preimage_set(k.members()))
                .expect("preimage of a subgroup is a subgroup") as u16
        })
        .collect()
}

/// `R` for an arbitrary pair of truncations: the universal quantifier runs
/// over all homs from groups of `t`'s family into groups of `f`. Homs
/// between groups outside `f`'s catalogue are computed on demand.
pub fn change_of_family(t: &TransferSystem, f: &Arc<Family>) -> TransferSystem {
    let e = t.family();
    let rows: Vec<Vec<usize>> = (0..f.len())
        .into_par_iter()
        .map(|h| {
            let tables = cross_pullbacks(e, f, h);
            (0..f.subgroups(h).len())
                .filter(|&k| {
                    tables.iter().enumerate().all(|(g, ts)| {
                        ts.iter().all(|table| t.contains(g, table[k] as usize))
                    })
                })
                .map(|k| f.pair_id(h, k))
                .collect()
        })
        .collect();
    let mut pairs = FixedBitSet::with_capacity(f.pair_count());
    for id in rows.into_iter().flatten() {
        pairs.insert(id);
    }
    TransferSystem::from_bits_unchecked(f, pairs)
}

impl Family {
    /// Like [`Family::embedding_into`], but per group.
    pub fn embedding_into_partial(&self, other: &Family) -> Vec<Option<usize>> {
        self.groups().iter().map(|g| other.registry_index(g)).collect()
    }
}

/// Both sides of the adjunction `U(T) <= T'  <=>  T <= R(T')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaloisCheck {
    pub left: bool,
    pub right: bool,
}

impl GaloisCheck {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

/// `t` on the larger family, `t_sub` on the smaller one.
pub fn check_galois(t: &TransferSystem, t_sub: &TransferSystem) -> Result<GaloisCheck, TransferError> {
    let e = t_sub.family();
    let left = restrict(t, e)?.leq(t_sub)?;
    let right = t.leq(&right_adjoint(t_sub, t.family())?)?;
    Ok(GaloisCheck { left, right })
}

/// The p-primary sub-truncations of a family.
#[derive(Debug, Clone)]
pub struct PrimeSplitting {
    family: Arc<Family>,
    parts: BTreeMap<u64, Arc<Family>>,
}

impl PrimeSplitting {
    /// One part per prime up to the largest registry order; parts are named
    /// `abp` (resp. `cycp`) families when `family` is an `ab` (resp. `cyc`)
    /// truncation.
    pub fn new(family: &Arc<Family>) -> Result<Self, FamilyError> {
        let max = family.groups().iter().map(Group::order).max().unwrap_or(1) as u64;
        let mut parts = BTreeMap::new();
        for p in arith::primes_up_to(max) {
            let part = match family.spec() {
                FamilySpec::Ab { max_order } => family.sub_truncation_as(FamilySpec::AbP {
                    p,
                    max_order: *max_order,
                })?,
                FamilySpec::AbP { p: q, max_order } if *q == p => {
                    family.sub_truncation_as(FamilySpec::AbP { p, max_order: *max_order })?
                }
                FamilySpec::Cyc { max_order } => family.sub_truncation_as(FamilySpec::CycP {
                    p,
                    max_exp: max_order.ilog(p),
                })?,
                FamilySpec::CycP { p: q, max_exp } if *q == p => {
                    family.sub_truncation_as(FamilySpec::CycP { p, max_exp: *max_exp })?
                }
                _ => family.sub_truncation(|g| g.is_p_group(p))?,
            };
            parts.insert(p, Arc::new(part));
        }
        Ok(Self {
            family: family.clone(),
            parts,
        })
    }

    pub fn family(&self) -> &Arc<Family> {
        &self.family
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.parts.keys().copied()
    }

    pub fn part(&self, p: u64) -> Option<&Arc<Family>> {
        self.parts.get(&p)
    }

    /// Per-prime restrictions of `t`.
    pub fn split(&self, t: &TransferSystem) -> Result<BTreeMap<u64, TransferSystem>, TransferError> {
        if !same_family(t.family(), &self.family) {
            return Err(TransferError::FamilyMismatch {
                left: t.family().spec().to_string(),
                right: self.family.spec().to_string(),
            });
        }
        self.parts
            .iter()
            .map(|(&p, part)| Ok((p, restrict(t, part)?)))
            .collect()
    }

    /// Meet over primes of the right adjoints of the parts. Every prime of
    /// the splitting must be present.
    pub fn merge(&self, parts: &BTreeMap<u64, TransferSystem>) -> Result<TransferSystem, TransferError> {
        let mut out = TransferSystem::all(&self.family);
        for (&p, part) in &self.parts {
            let t = parts.get(&p).ok_or_else(|| {
                TransferError::Family(FamilyError::InvalidParameter(format!("no part for the prime {p}")))
            })?;
            if !same_family(t.family(), part) {
                return Err(TransferError::FamilyMismatch {
                    left: t.family().spec().to_string(),
                    right: part.spec().to_string(),
                });
            }
            out = out.meet(&right_adjoint(t, &self.family)?)?;
        }
        if let Some(p) = parts.keys().find(|p| !self.parts.contains_key(p)) {
            return Err(TransferError::Family(FamilyError::InvalidParameter(format!(
                "{p} is not a prime of the splitting"
            ))));
        }
        Ok(out)
    }
}

/// Outcome of checking `R_E^F ∘ R_D^E = R_D^F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeReport {
    /// Every hom from `D` into `F` factors through a group of `E`.
    pub hypothesis: bool,
    /// First hom that failed to factor, as `G -> H`.
    pub unfactored: Option<String>,
    pub checked: usize,
    /// First system on `D` where the composite differs.
    pub counterexample: Option<String>,
}

impl ComposeReport {
    pub fn holds(&self) -> bool {
        self.hypothesis && self.counterexample.is_none()
    }
}

/// Whether `theta: G -> H` factors as `G -> X -> H` with `X` in `e`.
fn factors_through(g: &Group, h: &Group, theta: &Homomorphism, e: &Family) -> bool {
    let image = theta.image(g.all_elements());
    let elems = image.to_vec();
    let local: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n = elems.len();
    let table: Vec<u8> = elems
        .iter()
        .flat_map(|&a| elems.iter().map(|&b| local[&h.op(a, b)] as u8).collect::<Vec<_>>())
        .collect();
    if let Ok(t) = groups::FiniteGroup::from_table(n, table) {
        if let Ok(rep) = groups::canonical_form_of(&t) {
            if e.registry_index(&rep).is_some() {
                return true;
            }
        }
    }
    e.groups().iter().any(|x| {
        let Ok(outer) = groups::homs(x, h, e.limits()) else {
            return false;
        };
        let Ok(inner) = groups::homs(g, x, e.limits()) else {
            return false;
        };
        inner.iter().any(|a| {
            outer
                .iter()
                .any(|b| a.then(b).is_ok_and(|c| c.as_slice() == theta.as_slice()))
        })
    })
}

/// Checks the factorization hypothesis, then the composite identity on
/// every system in `systems` (all on `d`).
pub fn compose_check(
    d: &Arc<Family>,
    e: &Arc<Family>,
    f: &Arc<Family>,
    systems: &[TransferSystem],
) -> Result<ComposeReport, TransferError> {
    let mut unfactored = None;
    'scan: for g in d.groups() {
        for h in f.groups() {
            let catalogue = groups::homs(g, h, f.limits()).map_err(FamilyError::from)?;
            for theta in &catalogue {
                if !factors_through(g, h, theta, e) {
                    unfactored = Some(format!("{g} -> {h} {theta:?}"));
                    break 'scan;
                }
            }
        }
    }
    let mut report = ComposeReport {
        hypothesis: unfactored.is_none(),
        unfactored,
        checked: 0,
        counterexample: None,
    };
    if !report.hypothesis {
        return Ok(report);
    }
    for t in systems {
        if !same_family(t.family(), d) {
            return Err(TransferError::FamilyMismatch {
                left: t.family().spec().to_string(),
                right: d.spec().to_string(),
            });
        }
        let two_step = change_of_family(&change_of_family(t, e), f);
        let direct = change_of_family(t, f);
        report.checked += 1;
        if two_step != direct {
            report.counterexample = Some(format!("{t:?}"));
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{ab_p_truncation, ab_truncation, cyc_p_truncation, sigma3_family};
    use crate::groups::ElementSet;

    fn arc(f: Result<Family, FamilyError>) -> Arc<Family> {
        Arc::new(f.unwrap())
    }

    #[test]
    fn restrict_extremes() {
        let f = arc(ab_truncation(8));
        let e = arc(cyc_p_truncation(2, 2));
        assert_eq!(restrict(&TransferSystem::all(&f), &e).unwrap(), TransferSystem::all(&e));
        assert_eq!(restrict(&TransferSystem::trivial(&f), &e).unwrap(), TransferSystem::trivial(&e));
        let bad = arc(cyc_p_truncation(3, 1));
        let small = arc(cyc_p_truncation(2, 1));
        assert!(restrict(&TransferSystem::all(&small), &bad).is_err());
    }

    #[test]
    fn right_adjoint_excludes_coordinate_subgroup() {
        let e = arc(cyc_p_truncation(2, 2));
        let f = arc(ab_p_truncation(2, 4));
        // T^1 on C1 <= C2 <= C4: only (C2 <= C4) besides reflexive pairs
        let c4 = e.cyclic_index(4).unwrap();
        let c2_in_c4 = e.subgroups(c4).iter().position(|s| s.order() == 2).unwrap();
        let t1 = TransferSystem::close(&e, [(c4, c2_in_c4)]).unwrap();
        let r = right_adjoint(&t1, &f).unwrap();
        let v = f.registry_index(&Group::abelian(groups::make_fin_ab(&[2, 2]).unwrap()).unwrap()).unwrap();
        // C2 x {0} = {(0,0), (1,0)}; index of (1,0) is 2
        let k = f.subgroup_index(v, ElementSet::from_iter([0, 2])).unwrap();
        assert!(!r.contains(v, k));
        assert_eq!(restrict(&r, &e).unwrap(), t1);
        assert_eq!(right_adjoint(&TransferSystem::all(&e), &f).unwrap(), TransferSystem::all(&f));
        assert!(right_adjoint(&TransferSystem::all(&f), &e).is_err());
    }

    #[test]
    fn galois_examples() {
        let e = arc(cyc_p_truncation(2, 1));
        let f = arc(cyc_p_truncation(2, 2));
        let g = check_galois(&TransferSystem::all(&f), &TransferSystem::all(&e)).unwrap();
        assert_eq!(g, GaloisCheck { left: true, right: true });
        let g = check_galois(&TransferSystem::all(&f), &TransferSystem::trivial(&e)).unwrap();
        assert_eq!(g, GaloisCheck { left: false, right: false });
    }

    #[test]
    fn split_names_parts() {
        let f = arc(ab_truncation(12));
        let s = PrimeSplitting::new(&f).unwrap();
        assert_eq!(s.primes().collect::<Vec<_>>(), [2, 3, 5, 7, 11]);
        assert_eq!(s.part(2).unwrap().spec().to_string(), "abp:p=2,maxorder=12");
        assert_eq!(s.part(2).unwrap().len(), 7);
        let parts = s.split(&TransferSystem::all(&f)).unwrap();
        for (p, t) in &parts {
            assert_eq!(*t, TransferSystem::all(s.part(*p).unwrap()));
        }
        assert_eq!(s.merge(&parts).unwrap(), TransferSystem::all(&f));
        let mut missing = parts.clone();
        missing.remove(&5);
        assert!(s.merge(&missing).is_err());
    }

    #[test]
    fn restriction_is_general_adjoint_into_subfamily() {
        let f = arc(sigma3_family());
        let e = arc(f.sigma3_abelian_part());
        for t in [TransferSystem::all(&f), TransferSystem::trivial(&f)] {
            assert_eq!(change_of_family(&t, &e), restrict(&t, &e).unwrap());
        }
    }
}
