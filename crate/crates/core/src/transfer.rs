//! Transfer systems on a truncation and the closure engine.
//!
//! A [`TransferSystem`] stores its admissible pairs `(K <= H)` as a bitset
//! over the family's pair universe (see [`Family::pair_id`]). Every value
//! built through the public constructors is closed: reflexive, closed under
//! pullback along the hom catalogue, and transitive across nested subgroups.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::families::{Family, FamilyError, FamilySpec};
use crate::groups::{ElementSet, Group, GroupLiteral, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransferError {
    #[error("transfer systems live on different families ({left} vs {right})")]
    FamilyMismatch { left: String, right: String },
    #[error("no subgroup {subgroup} in registry group {group}")]
    InvalidPair { group: usize, subgroup: usize },
    #[error("relation is not a transfer system: {0}")]
    NotClosed(String),
    #[error("invalid transfer-system JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Clone)]
pub struct TransferSystem {
    family: Arc<Family>,
    pairs: FixedBitSet,
}

impl TransferSystem {
    /// Reflexive pairs only.
    pub fn trivial(family: &Arc<Family>) -> Self {
        let mut pairs = FixedBitSet::with_capacity(family.pair_count());
        for h in 0..family.len() {
            pairs.insert(family.pair_id(h, family.subgroups(h).len() - 1));
        }
        Self {
            family: family.clone(),
            pairs,
        }
    }

    /// Every subgroup pair.
    pub fn all(family: &Arc<Family>) -> Self {
        let mut pairs = FixedBitSet::with_capacity(family.pair_count());
        pairs.insert_range(..);
        Self {
            family: family.clone(),
            pairs,
        }
    }

    /// The least transfer system containing `seed`, given as
    /// `(registry index, subgroup index)` pairs.
    pub fn close(
        family: &Arc<Family>,
        seed: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, TransferError> {
        let mut ids = Vec::new();
        for (h, k) in seed {
            if h >= family.len() || k >= family.subgroups(h).len() {
                return Err(TransferError::InvalidPair { group: h, subgroup: k });
            }
            ids.push(family.pair_id(h, k));
        }
        let mut pairs = Self::trivial(family).pairs;
        close_in_place(family, &mut pairs, ids);
        Ok(Self {
            family: family.clone(),
            pairs,
        })
    }

    /// Wraps an explicit relation, failing unless it is already closed.
    pub fn from_bits(family: &Arc<Family>, pairs: FixedBitSet) -> Result<Self, TransferError> {
        if pairs.len() != family.pair_count() {
            return Err(TransferError::NotClosed(format!(
                "expected {} pair slots, found {}",
                family.pair_count(),
                pairs.len()
            )));
        }
        if let Some(why) = closure_defect(family, &pairs) {
            return Err(TransferError::NotClosed(why));
        }
        Ok(Self {
            family: family.clone(),
            pairs,
        })
    }

    pub(crate) fn from_bits_unchecked(family: &Arc<Family>, pairs: FixedBitSet) -> Self {
        debug_assert!(closure_defect(family, &pairs).is_none());
        Self {
            family: family.clone(),
            pairs,
        }
    }

    pub fn family(&self) -> &Arc<Family> {
        &self.family
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.pairs
    }

    /// Number of admissible pairs, reflexive ones included.
    pub fn len(&self) -> usize {
        self.pairs.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn non_reflexive_len(&self) -> usize {
        self.len() - self.family.len()
    }

    pub fn contains(&self, h: usize, k: usize) -> bool {
        self.pairs.contains(self.family.pair_id(h, k))
    }

    /// Membership for a pair in an arbitrary group isomorphic to a registry
    /// group.
    pub fn contains_subgroup(&self, h: &Group, k: &Subgroup) -> Result<bool, TransferError> {
        let (h, k) = self.family.locate(h, k)?;
        Ok(self.contains(h, k))
    }

    /// Admissible pairs in registry order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.ones().map(|id| self.family.pair(id))
    }

    pub fn non_reflexive_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs()
            .filter(|&(h, k)| k + 1 != self.family.subgroups(h).len())
    }

    fn check_family(&self, other: &Self) -> Result<(), TransferError> {
        if same_family(&self.family, &other.family) {
            Ok(())
        } else {
            Err(TransferError::FamilyMismatch {
                left: self.family.spec().to_string(),
                right: other.family.spec().to_string(),
            })
        }
    }

    pub fn meet(&self, other: &Self) -> Result<Self, TransferError> {
        self.check_family(other)?;
        let mut pairs = self.pairs.clone();
        pairs.intersect_with(&other.pairs);
        Ok(Self::from_bits_unchecked(&self.family, pairs))
    }

    pub fn join(&self, other: &Self) -> Result<Self, TransferError> {
        self.check_family(other)?;
        Ok(self.join_unchecked(other))
    }

    /// Join without the family check; both sides must share a family.
    pub(crate) fn join_unchecked(&self, other: &Self) -> Self {
        let mut pairs = self.pairs.clone();
        let fresh: Vec<usize> = other.pairs.difference(&self.pairs).collect();
        if fresh.is_empty() {
            return self.clone();
        }
        pairs.union_with(&other.pairs);
        close_in_place(&self.family, &mut pairs, fresh);
        Self {
            family: self.family.clone(),
            pairs,
        }
    }

    pub fn leq(&self, other: &Self) -> Result<bool, TransferError> {
        self.check_family(other)?;
        Ok(self.pairs.is_subset(&other.pairs))
    }

    pub fn equals(&self, other: &Self) -> Result<bool, TransferError> {
        self.check_family(other)?;
        Ok(self.pairs == other.pairs)
    }

    /// Re-applies every closure rule to every pair; `None` when closed.
    pub fn closure_defect(&self) -> Option<String> {
        closure_defect(&self.family, &self.pairs)
    }

    /// Human-readable form of one pair, in the `H : generators` syntax.
    pub fn describe_pair(&self, h: usize, k: usize) -> String {
        describe_pair(&self.family, h, k)
    }

    pub fn to_json_value(&self) -> TransferJson {
        let pairs = self
            .pairs()
            .map(|(h, k)| PairJson {
                group: self.family.group(h).to_string(),
                subgroup: self.family.subgroups(h)[k].members().to_vec(),
            })
            .collect();
        TransferJson {
            family: self.family.spec().to_string(),
            pairs,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data serializes")
    }

    /// Reads a system, building its family from the embedded literal.
    pub fn from_json(text: &str) -> Result<Self, TransferError> {
        let value = parse_json(text)?;
        let spec = FamilySpec::parse(&value.family).map_err(FamilyError::from)?;
        let family = Arc::new(spec.build()?);
        Self::from_json_value(&value, &family)
    }

    /// Reads a system that must live on `family`.
    pub fn from_json_in(text: &str, family: &Arc<Family>) -> Result<Self, TransferError> {
        Self::from_json_value(&parse_json(text)?, family)
    }

    pub fn from_json_value(value: &TransferJson, family: &Arc<Family>) -> Result<Self, TransferError> {
        let spec = FamilySpec::parse(&value.family).map_err(FamilyError::from)?;
        let groups = spec.registry(family.limits())?;
        if groups != family.groups() {
            return Err(TransferError::FamilyMismatch {
                left: value.family.clone(),
                right: family.spec().to_string(),
            });
        }
        let mut pairs = FixedBitSet::with_capacity(family.pair_count());
        for p in &value.pairs {
            let literal = GroupLiteral::parse(&p.group).map_err(FamilyError::from)?;
            let group = literal.to_group().map_err(FamilyError::from)?;
            let h = family
                .registry_index(&group)
                .ok_or_else(|| TransferError::Json(format!("{} is not a registry group", p.group)))?;
            let mut members = ElementSet::default();
            for &x in &p.subgroup {
                if x >= group.order() {
                    return Err(TransferError::Json(format!("element {x} out of range in {}", p.group)));
                }
                members.insert(x);
            }
            let k = family.subgroup_index(h, members).ok_or_else(|| {
                TransferError::Json(format!("{:?} is not a subgroup of {}", p.subgroup, p.group))
            })?;
            pairs.insert(family.pair_id(h, k));
        }
        Self::from_bits(family, pairs)
    }
}

/// Serialized form: the family literal and every admissible pair, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferJson {
    pub family: String,
    pub pairs: Vec<PairJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    #[serde(rename = "H")]
    pub group: String,
    #[serde(rename = "K")]
    pub subgroup: Vec<usize>,
}

fn parse_json(text: &str) -> Result<TransferJson, TransferError> {
    serde_json::from_str(text).map_err(|e| TransferError::Json(e.to_string()))
}

pub(crate) fn same_family(a: &Arc<Family>, b: &Arc<Family>) -> bool {
    Arc::ptr_eq(a, b) || a.groups() == b.groups()
}

pub(crate) fn describe_pair(family: &Family, h: usize, k: usize) -> String {
    let group = family.group(h);
    let sub = &family.subgroups(h)[k];
    let elems: Vec<String> = if sub.is_trivial() {
        vec!["e".to_string()]
    } else {
        sub.members().iter().map(|x| group.element_name(x)).collect()
    };
    format!("{group} : {}", elems.join(","))
}

/// Worklist fixpoint of the pullback and transitivity rules; `pending` are
/// pair ids whose consequences have not been propagated yet. Ids in
/// `pending` may or may not already be set.
pub(crate) fn close_in_place(family: &Family, pairs: &mut FixedBitSet, pending: Vec<usize>) {
    let mut work = Vec::with_capacity(pending.len());
    for id in pending {
        pairs.insert(id);
        work.push(id);
    }
    let add = |pairs: &mut FixedBitSet, work: &mut Vec<usize>, id: usize| {
        if !pairs.put(id) {
            work.push(id);
        }
    };
    while let Some(id) = work.pop() {
        let (h, k) = family.pair(id);
        for g in 0..family.len() {
            for &l in family.pulled(g, h, k) {
                add(pairs, &mut work, family.pair_id(g, l as usize));
            }
        }
        // (K, H) with (L', R(K)) gives (psi(L'), H)
        let t = family.transport(h, k);
        for inner in family.pair_range(t.registry) {
            if pairs.contains(inner) {
                let (_, l) = family.pair(inner);
                add(pairs, &mut work, family.pair_id(h, t.push[l] as usize));
            }
        }
        // the same rule with this pair in the inner position
        for &(h2, k2) in family.users(h) {
            if pairs.contains(family.pair_id(h2, k2)) {
                let push = &family.transport(h2, k2).push;
                add(pairs, &mut work, family.pair_id(h2, push[k] as usize));
            }
        }
    }
}

/// First violated rule, if any.
pub(crate) fn closure_defect(family: &Family, pairs: &FixedBitSet) -> Option<String> {
    for h in 0..family.len() {
        let whole = family.subgroups(h).len() - 1;
        if !pairs.contains(family.pair_id(h, whole)) {
            return Some(format!("missing reflexive pair for {}", family.group(h)));
        }
    }
    for id in pairs.ones() {
        let (h, k) = family.pair(id);
        for g in 0..family.len() {
            for &pulled in family.pulled(g, h, k) {
                let pulled = pulled as usize;
                if !pairs.contains(family.pair_id(g, pulled)) {
                    return Some(format!(
                        "{} admissible but its pullback {} is not",
                        describe_pair(family, h, k),
                        describe_pair(family, g, pulled)
                    ));
                }
            }
        }
        let t = family.transport(h, k);
        for inner in family.pair_range(t.registry) {
            if pairs.contains(inner) {
                let (r, l) = family.pair(inner);
                let pushed = t.push[l] as usize;
                if !pairs.contains(family.pair_id(h, pushed)) {
                    return Some(format!(
                        "{} and {} admissible but {} is not",
                        describe_pair(family, h, k),
                        describe_pair(family, r, l),
                        describe_pair(family, h, pushed)
                    ));
                }
            }
        }
    }
    None
}

/// Whether an arbitrary relation is a transfer system on `family`.
pub fn is_transfer_system(family: &Family, pairs: &FixedBitSet) -> bool {
    pairs.len() == family.pair_count() && closure_defect(family, pairs).is_none()
}

impl PartialEq for TransferSystem {
    fn eq(&self, other: &Self) -> bool {
        same_family(&self.family, &other.family) && self.pairs == other.pairs
    }
}

impl Eq for TransferSystem {}

impl std::hash::Hash for TransferSystem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.pairs.hash(state);
    }
}

impl PartialOrd for TransferSystem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order compatible with inclusion: by size, then by the bits.
impl Ord for TransferSystem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.pairs.ones().cmp(other.pairs.ones()))
    }
}

impl fmt::Debug for TransferSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .non_reflexive_pairs()
            .map(|(h, k)| self.describe_pair(h, k))
            .collect();
        f.debug_struct("TransferSystem")
            .field("family", &self.family.spec().to_string())
            .field("non_reflexive", &pairs)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyc_p_truncation, sigma3_family};

    fn named(f: &Family, h: u64, k: u64) -> (usize, usize) {
        let hi = f.cyclic_index(h).unwrap();
        let ki = f.subgroups(hi).iter().position(|s| s.order() as u64 == k).unwrap();
        (hi, ki)
    }

    #[test]
    fn trivial_and_all() {
        let f = Arc::new(cyc_p_truncation(2, 3).unwrap());
        let t = TransferSystem::trivial(&f);
        assert_eq!(t.len(), 4);
        let (h, k) = named(&f, 4, 2);
        assert!(!t.contains(h, k));
        assert_eq!(TransferSystem::all(&f).len(), 10);
        assert!(TransferSystem::all(&f).closure_defect().is_none());
        assert!(t.closure_defect().is_none());
        let s = Arc::new(sigma3_family().unwrap());
        assert_eq!(TransferSystem::trivial(&s).len(), 4);
        assert_eq!(TransferSystem::all(&s).len(), 1 + 2 + 2 + 6);
    }

    #[test]
    fn close_examples() {
        let f = Arc::new(cyc_p_truncation(2, 3).unwrap());
        assert_eq!(TransferSystem::close(&f, []).unwrap(), TransferSystem::trivial(&f));
        let t = TransferSystem::close(&f, [named(&f, 4, 2)]).unwrap();
        let mut got: Vec<(u64, u64)> = t
            .non_reflexive_pairs()
            .map(|(h, k)| (f.group(h).order() as u64, f.subgroups(h)[k].order() as u64))
            .collect();
        got.sort();
        assert_eq!(got, [(4, 2), (8, 2), (8, 4)]);
        let f2 = Arc::new(cyc_p_truncation(2, 2).unwrap());
        let t = TransferSystem::close(&f2, [named(&f2, 2, 1)]).unwrap();
        assert_eq!(t, TransferSystem::all(&f2));
        assert!(TransferSystem::close(&f, [(0, 5)]).is_err());
    }

    #[test]
    fn lattice_and_errors() {
        let f = Arc::new(cyc_p_truncation(2, 3).unwrap());
        let a = TransferSystem::close(&f, [named(&f, 4, 2)]).unwrap();
        let b = TransferSystem::close(&f, [named(&f, 8, 4)]).unwrap();
        assert_eq!(a.meet(&b).unwrap(), b);
        assert_eq!(a.join(&b).unwrap(), a);
        let other = Arc::new(cyc_p_truncation(2, 2).unwrap());
        let c = TransferSystem::all(&other);
        assert!(matches!(a.meet(&c), Err(TransferError::FamilyMismatch { .. })));
        assert!(matches!(a.leq(&c), Err(TransferError::FamilyMismatch { .. })));
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let f = Arc::new(cyc_p_truncation(2, 3).unwrap());
        let t = TransferSystem::close(&f, [named(&f, 4, 2)]).unwrap();
        let text = t.to_json();
        assert_eq!(TransferSystem::from_json(&text).unwrap(), t);
        assert_eq!(TransferSystem::from_json_in(&text, &f).unwrap(), t);
        assert_eq!(t.to_json(), text);
        let unclosed = r#"{"family":"cycp:p=2,maxexp=3","pairs":[{"H":"C1","K":[0]},{"H":"C2","K":[0,1]},{"H":"C4","K":[0,1,2,3]},{"H":"C8","K":[0,1,2,3,4,5,6,7]},{"H":"C4","K":[0,2]}]}"#;
        assert!(matches!(TransferSystem::from_json(unclosed), Err(TransferError::NotClosed(_))));
        let other = Arc::new(cyc_p_truncation(2, 2).unwrap());
        assert!(matches!(TransferSystem::from_json_in(&text, &other), Err(TransferError::FamilyMismatch { .. })));
        assert!(TransferSystem::from_json("{}").is_err());
        assert!(TransferSystem::from_json(r#"{"family":"cycp:p=2,maxexp=1","pairs":[{"H":"C2","K":[1]}]}"#).is_err());
    }
}
