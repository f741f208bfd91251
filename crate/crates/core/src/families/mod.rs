//! Finite truncations of families of groups.
//!
//! A [`Family`] is a registry holding one representative per isomorphism
//! class, closed under subgroups up to isomorphism, with everything the
//! closure engine queries precomputed at construction:
//!
//! - the subgroup list of every registry group;
//! - the complete hom catalogue for every ordered pair of registry groups;
//! - for every pair, the distinct *pullback tables* (target subgroup index to
//!   source subgroup index) realised by the catalogue;
//! - for every subgroup `K <= H`, a fixed embedding of its registry
//!   representative onto `K` and the induced map on subgroups ("transport").
//!
//! Registries are sorted by order and then by shape, so a selection of
//! groups from a larger family has the same indices for subgroups as a
//! family built directly from that selection.

mod literal;

use std::collections::HashMap;
use std::fmt;

pub use literal::FamilySpec;

use crate::arith;
use crate::groups::{self, find_embedding, ElementSet, FiniteGroup, Group, GroupError, Homomorphism, Limits, Subgroup};
use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("registry lists {0} twice")]
    Duplicate(String),
    #[error("not closed under subgroups: {group} has a subgroup isomorphic to {subgroup}, which is not in the registry")]
    NotSubgroupClosed { group: String, subgroup: String },
    #[error("{0} is not in the family")]
    NotInFamily(String),
    #[error("{sub} is not a sub-truncation of {sup}")]
    NotSubTruncation { sub: String, sup: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A subgroup's registry representative and the fixed embedding onto it.
#[derive(Debug, Clone)]
pub struct Transport {
    /// Registry index of the group isomorphic to the subgroup.
    pub registry: usize,
    /// Injective map from the representative onto the subgroup.
    pub embedding: Homomorphism,
    /// Subgroup index in the representative -> subgroup index in the parent.
    pub push: Box<[u16]>,
}

pub struct Family {
    spec: FamilySpec,
    limits: Limits,
    groups: Vec<Group>,
    subgroups: Vec<Vec<Subgroup>>,
    lookup: Vec<HashMap<ElementSet, usize>>,
    homs: Vec<Vec<Vec<Homomorphism>>>,
    pullbacks: Vec<Vec<Vec<Box<[u16]>>>>,
    /// `[g][h][k]`: the distinct subgroups of `g` pulled back from `k <= h`.
    pulled: Vec<Vec<Vec<Box<[u16]>>>>,
    transports: Vec<Vec<Transport>>,
    offsets: Vec<usize>,
    pair_owner: Vec<(u16, u16)>,
    users: Vec<Vec<(usize, usize)>>,
}

impl FamilySpec {
    /// The registry groups this spec denotes, in registry order.
    pub fn registry(&self, limits: &Limits) -> Result<Vec<Group>, FamilyError> {
        let bound = limits.max_order() as u64;
        let check_prime = |p: u64| {
            if arith::is_prime(p) {
                Ok(())
            } else {
                Err(FamilyError::NotPrime(p))
            }
        };
        let check_order = |n: u64| {
            if n == 0 {
                Err(FamilyError::InvalidParameter("maxorder must be at least 1".into()))
            } else if n > bound {
                Err(FamilyError::Group(GroupError::SizeBound {
                    order: n as usize,
                    bound: limits.max_order(),
                }))
            } else {
                Ok(())
            }
        };
        let mut groups = match self {
            FamilySpec::CycP { p, max_exp } => {
                check_prime(*p)?;
                let top = p
                    .checked_pow(*max_exp)
                    .ok_or(FamilyError::Group(GroupError::SizeBound {
                        order: usize::MAX,
                        bound: limits.max_order(),
                    }))?;
                check_order(top)?;
                (0..=*max_exp).map(|e| Group::cyclic(p.pow(e))).collect::<Result<_, _>>()?
            }
            FamilySpec::AbP { p, max_order } => {
                check_prime(*p)?;
                check_order(*max_order)?;
                let mut out = Vec::new();
                let mut e = 0;
                while p.pow(e) <= *max_order {
                    for part in arith::partitions(e) {
                        let orders: Vec<u64> = part.iter().map(|&k| p.pow(k)).collect();
                        out.push(Group::abelian(groups::make_fin_ab(&orders)?)?);
                    }
                    e += 1;
                }
                out
            }
            FamilySpec::Cyc { max_order } => {
                check_order(*max_order)?;
                (1..=*max_order).map(Group::cyclic).collect::<Result<_, _>>()?
            }
            FamilySpec::Ab { max_order } => {
                check_order(*max_order)?;
                let mut out = Vec::new();
                for n in 1..=*max_order {
                    out.extend(abelian_groups_of_order(n)?);
                }
                out
            }
            FamilySpec::Sigma3 => vec![
                Group::cyclic(1)?,
                Group::cyclic(2)?,
                Group::cyclic(3)?,
                Group::symmetric3(),
            ],
            FamilySpec::Custom(groups) => {
                for g in groups {
                    limits.check(g.order())?;
                }
                groups.clone()
            }
        };
        groups.sort();
        if let Some(w) = groups.windows(2).find(|w| w[0] == w[1]) {
            return Err(FamilyError::Duplicate(w[0].to_string()));
        }
        if groups.is_empty() {
            return Err(FamilyError::InvalidParameter("a family needs at least one group".into()));
        }
        Ok(groups)
    }

    pub fn build(&self) -> Result<Family, FamilyError> {
        self.build_with(&Limits::default())
    }

    pub fn build_with(&self, limits: &Limits) -> Result<Family, FamilyError> {
        Family::from_groups(self.clone(), self.registry(limits)?, *limits)
    }
}

/// All abelian groups of order `n` up to isomorphism.
fn abelian_groups_of_order(n: u64) -> Result<Vec<Group>, FamilyError> {
    let mut choices: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in arith::factorize(n) {
        let mut next = Vec::new();
        for prefix in &choices {
            for part in arith::partitions(e) {
                let mut orders = prefix.clone();
                orders.extend(part.iter().map(|&k| p.pow(k)));
                next.push(orders);
            }
        }
        choices = next;
    }
    choices
        .iter()
        .map(|orders| Ok(Group::abelian(groups::make_fin_ab(orders)?)?))
        .collect()
}

/// Registry representative of an arbitrary subgroup of `h`.
fn subgroup_type(h: &Group, k: ElementSet) -> Result<Group, GroupError> {
    let elems = k.to_vec();
    let local: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for &a in &elems {
        for &b in &elems {
            table.push(local[&h.op(a, b)] as u8);
        }
    }
    let t = FiniteGroup::from_table(n, table)?;
    groups::canonical_form_of(&t)
}

impl Family {
    pub fn from_groups(spec: FamilySpec, mut groups: Vec<Group>, limits: Limits) -> Result<Self, FamilyError> {
        groups.sort();
        if let Some(w) = groups.windows(2).find(|w| w[0] == w[1]) {
            return Err(FamilyError::Duplicate(w[0].to_string()));
        }
        let subgroups: Vec<Vec<Subgroup>> = groups
            .iter()
            .map(|g| groups::subgroups(g, &limits))
            .collect::<Result<_, _>>()?;
        let lookup = index_subgroups(&subgroups);

        let mut transports = Vec::with_capacity(groups.len());
        for (hi, h) in groups.iter().enumerate() {
            let mut row = Vec::with_capacity(subgroups[hi].len());
            for k in &subgroups[hi] {
                let rep = subgroup_type(h, k.members())?;
                let registry = groups.iter().position(|g| *g == rep).ok_or_else(|| {
                    FamilyError::NotSubgroupClosed {
                        group: h.to_string(),
                        subgroup: rep.to_string(),
                    }
                })?;
                let embedding = find_embedding(&groups[registry], h, k.members())
                    .expect("isomorphic subgroup admits an embedding");
                let push = subgroups[registry]
                    .iter()
                    .map(|l| lookup[hi][&embedding.image(l.members())] as u16)
                    .collect();
                row.push(Transport {
                    registry,
                    embedding,
                    push,
                });
            }
            transports.push(row);
        }

        let mut homs = Vec::with_capacity(groups.len());
        let mut pullbacks = Vec::with_capacity(groups.len());
        for (gi, g) in groups.iter().enumerate() {
            let mut hom_row = Vec::with_capacity(groups.len());
            let mut pull_row = Vec::with_capacity(groups.len());
            for (hi, h) in groups.iter().enumerate() {
                let catalogue = groups::homs(g, h, &limits)?;
                pull_row.push(pullback_tables(&catalogue, &subgroups[hi], &lookup[gi]));
                hom_row.push(catalogue);
            }
            homs.push(hom_row);
            pullbacks.push(pull_row);
        }

        Ok(Self::assemble(spec, limits, groups, subgroups, lookup, homs, pullbacks, transports))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        spec: FamilySpec,
        limits: Limits,
        groups: Vec<Group>,
        subgroups: Vec<Vec<Subgroup>>,
        lookup: Vec<HashMap<ElementSet, usize>>,
        homs: Vec<Vec<Vec<Homomorphism>>>,
        pullbacks: Vec<Vec<Vec<Box<[u16]>>>>,
        transports: Vec<Vec<Transport>>,
    ) -> Self {
        let mut offsets = Vec::with_capacity(groups.len() + 1);
        let mut pair_owner = Vec::new();
        offsets.push(0);
        for (h, subs) in subgroups.iter().enumerate() {
            for k in 0..subs.len() {
                pair_owner.push((h as u16, k as u16));
            }
            offsets.push(pair_owner.len());
        }
        let mut users = vec![Vec::new(); groups.len()];
        for (h, row) in transports.iter().enumerate() {
            for (k, t) in row.iter().enumerate() {
                users[t.registry].push((h, k));
            }
        }
        let pulled = pullbacks
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(h, tables)| {
                        (0..subgroups[h].len())
                            .map(|k| {
                                let mut v: Vec<u16> = tables.iter().map(|t| t[k]).collect();
                                v.sort_unstable();
                                v.dedup();
                                v.into_boxed_slice()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Family {
            spec,
            limits,
            groups,
            subgroups,
            lookup,
            homs,
            pullbacks,
            pulled,
            transports,
            offsets,
            pair_owner,
            users,
        }
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn group(&self, i: usize) -> &Group {
        &self.groups[i]
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn subgroups(&self, h: usize) -> &[Subgroup] {
        &self.subgroups[h]
    }

    pub fn subgroup_index(&self, h: usize, members: ElementSet) -> Option<usize> {
        self.lookup[h].get(&members).copied()
    }

    /// The complete list of homomorphisms `group(g) -> group(h)`.
    pub fn homs(&self, g: usize, h: usize) -> &[Homomorphism] {
        &self.homs[g][h]
    }

    /// Distinct maps `subgroup of h -> preimage subgroup of g` over the
    /// catalogue `homs(g, h)`.
    pub fn pullbacks(&self, g: usize, h: usize) -> &[Box<[u16]>] {
        &self.pullbacks[g][h]
    }

    /// Distinct pullbacks of subgroup `k` of `h` along the homs `g -> h`.
    pub fn pulled(&self, g: usize, h: usize, k: usize) -> &[u16] {
        &self.pulled[g][h][k]
    }

    pub fn transport(&self, h: usize, k: usize) -> &Transport {
        &self.transports[h][k]
    }

    /// All `(h, k)` whose subgroup `k` of `h` is represented by registry `r`.
    pub fn users(&self, r: usize) -> &[(usize, usize)] {
        &self.users[r]
    }

    /// Size of the universe of subgroup pairs `(K <= H)`, `H` in the registry.
    pub fn pair_count(&self) -> usize {
        self.pair_owner.len()
    }

    #[inline]
    pub fn pair_id(&self, h: usize, k: usize) -> usize {
        self.offsets[h] + k
    }

    #[inline]
    pub fn pair(&self, id: usize) -> (usize, usize) {
        let (h, k) = self.pair_owner[id];
        (h as usize, k as usize)
    }

    pub fn pair_range(&self, h: usize) -> std::ops::Range<usize> {
        self.offsets[h]..self.offsets[h + 1]
    }

    pub fn registry_index(&self, g: &Group) -> Option<usize> {
        self.groups.binary_search(g).ok()
    }

    /// Registry index of `C_n`.
    pub fn cyclic_index(&self, n: u64) -> Option<usize> {
        Group::cyclic(n).ok().and_then(|c| self.registry_index(&c))
    }

    /// Moves an arbitrary subgroup pair `K <= H` onto the registry
    /// representative of `H`, returning `(registry index, subgroup index)`.
    pub fn locate(&self, h: &Group, k: &Subgroup) -> Result<(usize, usize), FamilyError> {
        if k.parent_order() != h.order() || !h.is_subgroup(k.members()) {
            return Err(FamilyError::Group(GroupError::NotASubgroup));
        }
        let rep = groups::canonical_form_of(h.table())?;
        let r = self
            .registry_index(&rep)
            .ok_or_else(|| FamilyError::NotInFamily(h.to_string()))?;
        let iso = if *h == self.groups[r] {
            Homomorphism::identity(h)
        } else {
            groups::find_isomorphism(h, &self.groups[r]).expect("same canonical form")
        };
        let image = iso.image(k.members());
        Ok((r, self.lookup[r][&image]))
    }

    /// Registry indices of `self`'s groups inside `other`, when every group of
    /// `self` is in `other`.
    pub fn embedding_into(&self, other: &Family) -> Option<Vec<usize>> {
        self.groups.iter().map(|g| other.registry_index(g)).collect()
    }

    pub fn is_sub_truncation_of(&self, other: &Family) -> bool {
        self.embedding_into(other).is_some()
    }

    /// The distinct primes dividing some registry order.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .groups
            .iter()
            .flat_map(|g| arith::factorize(g.order() as u64).into_iter().map(|(p, _)| p))
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    pub fn is_abelian(&self) -> bool {
        self.groups.iter().all(Group::is_abelian)
    }

    /// The truncation on the registry groups selected by `keep`, reusing this
    /// family's catalogue. Fails if the selection is not subgroup-closed.
    pub fn sub_truncation(&self, keep: impl Fn(&Group) -> bool) -> Result<Family, FamilyError> {
        let selected: Vec<usize> = (0..self.len()).filter(|&i| keep(&self.groups[i])).collect();
        if selected.is_empty() {
            return Err(FamilyError::InvalidParameter("selection is empty".into()));
        }
        let spec = FamilySpec::Custom(selected.iter().map(|&i| self.groups[i].clone()).collect());
        self.select(spec, &selected)
    }

    /// Like [`Self::sub_truncation`], but names the result `spec` after
    /// checking that `spec` denotes exactly the selected registry.
    pub fn sub_truncation_as(&self, spec: FamilySpec) -> Result<Family, FamilyError> {
        let wanted = spec.registry(&self.limits)?;
        let selected: Vec<usize> = wanted
            .iter()
            .map(|g| {
                self.registry_index(g).ok_or_else(|| FamilyError::NotSubTruncation {
                    sub: spec.to_string(),
                    sup: self.spec.to_string(),
                })
            })
            .collect::<Result<_, _>>()?;
        self.select(spec, &selected)
    }

    fn select(&self, spec: FamilySpec, selected: &[usize]) -> Result<Family, FamilyError> {
        let new_index: HashMap<usize, usize> = selected.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let groups: Vec<Group> = selected.iter().map(|&i| self.groups[i].clone()).collect();
        let subgroups: Vec<Vec<Subgroup>> = selected.iter().map(|&i| self.subgroups[i].clone()).collect();
        let lookup: Vec<HashMap<ElementSet, usize>> = selected.iter().map(|&i| self.lookup[i].clone()).collect();
        let homs = selected
            .iter()
            .map(|&g| selected.iter().map(|&h| self.homs[g][h].clone()).collect())
            .collect();
        let pullbacks = selected
            .iter()
            .map(|&g| selected.iter().map(|&h| self.pullbacks[g][h].clone()).collect())
            .collect();
        let mut transports = Vec::with_capacity(selected.len());
        for &h in selected {
            let row = self.transports[h]
                .iter()
                .map(|t| {
                    let registry = *new_index.get(&t.registry).ok_or_else(|| FamilyError::NotSubgroupClosed {
                        group: self.groups[h].to_string(),
                        subgroup: self.groups[t.registry].to_string(),
                    })?;
                    Ok(Transport {
                        registry,
                        embedding: t.embedding.clone(),
                        push: t.push.clone(),
                    })
                })
                .collect::<Result<Vec<_>, FamilyError>>()?;
            transports.push(row);
        }
        Ok(Self::assemble(spec, self.limits, groups, subgroups, lookup, homs, pullbacks, transports))
    }

    pub fn total_homs(&self) -> usize {
        self.homs.iter().flatten().map(Vec::len).sum()
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family")
            .field("spec", &self.spec.to_string())
            .field("groups", &self.groups)
            .field("pairs", &self.pair_count())
            .finish()
    }
}

fn index_subgroups(subgroups: &[Vec<Subgroup>]) -> Vec<HashMap<ElementSet, usize>> {
    subgroups
        .iter()
        .map(|subs| subs.iter().enumerate().map(|(i, s)| (s.members(), i)).collect())
        .collect()
}

fn pullback_tables(
    catalogue: &[Homomorphism],
    target_subgroups: &[Subgroup],
    source_lookup: &HashMap<ElementSet, usize>,
) -> Vec<Box<[u16]>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for theta in catalogue {
        let table: Box<[u16]> = target_subgroups
            .iter()
            .map(|k| source_lookup[&theta.preimage_set(k.members())] as u16)
            .collect();
        if seen.insert(table.clone()) {
            out.push(table);
        }
    }
    out
}

/// `Cyc_p` truncated at `C_{p^max_exp}`.
pub fn cyc_p_truncation(p: u64, max_exp: u32) -> Result<Family, FamilyError> {
    FamilySpec::CycP { p, max_exp }.build()
}

/// Abelian p-groups of order at most `max_order`.
pub fn ab_p_truncation(p: u64, max_order: u64) -> Result<Family, FamilyError> {
    FamilySpec::AbP { p, max_order }.build()
}

pub fn cyc_truncation(max_order: u64) -> Result<Family, FamilyError> {
    FamilySpec::Cyc { max_order }.build()
}

pub fn ab_truncation(max_order: u64) -> Result<Family, FamilyError> {
    FamilySpec::Ab { max_order }.build()
}

/// `{C1, C2, C3, Σ₃}`.
pub fn sigma3_family() -> Result<Family, FamilyError> {
    FamilySpec::Sigma3.build()
}

impl Family {
    /// The `{C1, C2, C3}` sub-truncation of the Σ₃ family.
    pub fn sigma3_abelian_part(&self) -> Result<Family, FamilyError> {
        self.sub_truncation(Group::is_abelian)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(f: &Family) -> Vec<String> {
        f.groups().iter().map(Group::to_string).collect()
    }

    #[test]
    fn cyc_p_examples() {
        assert_eq!(names(&cyc_p_truncation(2, 0).unwrap()), ["C1"]);
        assert_eq!(names(&cyc_p_truncation(2, 3).unwrap()), ["C1", "C2", "C4", "C8"]);
        let f = cyc_p_truncation(3, 2).unwrap();
        assert_eq!(names(&f), ["C1", "C3", "C9"]);
        assert_eq!(f.homs(2, 1).len(), 3);
        assert!(matches!(cyc_p_truncation(4, 2), Err(FamilyError::NotPrime(4))));
        assert!(matches!(cyc_p_truncation(2, 7), Err(FamilyError::Group(GroupError::SizeBound { .. }))));
    }

    #[test]
    fn ab_p_examples() {
        assert_eq!(names(&ab_p_truncation(2, 2).unwrap()), ["C1", "C2"]);
        assert_eq!(
            names(&ab_p_truncation(2, 8).unwrap()),
            ["C1", "C2", "C2xC2", "C4", "C2xC2xC2", "C2xC4", "C8"]
        );
        assert_eq!(names(&ab_p_truncation(3, 9).unwrap()), ["C1", "C3", "C3xC3", "C9"]);
    }

    #[test]
    fn cyc_and_ab_examples() {
        assert_eq!(cyc_truncation(1).unwrap().len(), 1);
        assert_eq!(cyc_truncation(6).unwrap().len(), 6);
        assert_eq!(cyc_truncation(12).unwrap().len(), 12);
        assert_eq!(names(&ab_truncation(4).unwrap()), ["C1", "C2", "C3", "C2xC2", "C4"]);
        assert_eq!(ab_truncation(1).unwrap().len(), 1);
    }

    #[test]
    fn sigma3_examples() {
        let f = sigma3_family().unwrap();
        assert_eq!(names(&f), ["C1", "C2", "C3", "S3"]);
        let s3 = f.registry_index(&Group::symmetric3()).unwrap();
        let c2 = f.cyclic_index(2).unwrap();
        let c3 = f.cyclic_index(3).unwrap();
        assert_eq!(f.homs(s3, c2).len(), 2);
        assert_eq!(f.homs(c3, s3).len(), 3);
        let parts = f.sigma3_abelian_part().unwrap();
        assert_eq!(names(&parts), ["C1", "C2", "C3"]);
    }

    #[test]
    fn sub_truncations() {
        let ab12 = ab_truncation(12).unwrap();
        let two = ab12.sub_truncation(|g| g.is_p_group(2)).unwrap();
        assert_eq!(names(&two), names(&ab_p_truncation(2, 8).unwrap()));
        let same = ab12.sub_truncation(|_| true).unwrap();
        assert_eq!(names(&same), names(&ab12));
        let err = ab12.sub_truncation(|g| g.order() == 4).unwrap_err();
        assert!(matches!(err, FamilyError::NotSubgroupClosed { .. }));
        let named = ab12.sub_truncation_as(FamilySpec::AbP { p: 3, max_order: 12 }).unwrap();
        assert_eq!(names(&named), ["C1", "C3", "C3xC3", "C9"]);
        assert_eq!(named.spec().to_string(), "abp:p=3,maxorder=12");
    }

    #[test]
    fn custom_families_must_be_closed() {
        let spec = FamilySpec::parse("custom:groups=C1+C4").unwrap();
        assert!(matches!(spec.build(), Err(FamilyError::NotSubgroupClosed { .. })));
        let spec = FamilySpec::parse("custom:groups=C1+C2+C2").unwrap();
        assert!(matches!(spec.build(), Err(FamilyError::Duplicate(_))));
        let spec = FamilySpec::parse("custom:groups=C1+C2+C3+S3+C6").unwrap();
        assert_eq!(spec.build().unwrap().len(), 5);
    }

    #[test]
    fn pair_indexing() {
        let f = cyc_p_truncation(2, 3).unwrap();
        assert_eq!(f.pair_count(), 1 + 2 + 3 + 4);
        for id in 0..f.pair_count() {
            let (h, k) = f.pair(id);
            assert_eq!(f.pair_id(h, k), id);
        }
    }

    #[test]
    fn transports_embed_onto_the_subgroup() {
        let f = ab_truncation(12).unwrap();
        for h in 0..f.len() {
            for (k, sub) in f.subgroups(h).iter().enumerate() {
                let t = f.transport(h, k);
                let rep = f.group(t.registry);
                assert!(t.embedding.is_homomorphism(rep, f.group(h)));
                assert!(t.embedding.is_injective());
                assert_eq!(t.embedding.image(rep.all_elements()), sub.members());
                // the whole representative goes to K itself
                assert_eq!(t.push[f.subgroups(t.registry).len() - 1] as usize, k);
            }
        }
    }
}
