use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use super::{Group, GroupError, Limits};

/// A set of element indices of a group of order at most 128.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn singleton(x: usize) -> Self {
        ElementSet(1u128 << x)
    }

    pub fn full(n: usize) -> Self {
        if n >= 128 {
            ElementSet(u128::MAX)
        } else {
            ElementSet((1u128 << n) - 1)
        }
    }

    pub fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        x < 128 && self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u128 << x;
    }

    #[must_use]
    pub fn with(mut self, x: usize) -> Self {
        self.insert(x);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(x)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subgroup, as a set of element indices of a parent of known order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: ElementSet,
    parent_order: usize,
}

impl Subgroup {
    /// Checks closure and the identity before accepting `members`.
    pub fn new(parent: &Group, members: ElementSet) -> Result<Self, GroupError> {
        if !parent.is_subgroup(members) {
            return Err(GroupError::NotASubgroup);
        }
        Ok(Subgroup {
            members,
            parent_order: parent.order(),
        })
    }

    pub(crate) fn new_unchecked(parent_order: usize, members: ElementSet) -> Self {
        Subgroup {
            members,
            parent_order,
        }
    }

    pub fn trivial(parent: &Group) -> Self {
        Self::new_unchecked(parent.order(), ElementSet::singleton(0))
    }

    pub fn whole(parent: &Group) -> Self {
        Self::new_unchecked(parent.order(), parent.all_elements())
    }

    pub fn members(&self) -> ElementSet {
        self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.order()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent_order
    }
}

/// Canonical order: by size, then lexicographically by sorted element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.iter().cmp(other.members.iter()))
            .then_with(|| self.parent_order.cmp(&other.parent_order))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

/// Every subgroup of `g`, without duplicates, in canonical order.
///
/// Grows the list by adjoining one element at a time to known subgroups;
/// every subgroup is reached because it is generated by its own elements.
pub fn subgroups(g: &Group, limits: &Limits) -> Result<Vec<Subgroup>, GroupError> {
    limits.check(g.order())?;
    let trivial = ElementSet::singleton(0);
    let mut seen: HashSet<ElementSet> = HashSet::from([trivial]);
    let mut queue = vec![trivial];
    while let Some(s) = queue.pop() {
        for x in g.elements() {
            if s.contains(x) {
                continue;
            }
            let t = g.generate(s.with(x));
            if seen.insert(t) {
                queue.push(t);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen
        .into_iter()
        .map(|m| Subgroup::new_unchecked(g.order(), m))
        .collect();
    out.sort();
    debug_assert!(out.iter().all(|s| g.order().is_multiple_of(s.order())));
    Ok(out)
}
