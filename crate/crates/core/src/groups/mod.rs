//! Exact finite group arithmetic.
//!
//! Every [`Group`] carries a verified Cayley table (element `0` is the
//! identity) together with a [`Shape`] recording what kind of group it is.
//! Abelian groups are kept in canonical primary decomposition
//! ([`FinAbGroup`]), so two abelian groups are isomorphic exactly when their
//! shapes are equal. Elements are dense indices; sets of elements are
//! [`ElementSet`] bitsets.

mod abelian;
mod hom;
mod literal;
mod quotient;
mod subgroup;
mod table;

use std::fmt;
use std::sync::Arc;

use crate::parse::ParseError;

pub use abelian::{make_fin_ab, FinAbGroup};
pub use hom::{find_embedding, find_isomorphism, homs, isomorphisms, Homomorphism};
pub use literal::{GroupLiteral, LiteralComponent};
pub use quotient::{abelian_type, canonical_form as canonical_form_of, quotient};
pub use subgroup::{subgroups, ElementSet, Subgroup};
pub use table::{symmetric_group_3, FiniteGroup};

/// Largest group order the bitset representation can hold.
pub const HARD_MAX_ORDER: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("cyclic factor orders must be positive")]
    NonPositiveOrder,
    #[error("group of order {order} exceeds the configured size bound {bound}")]
    SizeBound { order: usize, bound: usize },
    #[error("size bound {0} is outside 1..={HARD_MAX_ORDER}")]
    InvalidBound(usize),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup belongs to a group of order {found}, expected order {expected}")]
    MismatchedParent { expected: usize, found: usize },
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("element index {index} is out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("no supported isomorphism type for {0}")]
    UnsupportedType(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Desk-scale size bound applied to subgroup and homomorphism enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    max_order: usize,
}

impl Limits {
    pub const DEFAULT_MAX_ORDER: usize = 64;

    pub fn new(max_order: usize) -> Result<Self, GroupError> {
        if (1..=HARD_MAX_ORDER).contains(&max_order) {
            Ok(Limits { max_order })
        } else {
            Err(GroupError::InvalidBound(max_order))
        }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn check(&self, order: usize) -> Result<(), GroupError> {
        if order > self.max_order {
            Err(GroupError::SizeBound {
                order,
                bound: self.max_order,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: Self::DEFAULT_MAX_ORDER,
        }
    }
}

/// What a group is, independent of its table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Abelian(FinAbGroup),
    Symmetric3,
    /// A user-supplied table with a display name. Such groups cannot be
    /// members of a family because their isomorphism type is not recognised.
    Table(String),
}

#[derive(Clone)]
pub struct Group {
    shape: Shape,
    table: Arc<FiniteGroup>,
}

impl Group {
    pub fn abelian(a: FinAbGroup) -> Result<Self, GroupError> {
        if a.order() > HARD_MAX_ORDER {
            return Err(GroupError::SizeBound {
                order: a.order(),
                bound: HARD_MAX_ORDER,
            });
        }
        let table = a.cayley_table();
        Ok(Group {
            shape: Shape::Abelian(a),
            table: Arc::new(table),
        })
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        Self::abelian(make_fin_ab(&[n])?)
    }

    pub fn symmetric3() -> Self {
        Group {
            shape: Shape::Symmetric3,
            table: Arc::new(symmetric_group_3()),
        }
    }

    /// Wraps an arbitrary verified table under a display name.
    pub fn from_table(name: impl Into<String>, table: FiniteGroup) -> Self {
        Group {
            shape: Shape::Table(name.into()),
            table: Arc::new(table),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn as_abelian(&self) -> Option<&FinAbGroup> {
        match &self.shape {
            Shape::Abelian(a) => Some(a),
            _ => None,
        }
    }

    pub fn table(&self) -> &FiniteGroup {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.size()
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table.op(a, b)
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.table.inverse(a)
    }

    #[inline]
    pub fn element_order(&self, x: usize) -> u32 {
        self.table.element_order(x)
    }

    pub fn is_abelian(&self) -> bool {
        match self.shape {
            Shape::Abelian(_) => true,
            _ => self.table.is_commutative(),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        match &self.shape {
            Shape::Abelian(a) => a.is_cyclic(),
            _ => (0..self.order()).any(|x| self.element_order(x) as usize == self.order()),
        }
    }

    /// True when the order is a power of `p` (the trivial group included).
    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order() as u64;
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn all_elements(&self) -> ElementSet {
        ElementSet::full(self.order())
    }

    /// A generating set. For abelian groups these are the unit vectors of the
    /// primary decomposition; otherwise they are chosen greedily by index.
    pub fn generators(&self) -> Vec<usize> {
        match &self.shape {
            Shape::Abelian(a) => a.unit_vectors(),
            _ => {
                let mut gens = Vec::new();
                let mut span = ElementSet::singleton(0);
                for x in self.elements() {
                    if !span.contains(x) {
                        gens.push(x);
                        span = self.generate(span.with(x));
                    }
                }
                gens
            }
        }
    }

    /// The subgroup generated by `seeds`.
    pub fn generate(&self, seeds: ElementSet) -> ElementSet {
        let gens: Vec<usize> = seeds.iter().collect();
        let mut span = ElementSet::singleton(0);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.op(x, g);
                if !span.contains(y) {
                    span.insert(y);
                    frontier.push(y);
                }
            }
        }
        span
    }

    pub fn is_subgroup(&self, set: ElementSet) -> bool {
        if !set.contains(0) || set.max_index().is_some_and(|m| m >= self.order()) {
            return false;
        }
        set.iter()
            .all(|a| set.iter().all(|b| set.contains(self.op(a, b))))
    }

    pub fn is_normal(&self, set: ElementSet) -> bool {
        self.elements().all(|g| {
            let gi = self.inverse(g);
            set.iter().all(|k| set.contains(self.op(self.op(g, k), gi)))
        })
    }

    /// Human-readable name of an element: residue tuple or permutation.
    pub fn element_name(&self, x: usize) -> String {
        match &self.shape {
            Shape::Abelian(a) => {
                let r: Vec<String> = a.residues(x).iter().map(u32::to_string).collect();
                format!("({})", r.join(","))
            }
            Shape::Symmetric3 => {
                let p = table::S3_PERMUTATIONS[x];
                format!("[{},{},{}]", p[0], p[1], p[2])
            }
            Shape::Table(_) => x.to_string(),
        }
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape
            && (Arc::ptr_eq(&self.table, &other.table) || *self.table == *other.table)
    }
}

impl Eq for Group {}

impl PartialOrd for Group {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Registry order: by order, then by shape.
impl Ord for Group {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.shape.cmp(&other.shape))
            .then_with(|| self.table.raw().cmp(other.table.raw()))
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::Abelian(a) => write!(f, "{a}"),
            Shape::Symmetric3 => write!(f, "S3"),
            Shape::Table(name) => write!(f, "{name}"),
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({self})")
    }
}

/// Least `k >= 1` with `x^k = e`.
pub fn element_order(g: &Group, x: usize) -> u32 {
    g.element_order(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_by_repetition(g: &Group, x: usize) -> u32 {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = g.op(y, x);
            k += 1;
        }
        k
    }

    #[test]
    fn element_orders() {
        let c8 = Group::cyclic(8).unwrap();
        assert_eq!(element_order(&c8, 0), 1);
        assert_eq!(element_order(&c8, 1), 8);

        let c2c4 = Group::abelian(make_fin_ab(&[2, 4]).unwrap()).unwrap();
        let a = c2c4.as_abelian().unwrap();
        let x = a.index_of(&[1, 1]);
        assert_eq!(element_order(&c2c4, x), 4);
        for y in c2c4.elements() {
            assert_eq!(element_order(&c2c4, y), order_by_repetition(&c2c4, y));
        }
    }

    #[test]
    fn generators_span() {
        for g in [
            Group::symmetric3(),
            Group::cyclic(12).unwrap(),
            Group::abelian(make_fin_ab(&[2, 2, 4]).unwrap()).unwrap(),
        ] {
            let span = g.generate(g.generators().into_iter().collect());
            assert_eq!(span, g.all_elements());
        }
    }

    #[test]
    fn limits() {
        assert!(Limits::new(0).is_err());
        assert!(Limits::new(129).is_err());
        let l = Limits::new(16).unwrap();
        assert!(l.check(16).is_ok());
        assert_eq!(
            l.check(17),
            Err(GroupError::SizeBound {
                order: 17,
                bound: 16
            })
        );
    }

    #[test]
    fn registry_order() {
        let mut gs = vec![
            Group::symmetric3(),
            Group::cyclic(4).unwrap(),
            Group::abelian(make_fin_ab(&[2, 2]).unwrap()).unwrap(),
            Group::cyclic(6).unwrap(),
            Group::cyclic(1).unwrap(),
        ];
        gs.sort();
        let names: Vec<String> = gs.iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["C1", "C2xC2", "C4", "C2xC3", "S3"]);
    }
}
