//! The `H : generators` syntax naming a subgroup pair.
//!
//! - `C2xC2 : (1,0)`, `C12 : 4`, `S3 : (1,0,2)`: generators as written
//!   element tuples (a bare number for a one-component group; for `S3`, the
//!   permutation `i -> t[i]`, in round or square brackets);
//! - `C8 : C4`, `S3 : C3`: the subgroup of that isomorphism type, which must
//!   be unique;
//! - `C2xC4 : C2x{0}`: one factor per written component, each `{0}` or a
//!   cyclic subgroup of that component; used whenever a group with several
//!   components is followed by that many factors;
//! - `H : e` or `H : {0}`: the trivial subgroup.

use crate::families::{Family, FamilyError};
use crate::groups::{ElementSet, Group, GroupError, GroupLiteral, LiteralComponent};
use crate::parse::{Cursor, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0} is not in the family")]
    NotInFamily(String),
    #[error("ambiguous subgroup: {group} has {count} subgroups isomorphic to {name}; name one by generators")]
    Ambiguous { group: String, name: String, count: usize },
    #[error("{group} has no subgroup isomorphic to {name}")]
    NoSuchSubgroup { group: String, name: String },
}

impl From<PairError> for FamilyError {
    fn from(e: PairError) -> Self {
        match e {
            PairError::Parse(p) => FamilyError::Parse(p),
            PairError::Group(g) => FamilyError::Group(g),
            other => FamilyError::InvalidParameter(other.to_string()),
        }
    }
}

/// A parsed pair, before it is placed in a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairLiteral {
    pub group: GroupLiteral,
    pub subgroup: SubgroupSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupSpec {
    Trivial,
    Generators(Vec<Vec<u64>>),
    Named(GroupLiteral),
    /// One entry per written component: `None` for `{0}`, else the order.
    Product(Vec<Option<u64>>),
}

impl PairLiteral {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(text);
        cur.skip_ws();
        let group = GroupLiteral::parse_from(&mut cur)?;
        cur.skip_ws();
        cur.expect(':')?;
        cur.skip_ws();
        let subgroup = parse_subgroup(&mut cur, &group)?;
        cur.finish()?;
        Ok(Self { group, subgroup })
    }

    /// The subgroup as a set of elements of `group.to_group()`.
    pub fn resolve(&self) -> Result<(Group, ElementSet), PairError> {
        let g = self.group.to_group()?;
        let members = match &self.subgroup {
            SubgroupSpec::Trivial => ElementSet::singleton(0),
            SubgroupSpec::Generators(gens) => {
                let mut seeds = ElementSet::singleton(0);
                for t in gens {
                    seeds.insert(self.group.element(t)?);
                }
                g.generate(seeds)
            }
            SubgroupSpec::Product(factors) => {
                let mut seeds = ElementSet::singleton(0);
                for (c, f) in factors.iter().enumerate() {
                    if let Some(m) = f {
                        seeds.insert(self.group.component_generator(c, *m)?);
                    }
                }
                g.generate(seeds)
            }
            SubgroupSpec::Named(name) => {
                let target = name.to_group()?;
                let limits = crate::groups::Limits::new(crate::groups::HARD_MAX_ORDER)?;
                let matches: Vec<ElementSet> = crate::groups::subgroups(&g, &limits)?
                    .into_iter()
                    .filter(|s| s.order() == target.order())
                    .map(|s| s.members())
                    .filter(|&m| same_type(&g, m, &target))
                    .collect();
                match matches.as_slice() {
                    [one] => *one,
                    [] => {
                        return Err(PairError::NoSuchSubgroup {
                            group: self.group.to_string(),
                            name: name.to_string(),
                        })
                    }
                    many => {
                        return Err(PairError::Ambiguous {
                            group: self.group.to_string(),
                            name: name.to_string(),
                            count: many.len(),
                        })
                    }
                }
            }
        };
        Ok((g, members))
    }

    /// `(registry index, subgroup index)` in `family`.
    pub fn locate(&self, family: &Family) -> Result<(usize, usize), PairError> {
        let (g, members) = self.resolve()?;
        let h = family
            .registry_index(&g)
            .ok_or_else(|| PairError::NotInFamily(self.group.to_string()))?;
        let k = family
            .subgroup_index(h, members)
            .expect("generated sets are subgroups");
        Ok((h, k))
    }
}

fn same_type(g: &Group, members: ElementSet, target: &Group) -> bool {
    let elems = members.to_vec();
    let local: std::collections::HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let table: Vec<u8> = elems
        .iter()
        .flat_map(|&a| elems.iter().map(|&b| local[&g.op(a, b)] as u8).collect::<Vec<_>>())
        .collect();
    crate::groups::FiniteGroup::from_table(elems.len(), table)
        .and_then(|t| crate::groups::canonical_form_of(&t))
        .is_ok_and(|rep| rep == *target)
}

fn parse_subgroup(cur: &mut Cursor<'_>, group: &GroupLiteral) -> Result<SubgroupSpec, ParseError> {
    if cur.eat_word("{0}") {
        if cur.peek().is_some_and(|c| c.eq_ignore_ascii_case(&'x')) {
            return parse_product(cur, group, Some(None));
        }
        return Ok(SubgroupSpec::Trivial);
    }
    match cur.peek() {
        Some('e') | Some('E') => {
            cur.eat('e');
            Ok(SubgroupSpec::Trivial)
        }
        Some('c') | Some('C') | Some('s') | Some('S') => {
            let written = group.components().len();
            if written > 1 && !group.is_symmetric3() {
                let mut probe = cur.clone();
                let product_err = match parse_product(&mut probe, group, None) {
                    Ok(spec) => {
                        *cur = probe;
                        return Ok(spec);
                    }
                    Err(e) => e,
                };
                let mut probe = cur.clone();
                return match GroupLiteral::parse_from(&mut probe) {
                    Ok(name) if name.components().len() != written => {
                        *cur = probe;
                        Ok(SubgroupSpec::Named(name))
                    }
                    _ => Err(product_err),
                };
            }
            Ok(SubgroupSpec::Named(GroupLiteral::parse_from(cur)?))
        }
        _ => {
            let mut gens = Vec::new();
            loop {
                cur.skip_ws();
                gens.push(parse_element(cur, group)?);
                cur.skip_ws();
                if !cur.eat(',') {
                    break;
                }
            }
            Ok(SubgroupSpec::Generators(gens))
        }
    }
}

fn parse_product(
    cur: &mut Cursor<'_>,
    group: &GroupLiteral,
    first: Option<Option<u64>>,
) -> Result<SubgroupSpec, ParseError> {
    let mut factors = Vec::new();
    if let Some(f) = first {
        factors.push(f);
        cur.expect('x')?;
    }
    loop {
        if cur.eat_word("{0}") {
            factors.push(None);
        } else if cur.eat('c') {
            let pos = cur.position();
            let m = cur.number()?;
            let c = factors.len();
            match group.components().get(c) {
                Some(LiteralComponent::Cyclic(n)) if m > 0 && n % m == 0 => factors.push(Some(m)),
                Some(LiteralComponent::Cyclic(n)) => {
                    return Err(cur.error_at(pos, format!("an order dividing {n}")));
                }
                _ => return Err(cur.error_at(pos, format!("at most {} factors", group.components().len()))),
            }
        } else {
            return Err(cur.error("'{0}' or 'C<n>'"));
        }
        if !cur.eat('x') {
            break;
        }
    }
    if factors.len() != group.components().len() {
        return Err(cur.error(format!("{} factors, one per component", group.components().len())));
    }
    Ok(SubgroupSpec::Product(factors))
}

fn parse_element(cur: &mut Cursor<'_>, group: &GroupLiteral) -> Result<Vec<u64>, ParseError> {
    let start = cur.position();
    let close = if cur.eat('(') {
        Some(')')
    } else if cur.eat('[') {
        Some(']')
    } else {
        None
    };
    let coords = match close {
        None => vec![cur.number().map_err(|_| cur.error("a generator, 'e', '{0}' or a subgroup name"))?],
        Some(end) => {
            let mut coords = Vec::new();
            loop {
                cur.skip_ws();
                coords.push(cur.number()?);
                cur.skip_ws();
                if !cur.eat(',') {
                    break;
                }
            }
            cur.expect(end)?;
            coords
        }
    };
    if coords.len() != group.arity() {
        return Err(cur.error_at(start, format!("an element with {} coordinates", group.arity())));
    }
    group
        .element(&coords)
        .map_err(|e| cur.error_at(start, format!("an element of {group} ({e})")))?;
    Ok(coords)
}

/// Parses `text` and places it in `family`.
pub fn parse_pair(text: &str, family: &Family) -> Result<(usize, usize), PairError> {
    PairLiteral::parse(text)?.locate(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{ab_truncation, sigma3_family};

    fn order_of(f: &Family, text: &str) -> (String, usize) {
        let (h, k) = parse_pair(text, f).unwrap();
        (f.group(h).to_string(), f.subgroups(h)[k].order())
    }

    #[test]
    fn forms() {
        let f = ab_truncation(16).unwrap();
        assert_eq!(order_of(&f, "C8 : C4"), ("C8".into(), 4));
        assert_eq!(order_of(&f, "C2xC2 : (1,0)"), ("C2xC2".into(), 2));
        assert_eq!(order_of(&f, "C12 : 4"), ("C4xC3".into(), 3));
        assert_eq!(order_of(&f, "C12 : C6"), ("C4xC3".into(), 6));
        assert_eq!(order_of(&f, "C4 : e"), ("C4".into(), 1));
        assert_eq!(order_of(&f, "C4 : {0}"), ("C4".into(), 1));
        assert_eq!(order_of(&f, "C2xC4 : C2x{0}"), ("C2xC4".into(), 2));
        assert_eq!(order_of(&f, "C2xC4 : {0}xC2"), ("C2xC4".into(), 2));
        assert_eq!(order_of(&f, "C2xC4 : C2xC4"), ("C2xC4".into(), 8));
        assert_eq!(order_of(&f, "C4xC2 : (1,0),(0,1)"), ("C2xC4".into(), 8));
    }

    #[test]
    fn written_coordinates_follow_the_literal() {
        let f = ab_truncation(8).unwrap();
        let a = parse_pair("C2xC4 : C2x{0}", &f).unwrap();
        let b = parse_pair("C4xC2 : {0}xC2", &f).unwrap();
        assert_eq!(a, b);
        let c = parse_pair("C4xC2 : (0,1)", &f).unwrap();
        assert_eq!(b, c);
    }

    #[test]
    fn sigma3_pairs() {
        let f = sigma3_family().unwrap();
        assert_eq!(order_of(&f, "S3 : C3"), ("S3".into(), 3));
        assert_eq!(order_of(&f, "S3 : (1,0,2)"), ("S3".into(), 2));
        assert_eq!(order_of(&f, "S3 : [1,2,0]"), ("S3".into(), 3));
        assert!(matches!(parse_pair("S3 : C2", &f), Err(PairError::Ambiguous { count: 3, .. })));
    }

    #[test]
    fn errors() {
        let f = ab_truncation(16).unwrap();
        assert!(matches!(
            parse_pair("C2xC2 : C2", &f),
            Err(PairError::Ambiguous { count: 3, .. })
        ));
        assert!(matches!(
            parse_pair("C2xC2xC2 : C2xC2", &f),
            Err(PairError::Ambiguous { count: 7, .. })
        ));
        assert!(matches!(parse_pair("C4 : C3", &f), Err(PairError::NoSuchSubgroup { .. })));
        assert!(matches!(parse_pair("C32 : e", &f), Err(PairError::NotInFamily(_))));
        let pos = |t: &str| match parse_pair(t, &f) {
            Err(PairError::Parse(p)) => p.position,
            other => panic!("{t}: {other:?}"),
        };
        assert_eq!(pos("C4 C2"), 3);
        assert_eq!(pos("C4 : 5"), 5);
        assert_eq!(pos("C2xC2 : (1)"), 8);
        assert_eq!(pos("C2xC2 : (1,0"), 12);
        assert_eq!(pos("C2xC4 : C3x{0}"), 9);
        assert_eq!(pos("C4 : 1 x"), 7);
    }
}
