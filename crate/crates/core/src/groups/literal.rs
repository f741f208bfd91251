use std::fmt;

use super::{make_fin_ab, Group, GroupError};
use crate::arith;
use crate::parse::{Cursor, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteralComponent {
    Cyclic(u64),
    Symmetric3,
}

/// A group literal as written: `C1`, `C8`, `C2xC4`, `S3`. The written
/// components are kept so that element tuples can be given in the user's
/// coordinates and translated to the canonical decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLiteral {
    components: Vec<LiteralComponent>,
}

impl GroupLiteral {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor::new(text);
        cur.skip_ws();
        let lit = Self::parse_from(&mut cur)?;
        cur.finish()?;
        Ok(lit)
    }

    /// Parses a literal at the cursor, leaving anything after it untouched.
    pub fn parse_from(cur: &mut Cursor<'_>) -> Result<Self, ParseError> {
        let mut components = Vec::new();
        loop {
            let start = cur.position();
            if cur.eat('s') {
                if !cur.eat('3') {
                    return Err(cur.error("'3' after 'S'"));
                }
                components.push(LiteralComponent::Symmetric3);
            } else if cur.eat('c') {
                let n_pos = cur.position();
                let n = cur.number()?;
                if n == 0 {
                    return Err(cur.error_at(n_pos, "a positive cyclic order"));
                }
                if n > super::HARD_MAX_ORDER as u64 {
                    return Err(cur.error_at(n_pos, format!("an order at most {}", super::HARD_MAX_ORDER)));
                }
                components.push(LiteralComponent::Cyclic(n));
            } else {
                return Err(cur.error_at(start, "'C<n>' or 'S3'"));
            }
            if !cur.eat('x') {
                break;
            }
        }
        if components.len() > 1 && components.contains(&LiteralComponent::Symmetric3) {
            return Err(cur.error_at(0, "S3 on its own (products with S3 are not supported)"));
        }
        Ok(GroupLiteral { components })
    }

    pub fn components(&self) -> &[LiteralComponent] {
        &self.components
    }

    pub fn is_symmetric3(&self) -> bool {
        self.components == [LiteralComponent::Symmetric3]
    }

    fn cyclic_orders(&self) -> Vec<u64> {
        self.components
            .iter()
            .filter_map(|c| match c {
                LiteralComponent::Cyclic(n) => Some(*n),
                LiteralComponent::Symmetric3 => None,
            })
            .collect()
    }

    /// The canonical group this literal denotes.
    pub fn to_group(&self) -> Result<Group, GroupError> {
        if self.is_symmetric3() {
            Ok(Group::symmetric3())
        } else {
            let orders = self.cyclic_orders();
            let total = orders.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n));
            match total {
                Some(t) if t <= super::HARD_MAX_ORDER as u64 => Group::abelian(make_fin_ab(&orders)?),
                _ => Err(GroupError::SizeBound {
                    order: total.map_or(usize::MAX, |t| t as usize),
                    bound: super::HARD_MAX_ORDER,
                }),
            }
        }
    }

    /// Number of coordinates an element tuple has in written form.
    pub fn arity(&self) -> usize {
        if self.is_symmetric3() {
            3
        } else {
            self.components.len()
        }
    }

    /// Canonical slots as `(prime power, written component)`, in the order
    /// the primary decomposition uses.
    fn slots(&self) -> Vec<(u64, u32, usize)> {
        let mut slots: Vec<(u64, u32, usize)> = self
            .cyclic_orders()
            .iter()
            .enumerate()
            .flat_map(|(c, &n)| arith::factorize(n).into_iter().map(move |(p, e)| (p, e, c)))
            .collect();
        slots.sort_unstable();
        slots
    }

    /// Translates a written element tuple to an element index of
    /// [`Self::to_group`]. For `S3` the tuple is the permutation `i -> t[i]`.
    pub fn element(&self, coords: &[u64]) -> Result<usize, GroupError> {
        if coords.len() != self.arity() {
            return Err(GroupError::InvalidTable(format!(
                "expected a {}-tuple, found {} coordinates",
                self.arity(),
                coords.len()
            )));
        }
        if self.is_symmetric3() {
            let perm: Vec<usize> = coords.iter().map(|&c| c as usize).collect();
            return super::table::S3_PERMUTATIONS
                .iter()
                .position(|p| p[..] == perm[..])
                .ok_or_else(|| GroupError::InvalidTable(format!("{coords:?} is not a permutation of 0,1,2")));
        }
        let orders = self.cyclic_orders();
        if let Some((c, _)) = coords.iter().zip(&orders).find(|(c, n)| c >= n) {
            return Err(GroupError::ElementOutOfRange {
                index: *c as usize,
                order: orders[coords.iter().position(|x| x == c).unwrap()] as usize,
            });
        }
        let group = self.to_group()?;
        let a = group.as_abelian().expect("cyclic literal is abelian");
        let residues: Vec<u32> = self
            .slots()
            .iter()
            .map(|&(p, e, c)| (coords[c] % p.pow(e)) as u32)
            .collect();
        Ok(a.index_of(&residues))
    }

    /// Generator of the written component `c`, or of its subgroup of order
    /// `m` when given.
    pub fn component_generator(&self, c: usize, m: u64) -> Result<usize, GroupError> {
        let orders = self.cyclic_orders();
        let n = *orders
            .get(c)
            .ok_or_else(|| GroupError::InvalidTable(format!("no component {c}")))?;
        if m == 0 || n % m != 0 {
            return Err(GroupError::NotASubgroup);
        }
        let mut coords = vec![0u64; orders.len()];
        coords[c] = n / m;
        self.element(&coords)
    }
}

impl fmt::Display for GroupLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| match c {
                LiteralComponent::Cyclic(n) => format!("C{n}"),
                LiteralComponent::Symmetric3 => "S3".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl std::str::FromStr for GroupLiteral {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        for (text, canonical) in [
            ("C1", "C1"),
            ("c8", "C8"),
            ("C2xC4", "C2xC4"),
            ("C4xC2", "C2xC4"),
            ("C12", "C4xC3"),
            ("s3", "S3"),
            ("C6XC2", "C2xC2xC3"),
        ] {
            let lit = GroupLiteral::parse(text).unwrap();
            assert_eq!(lit.to_group().unwrap().to_string(), canonical, "{text}");
        }
    }

    #[test]
    fn reports_positions() {
        let e = GroupLiteral::parse("C2xD4").unwrap_err();
        assert_eq!(e.position, 3);
        let e = GroupLiteral::parse("C0").unwrap_err();
        assert_eq!(e.position, 1);
        let e = GroupLiteral::parse("C2x").unwrap_err();
        assert_eq!(e.position, 3);
        assert!(GroupLiteral::parse("S3xC2").is_err());
        assert!(GroupLiteral::parse("").is_err());
        assert!(GroupLiteral::parse("C99999999999999999999999").is_err());
    }

    #[test]
    fn written_coordinates() {
        let lit = GroupLiteral::parse("C4xC2").unwrap();
        let g = lit.to_group().unwrap();
        let x = lit.element(&[1, 0]).unwrap();
        assert_eq!(g.element_order(x), 4);
        let y = lit.element(&[0, 1]).unwrap();
        assert_eq!(g.element_order(y), 2);

        let lit = GroupLiteral::parse("C6").unwrap();
        let g = lit.to_group().unwrap();
        assert_eq!(g.element_order(lit.element(&[1]).unwrap()), 6);
        assert_eq!(g.element_order(lit.element(&[3]).unwrap()), 2);
        assert!(lit.element(&[6]).is_err());

        let s3 = GroupLiteral::parse("S3").unwrap();
        assert_eq!(s3.element(&[0, 1, 2]).unwrap(), 0);
        assert!(s3.element(&[0, 0, 2]).is_err());
    }

    #[test]
    fn written_map_is_a_homomorphism() {
        let lit = GroupLiteral::parse("C6xC4").unwrap();
        let g = lit.to_group().unwrap();
        for a in 0..6 {
            for b in 0..4 {
                for c in 0..6 {
                    for d in 0..4 {
                        let lhs = g.op(lit.element(&[a, b]).unwrap(), lit.element(&[c, d]).unwrap());
                        let rhs = lit.element(&[(a + c) % 6, (b + d) % 4]).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
