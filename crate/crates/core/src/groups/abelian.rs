use std::fmt;

use super::table::FiniteGroup;
use super::GroupError;
use crate::arith;

/// A finite abelian group `C_{q_1} x ... x C_{q_k}` in canonical primary
/// decomposition: every `q_i` is a prime power, sorted by prime and then by
/// exponent. Elements are residue tuples, indexed in lexicographic order with
/// the last coordinate varying fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbGroup {
    factors: Vec<u32>,
}

/// Canonical primary decomposition of `C_{orders[0]} x C_{orders[1]} x ...`.
/// Entries equal to 1 vanish; the empty product is the trivial group.
pub fn make_fin_ab(orders: &[u64]) -> Result<FinAbGroup, GroupError> {
    let mut parts: Vec<(u64, u32)> = Vec::new();
    for &n in orders {
        if n == 0 {
            return Err(GroupError::NonPositiveOrder);
        }
        parts.extend(arith::factorize(n));
    }
    parts.sort_unstable();
    let factors = parts
        .into_iter()
        .map(|(p, e)| {
            u32::try_from(p.pow(e)).map_err(|_| GroupError::SizeBound {
                order: usize::MAX,
                bound: super::HARD_MAX_ORDER,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let group = FinAbGroup { factors };
    if group
        .factors
        .iter()
        .try_fold(1usize, |acc, &q| acc.checked_mul(q as usize))
        .is_none()
    {
        return Err(GroupError::SizeBound {
            order: usize::MAX,
            bound: super::HARD_MAX_ORDER,
        });
    }
    Ok(group)
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { factors: vec![] }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&q| q as usize).product()
    }

    pub fn is_cyclic(&self) -> bool {
        // Cyclic iff no prime repeats.
        let primes: Vec<u64> = self.primes_per_factor();
        primes.windows(2).all(|w| w[0] != w[1])
    }

    fn primes_per_factor(&self) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&q| arith::prime_power(q as u64).map(|(p, _)| p).unwrap_or(1))
            .collect()
    }

    /// `(prime, exponent)` for each factor, in factor order.
    pub fn prime_exponents(&self) -> Vec<(u64, u32)> {
        self.factors
            .iter()
            .map(|&q| arith::prime_power(q as u64).expect("factors are prime powers"))
            .collect()
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.factors.len()];
        for i in (0..self.factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.factors[i + 1] as usize;
        }
        strides
    }

    pub fn index_of(&self, residues: &[u32]) -> usize {
        assert_eq!(residues.len(), self.factors.len(), "coordinate count");
        self.strides()
            .iter()
            .zip(residues.iter().zip(&self.factors))
            .map(|(s, (&r, &q))| s * (r % q) as usize)
            .sum()
    }

    pub fn residues(&self, index: usize) -> Vec<u32> {
        self.strides()
            .iter()
            .zip(&self.factors)
            .map(|(&s, &q)| ((index / s) % q as usize) as u32)
            .collect()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let ra = self.residues(a);
        let rb = self.residues(b);
        let sum: Vec<u32> = ra
            .iter()
            .zip(&rb)
            .zip(&self.factors)
            .map(|((x, y), q)| (x + y) % q)
            .collect();
        self.index_of(&sum)
    }

    /// The lcm of the coordinate orders.
    pub fn element_order(&self, index: usize) -> u32 {
        self.residues(index)
            .iter()
            .zip(&self.factors)
            .map(|(&r, &q)| (q / arith::gcd(r as u64, q as u64) as u32) as u64)
            .fold(1, arith::lcm) as u32
    }

    pub fn unit_vectors(&self) -> Vec<usize> {
        let strides = self.strides();
        strides.into_iter().collect()
    }

    pub(crate) fn cayley_table(&self) -> FiniteGroup {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        let residues: Vec<Vec<u32>> = (0..n).map(|i| self.residues(i)).collect();
        let strides = self.strides();
        for a in &residues {
            for b in &residues {
                let idx: usize = a
                    .iter()
                    .zip(b)
                    .zip(&self.factors)
                    .zip(&strides)
                    .map(|(((x, y), q), s)| ((x + y) % q) as usize * s)
                    .sum();
                table.push(idx as u8);
            }
        }
        FiniteGroup::from_table_unchecked(n, table)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "C1");
        }
        let parts: Vec<String> = self.factors.iter().map(|q| format!("C{q}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(make_fin_ab(&[1]).unwrap().factors(), &[] as &[u32]);
        assert_eq!(make_fin_ab(&[]).unwrap(), FinAbGroup::trivial());
        assert_eq!(make_fin_ab(&[12]).unwrap().factors(), &[4, 3]);
        assert_eq!(make_fin_ab(&[2, 4]).unwrap(), make_fin_ab(&[4, 2]).unwrap());
        assert_eq!(make_fin_ab(&[2, 4]).unwrap().factors(), &[2, 4]);
        assert_eq!(make_fin_ab(&[6, 10]).unwrap().factors(), &[2, 2, 3, 5]);
        assert_eq!(make_fin_ab(&[3, 0]), Err(GroupError::NonPositiveOrder));
    }

    #[test]
    fn residue_indexing_roundtrip() {
        let g = make_fin_ab(&[2, 4, 3]).unwrap();
        assert_eq!(g.order(), 24);
        for i in 0..g.order() {
            assert_eq!(g.index_of(&g.residues(i)), i);
        }
        assert_eq!(g.residues(0), vec![0, 0, 0]);
    }

    #[test]
    fn abelian_axioms_exhaustive() {
        let g = make_fin_ab(&[2, 4, 3]).unwrap();
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.add(a, 0), a);
            assert!((0..n).any(|b| g.add(a, b) == 0));
            for b in 0..n {
                assert_eq!(g.add(a, b), g.add(b, a));
                for c in 0..n {
                    assert_eq!(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
                }
            }
        }
    }

    #[test]
    fn cyclicity() {
        assert!(make_fin_ab(&[12]).unwrap().is_cyclic());
        assert!(make_fin_ab(&[2, 3]).unwrap().is_cyclic());
        assert!(!make_fin_ab(&[2, 2]).unwrap().is_cyclic());
        assert!(FinAbGroup::trivial().is_cyclic());
    }
}
