use crate::groups::{FinAbGroup, Subgroup};

use super::GeneralizedFactorization;

/// `T^r × A`: a torus of rank `r` times a finite abelian group.
///
/// Finite-index closed subgroups contain the identity component, so they are
/// given by subgroups of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbLieGroup {
    pub torus_rank: u32,
    pub finite_part: FinAbGroup,
}

impl AbLieGroup {
    pub fn new(torus_rank: u32, finite_part: FinAbGroup) -> Self {
        Self {
            torus_rank,
            finite_part,
        }
    }
}

/// Whether `T^r × K <= T^r × A` lies in `T^N`: every element of `A` whose
/// order divides `N` must lie in `K`. Torsion of the torus sits in the
/// identity component, so the answer does not depend on `r`.
pub fn ablie_contains(n: &GeneralizedFactorization, h: &AbLieGroup, k: &Subgroup) -> bool {
    let a = &h.finite_part;
    debug_assert_eq!(k.parent_order(), a.order());
    (0..a.order())
        .filter(|&x| n.divides(a.element_order(x) as u64))
        .all(|x| k.contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{make_fin_ab, subgroups, Group, Limits};

    #[test]
    fn examples() {
        let a = make_fin_ab(&[4]).unwrap();
        let g = Group::abelian(a.clone()).unwrap();
        let subs = subgroups(&g, &Limits::default()).unwrap();
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        let two: GeneralizedFactorization = "2".parse().unwrap();
        for rank in [0, 2] {
            let h = AbLieGroup::new(rank, a.clone());
            assert!(ablie_contains(&two, &h, c2));
            assert!(ablie_contains(&GeneralizedFactorization::one(), &h, &subs[0]));
            assert!(ablie_contains(&GeneralizedFactorization::top(), &h, subs.last().unwrap()));
            assert!(!ablie_contains(&"2^2".parse().unwrap(), &h, c2));
        }
    }
}
