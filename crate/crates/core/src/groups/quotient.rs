use super::{find_isomorphism, make_fin_ab, FinAbGroup, FiniteGroup, Group, GroupError, Homomorphism, Subgroup};
use crate::arith;

/// Isomorphism type of a commutative table group, read off from the number
/// of elements killed by each prime power.
pub fn abelian_type(g: &FiniteGroup) -> Result<FinAbGroup, GroupError> {
    if !g.is_commutative() {
        return Err(GroupError::UnsupportedType("a non-commutative table".into()));
    }
    let n = g.size() as u64;
    let mut orders = Vec::new();
    for (p, e) in arith::factorize(n) {
        // s[k] = log_p |{x : x^{p^k} = 1}| = sum_i min(λ_i, k)
        let s: Vec<u32> = (0..=e + 1)
            .map(|k| {
                let pk = p.pow(k);
                let c = (0..g.size())
                    .filter(|&x| pk % g.element_order(x) as u64 == 0)
                    .count() as u64;
                c.ilog(p)
            })
            .collect();
        for k in 1..=e as usize {
            let at_least = |k: usize| s[k] - s[k - 1];
            let exactly = at_least(k) - at_least(k + 1);
            for _ in 0..exactly {
                orders.push(p.pow(k as u32));
            }
        }
    }
    make_fin_ab(&orders)
}

/// Recognises the isomorphism type of a table group as one of the supported
/// shapes (abelian, or Σ₃).
pub fn canonical_form(table: &FiniteGroup) -> Result<Group, GroupError> {
    if table.is_commutative() {
        Group::abelian(abelian_type(table)?)
    } else if table.size() == 6 {
        Ok(Group::symmetric3())
    } else {
        Err(GroupError::UnsupportedType(format!(
            "a non-abelian group of order {}",
            table.size()
        )))
    }
}

/// `G/K` with its projection. The quotient comes back in canonical form
/// (primary decomposition when abelian).
pub fn quotient(g: &Group, k: &Subgroup) -> Result<(Group, Homomorphism), GroupError> {
    if k.parent_order() != g.order() {
        return Err(GroupError::MismatchedParent {
            expected: g.order(),
            found: k.parent_order(),
        });
    }
    if !g.is_subgroup(k.members()) {
        return Err(GroupError::NotASubgroup);
    }
    if !g.is_abelian() && !g.is_normal(k.members()) {
        return Err(GroupError::NotNormal);
    }
    // coset id of x: position of min(xK) among the representatives
    let mut rep_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if rep_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for m in k.members().iter() {
            rep_of[g.op(x, m)] = id;
        }
    }
    let q = reps.len();
    let mut table = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            table.push(rep_of[g.op(a, b)] as u8);
        }
    }
    let coset_table = FiniteGroup::from_table(q, table)?;
    let coset_group = Group::from_table("G/K", coset_table.clone());
    let canonical = canonical_form(&coset_table)?;
    let iso = find_isomorphism(&coset_group, &canonical)
        .ok_or_else(|| GroupError::UnsupportedType("quotient".into()))?;
    let map: Vec<usize> = g.elements().map(|x| iso.apply(rep_of[x])).collect();
    let projection = Homomorphism::from_map(g, &canonical, &map)?;
    debug_assert_eq!(projection.kernel(), k.members());
    Ok((canonical, projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{subgroups, Limits};

    fn ab(orders: &[u64]) -> Group {
        Group::abelian(make_fin_ab(orders).unwrap()).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let c8 = Group::cyclic(8).unwrap();
        let (q, _) = quotient(&c8, &Subgroup::whole(&c8)).unwrap();
        assert_eq!(q, Group::cyclic(1).unwrap());

        let c2 = Subgroup::new(&c8, [0, 4].into_iter().collect()).unwrap();
        let (q, proj) = quotient(&c8, &c2).unwrap();
        assert_eq!(q, Group::cyclic(4).unwrap());
        assert!(proj.is_surjective());
        assert_eq!(proj.kernel(), c2.members());

        let g = ab(&[2, 4]);
        let a = g.as_abelian().unwrap();
        let diag = Subgroup::new(&g, [0, a.index_of(&[1, 2])].into_iter().collect()).unwrap();
        let (q, proj) = quotient(&g, &diag).unwrap();
        assert_eq!(q, Group::cyclic(4).unwrap());
        assert_eq!(proj.kernel(), diag.members());
    }

    #[test]
    fn sigma3_quotients() {
        let s3 = Group::symmetric3();
        let subs = subgroups(&s3, &Limits::default()).unwrap();
        let c3 = subs.iter().find(|s| s.order() == 3).unwrap();
        let (q, _) = quotient(&s3, c3).unwrap();
        assert_eq!(q, Group::cyclic(2).unwrap());
        let c2 = subs.iter().find(|s| s.order() == 2).unwrap();
        assert_eq!(quotient(&s3, c2).unwrap_err(), GroupError::NotNormal);
        let (q, _) = quotient(&s3, &Subgroup::trivial(&s3)).unwrap();
        assert_eq!(q, s3);
    }

    #[test]
    fn every_abelian_quotient_has_kernel_k() {
        let l = Limits::default();
        let g = ab(&[2, 2, 4]);
        for k in subgroups(&g, &l).unwrap() {
            let (q, proj) = quotient(&g, &k).unwrap();
            assert_eq!(q.order() * k.order(), g.order());
            assert_eq!(proj.kernel(), k.members());
            assert!(proj.is_surjective());
        }
    }

    #[test]
    fn abelian_type_recovers_decomposition() {
        for orders in [vec![2, 4, 3], vec![8], vec![2, 2, 2], vec![9, 3, 4]] {
            let a = make_fin_ab(&orders).unwrap();
            assert_eq!(abelian_type(&a.cayley_table()).unwrap(), a);
        }
    }
}
