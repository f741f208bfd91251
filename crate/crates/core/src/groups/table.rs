use super::GroupError;

/// A group given by its multiplication table over element indices
/// `0..size`, with `0` the identity. Associativity, identity and inverses are
/// checked exhaustively by [`FiniteGroup::from_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    size: usize,
    table: Vec<u8>,
    inverses: Vec<u8>,
    orders: Vec<u32>,
}

/// Permutations of `{0, 1, 2}` in lexicographic order; index 0 is the identity.
pub(crate) const S3_PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Σ₃ as permutations of `{0,1,2}` with `(a·b)(i) = a(b(i))`.
pub fn symmetric_group_3() -> FiniteGroup {
    let index = |p: [usize; 3]| S3_PERMUTATIONS.iter().position(|q| *q == p).unwrap();
    let mut table = Vec::with_capacity(36);
    for a in S3_PERMUTATIONS {
        for b in S3_PERMUTATIONS {
            table.push(index([a[b[0]], a[b[1]], a[b[2]]]) as u8);
        }
    }
    FiniteGroup::from_table(6, table).expect("Σ₃ table is a group")
}

impl FiniteGroup {
    pub fn from_table(size: usize, table: Vec<u8>) -> Result<Self, GroupError> {
        if size == 0 || size > super::HARD_MAX_ORDER {
            return Err(GroupError::InvalidTable(format!("unsupported size {size}")));
        }
        if table.len() != size * size {
            return Err(GroupError::InvalidTable(format!(
                "expected {} entries, found {}",
                size * size,
                table.len()
            )));
        }
        if table.iter().any(|&x| x as usize >= size) {
            return Err(GroupError::InvalidTable("entry out of range".into()));
        }
        let at = |a: usize, b: usize| table[a * size + b] as usize;
        for a in 0..size {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::InvalidTable("index 0 is not an identity".into()));
            }
            if !(0..size).any(|b| at(a, b) == 0 && at(b, a) == 0) {
                return Err(GroupError::InvalidTable(format!("element {a} has no inverse")));
            }
        }
        for a in 0..size {
            for b in 0..size {
                let ab = at(a, b);
                for c in 0..size {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::InvalidTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Self::from_table_unchecked(size, table))
    }

    pub(crate) fn from_table_unchecked(size: usize, table: Vec<u8>) -> Self {
        let at = |a: usize, b: usize| table[a * size + b] as usize;
        let inverses = (0..size)
            .map(|a| (0..size).find(|&b| at(a, b) == 0).expect("inverse") as u8)
            .collect();
        let orders = (0..size)
            .map(|a| {
                let mut y = a;
                let mut k = 1;
                while y != 0 {
                    y = at(y, a);
                    k += 1;
                }
                k
            })
            .collect();
        FiniteGroup {
            size,
            table,
            inverses,
            orders,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma3_shape() {
        let s3 = symmetric_group_3();
        assert_eq!(s3.size(), 6);
        assert!(!s3.is_commutative());
        let count = |k| (0..6).filter(|&x| s3.element_order(x) == k).count();
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 3);
        assert_eq!(count(3), 2);
    }

    #[test]
    fn rejects_bad_tables() {
        // identity not at 0
        assert!(FiniteGroup::from_table(2, vec![1, 0, 0, 1]).is_err());
        // not a Latin square → missing inverse
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1]).is_err());
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 0]).is_ok());
        // a commutative loop of order 5 that is not associative
        let t = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(
            FiniteGroup::from_table(5, t),
            Err(GroupError::InvalidTable(_))
        ));
    }
}
