use std::fmt;

use super::{ElementSet, Group, GroupError, Limits, Subgroup};

/// A group homomorphism as a dense table `source index -> target index`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homomorphism {
    map: Box<[u8]>,
    target_order: usize,
}

impl Homomorphism {
    /// Verifies `map(e) = e` and `map(xy) = map(x)map(y)` before accepting.
    pub fn from_map(source: &Group, target: &Group, map: &[usize]) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::MismatchedParent {
                expected: source.order(),
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(GroupError::ElementOutOfRange {
                index: bad,
                order: target.order(),
            });
        }
        let hom = Homomorphism {
            map: map.iter().map(|&y| y as u8).collect(),
            target_order: target.order(),
        };
        if hom.is_homomorphism(source, target) {
            Ok(hom)
        } else {
            Err(GroupError::InvalidTable("map is not a homomorphism".into()))
        }
    }

    pub fn identity(g: &Group) -> Self {
        Homomorphism {
            map: (0..g.order()).map(|x| x as u8).collect(),
            target_order: g.order(),
        }
    }

    pub fn trivial(source: &Group, target: &Group) -> Self {
        Homomorphism {
            map: vec![0u8; source.order()].into_boxed_slice(),
            target_order: target.order(),
        }
    }

    pub fn is_homomorphism(&self, source: &Group, target: &Group) -> bool {
        self.map.len() == source.order()
            && self.target_order == target.order()
            && self.apply(0) == 0
            && source.elements().all(|x| {
                source
                    .elements()
                    .all(|y| self.apply(source.op(x, y)) == target.op(self.apply(x), self.apply(y)))
            })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn source_order(&self) -> usize {
        self.map.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.map
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Homomorphism) -> Result<Homomorphism, GroupError> {
        if self.target_order != then.source_order() {
            return Err(GroupError::MismatchedParent {
                expected: then.source_order(),
                found: self.target_order,
            });
        }
        Ok(Homomorphism {
            map: self.map.iter().map(|&x| then.map[x as usize]).collect(),
            target_order: then.target_order,
        })
    }

    pub fn image(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|x| self.apply(x)).collect()
    }

    pub fn kernel(&self) -> ElementSet {
        (0..self.source_order()).filter(|&x| self.apply(x) == 0).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image(ElementSet::full(self.source_order())).len() == self.target_order
    }

    /// Raw preimage of a set of target elements.
    #[inline]
    pub fn preimage_set(&self, set: ElementSet) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        for (x, &y) in self.map.iter().enumerate() {
            if set.contains(y as usize) {
                out.insert(x);
            }
        }
        out
    }

    /// `{x : θ(x) ∈ K}`, a subgroup of the source.
    pub fn preimage(&self, k: &Subgroup) -> Result<Subgroup, GroupError> {
        if k.parent_order() != self.target_order {
            return Err(GroupError::MismatchedParent {
                expected: self.target_order,
                found: k.parent_order(),
            });
        }
        let pre = Subgroup::new_unchecked(self.source_order(), self.preimage_set(k.members()));
        debug_assert!(pre.index() <= k.index(), "|G/θ⁻¹K| <= |H/K|");
        Ok(pre)
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom{:?}", &self.map[..])
    }
}

/// Extends generator images to a full table by walking the Cayley graph.
/// Returns `None` when the images violate a relation among the generators.
fn extend(g: &Group, h: &Group, gens: &[usize], images: &[usize]) -> Option<Box<[u8]>> {
    const UNSET: u8 = u8::MAX;
    let mut map = vec![UNSET; g.order()];
    map[0] = 0;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        let fx = map[x] as usize;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.op(x, s);
            let fy = h.op(fx, t) as u8;
            if map[y] == UNSET {
                map[y] = fy;
                stack.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map.into_boxed_slice())
}

/// Visits every homomorphism `g -> h` whose generator images pass `allow`,
/// in odometer order (first generator most significant). `visit` returns
/// `false` to stop early.
fn search(
    g: &Group,
    h: &Group,
    allow: impl Fn(usize, usize) -> bool,
    mut visit: impl FnMut(Homomorphism) -> bool,
) {
    let gens = g.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let n = g.element_order(s);
            h.elements()
                .filter(|&y| n.is_multiple_of(h.element_order(y)) && allow(s, y))
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return;
    }
    let mut digits = vec![0usize; gens.len()];
    let mut images = vec![0usize; gens.len()];
    loop {
        for (i, &d) in digits.iter().enumerate() {
            images[i] = candidates[i][d];
        }
        if let Some(map) = extend(g, h, &gens, &images) {
            let hom = Homomorphism {
                map,
                target_order: h.order(),
            };
            debug_assert!(g.order() > 16 || hom.is_homomorphism(g, h));
            if !visit(hom) {
                return;
            }
        }
        // advance the odometer, last generator fastest
        let mut i = gens.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < candidates[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// All homomorphisms `g -> h`, in a deterministic order.
pub fn homs(g: &Group, h: &Group, limits: &Limits) -> Result<Vec<Homomorphism>, GroupError> {
    limits.check(g.order())?;
    limits.check(h.order())?;
    let mut out = Vec::new();
    search(g, h, |_, _| true, |f| {
        out.push(f);
        true
    });
    Ok(out)
}

/// All isomorphisms `g -> h`; empty iff the groups are not isomorphic.
pub fn isomorphisms(g: &Group, h: &Group, limits: &Limits) -> Result<Vec<Homomorphism>, GroupError> {
    limits.check(g.order())?;
    limits.check(h.order())?;
    let mut out = Vec::new();
    if g.order() != h.order() {
        return Ok(out);
    }
    search(
        g,
        h,
        |s, y| g.element_order(s) == h.element_order(y),
        |f| {
            if f.is_injective() {
                out.push(f);
            }
            true
        },
    );
    Ok(out)
}

/// Some isomorphism `g -> h`, if one exists.
pub fn find_isomorphism(g: &Group, h: &Group) -> Option<Homomorphism> {
    find_embedding(g, h, h.all_elements())
}

/// An injective homomorphism `source -> target` with image exactly `image`.
pub fn find_embedding(source: &Group, target: &Group, image: ElementSet) -> Option<Homomorphism> {
    if source.order() != image.len() {
        return None;
    }
    let mut found = None;
    search(
        source,
        target,
        |s, y| image.contains(y) && source.element_order(s) == target.element_order(y),
        |f| {
            if f.is_injective() {
                found = Some(f);
                false
            } else {
                true
            }
        },
    );
    found
}
