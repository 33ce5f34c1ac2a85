use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// Default order limit for full subgroup enumeration.
pub const ENUMERATION_LIMIT: usize = 400;

/// Distinct cyclic subgroups, in canonical order.
pub fn cyclic_subgroups(g: &Group) -> Vec<Subgroup> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut out = Vec::new();
    for x in g.positions() {
        let c = Subgroup::generated(g, &[x]);
        if seen.insert(c.mask().clone()) {
            out.push(c);
        }
    }
    out.sort_by(Subgroup::canonical_cmp);
    out
}

/// Every subgroup of `g`, each exactly once, in canonical order.
///
/// Cyclic extension: starting from the trivial group, repeatedly adjoin a
/// cyclic subgroup and keep whatever is new. Every subgroup is a join of its
/// cyclic subgroups, so the frontier eventually reaches all of them.
pub fn enumerate_subgroups(g: &Group, limit: usize) -> Result<Vec<Subgroup>> {
    if g.order() > limit {
        return Err(Error::OverLimit {
            order: g.order(),
            limit,
        });
    }
    let cyclics = cyclic_subgroups(g);
    let cyclic_gens: Vec<u32> = cyclics
        .iter()
        .map(|c| c.generators().first().copied().unwrap_or(g.identity()))
        .collect();
    let trivial = Subgroup::trivial(g);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    seen.insert(trivial.mask().clone());
    let mut all = vec![trivial.clone()];
    let mut frontier = vec![trivial];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for (c, &z) in cyclics.iter().zip(&cyclic_gens) {
                if c.is_subgroup_of(h) {
                    continue;
                }
                let k = h.extend_capped(&[z], usize::MAX).expect("uncapped");
                if seen.insert(k.mask().clone()) {
                    next.push(k);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(Subgroup::canonical_cmp);
    Ok(all)
}

/// Conjugacy classes as lists of positions, ordered by their minimal member.
pub fn conjugacy_classes(g: &Group) -> Vec<Vec<u32>> {
    let mut seen = FixedBitSet::with_capacity(g.order());
    let mut classes = Vec::new();
    for x in g.positions() {
        if seen.contains(x as usize) {
            continue;
        }
        let mut class = Vec::new();
        for y in g.positions() {
            let c = g.conjugate(x, y);
            if !seen.put(c as usize) {
                class.push(c);
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// Every normal subgroup, in canonical order.
///
/// Normal subgroups are exactly the joins of normal closures of conjugacy
/// classes; this closes that set under joins.
pub fn normal_subgroups(g: &Group) -> Vec<Subgroup> {
    let closures: Vec<Subgroup> = conjugacy_classes(g)
        .iter()
        .map(|class| Subgroup::generated(g, class))
        .collect();
    let trivial = Subgroup::trivial(g);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    seen.insert(trivial.mask().clone());
    let mut all = vec![trivial.clone()];
    let mut frontier = vec![trivial];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for n in &frontier {
            for c in &closures {
                if c.is_subgroup_of(n) {
                    continue;
                }
                let k = n.join(c).expect("same parent");
                if seen.insert(k.mask().clone()) {
                    next.push(k);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(Subgroup::canonical_cmp);
    all
}

/// `Z(G)`.
pub fn center(g: &Group) -> Subgroup {
    Subgroup::whole(g).centralizer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{closure, DEFAULT_CAP};
    use crate::primitives::GroupElement;

    fn s3() -> Group {
        closure(
            &[
                GroupElement::cycles(3, &[&[0, 1]]).unwrap(),
                GroupElement::cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    fn q8() -> Group {
        closure(
            &[
                GroupElement::matrix(3, &[vec![0, 2], vec![1, 0]]).unwrap(),
                GroupElement::matrix(3, &[vec![1, 1], vec![1, 2]]).unwrap(),
            ],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    #[test]
    fn prime_cyclic_has_two_subgroups() {
        for n in [2usize, 3, 5, 7] {
            let cycle: Vec<usize> = (0..n).collect();
            let g = closure(&[GroupElement::cycles(n, &[&cycle]).unwrap()], DEFAULT_CAP).unwrap();
            assert_eq!(enumerate_subgroups(&g, ENUMERATION_LIMIT).unwrap().len(), 2);
        }
    }

    #[test]
    fn s3_subgroups() {
        let subs = enumerate_subgroups(&s3(), ENUMERATION_LIMIT).unwrap();
        let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(normal_subgroups(&s3()).len(), 3);
    }

    #[test]
    fn q8_subgroups() {
        let g = q8();
        assert_eq!(g.order(), 8);
        assert_eq!(enumerate_subgroups(&g, ENUMERATION_LIMIT).unwrap().len(), 6);
        // every subgroup of Q8 is normal
        assert_eq!(normal_subgroups(&g).len(), 6);
        assert_eq!(center(&g).order(), 2);
    }

    #[test]
    fn over_limit() {
        assert!(matches!(
            enumerate_subgroups(&s3(), 5),
            Err(Error::OverLimit { order: 6, limit: 5 })
        ));
    }

    #[test]
    fn s3_classes() {
        let sizes: Vec<usize> = conjugacy_classes(&s3()).iter().map(Vec::len).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3]);
    }
}
