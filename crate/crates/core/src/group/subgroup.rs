use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::finite::{FiniteGroup, Group};
use super::hom::Homomorphism;
use crate::error::{Error, Result};
use crate::primitives::GroupElement;

/// A subgroup of an explicit group, stored as a membership mask over the
/// parent's element positions.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    mask: FixedBitSet,
    generators: Vec<u32>,
    order: usize,
}

impl Subgroup {
    pub fn trivial(parent: &Group) -> Self {
        let mut mask = FixedBitSet::with_capacity(parent.order());
        mask.insert(parent.identity() as usize);
        Subgroup {
            parent: parent.clone(),
            mask,
            generators: Vec::new(),
            order: 1,
        }
    }

    pub fn whole(parent: &Group) -> Self {
        let mut mask = FixedBitSet::with_capacity(parent.order());
        mask.insert_range(..);
        Subgroup {
            parent: parent.clone(),
            mask,
            generators: parent.generators().to_vec(),
            order: parent.order(),
        }
    }

    /// `⟨gens⟩` inside `parent`.
    pub fn generated(parent: &Group, gens: &[u32]) -> Self {
        Subgroup::trivial(parent)
            .extend_capped(gens, usize::MAX)
            .expect("uncapped closure always succeeds")
    }

    /// `⟨gens⟩` for concrete elements, which must all lie in `parent`.
    pub fn from_elements(parent: &Group, gens: &[GroupElement]) -> Result<Self> {
        let positions = gens
            .iter()
            .map(|g| {
                parent.position(g).ok_or_else(|| {
                    Error::Precondition(format!("{g:?} is not an element of the parent group"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::generated(parent, &positions))
    }

    /// Subgroup generated by `count` elements drawn uniformly with a seeded
    /// ChaCha8 stream.
    pub fn random(parent: &Group, count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = parent.order() as u32;
        let gens: Vec<u32> = (0..count).map(|_| rng.gen_range(0..n)).collect();
        Subgroup::generated(parent, &gens)
    }

    /// `⟨self, extra⟩`, or `None` if it would exceed `cap` elements.
    pub fn extend_capped(&self, extra: &[u32], cap: usize) -> Option<Self> {
        let g = &self.parent;
        let mut gens = self.generators.clone();
        for &x in extra {
            if !self.mask.contains(x as usize) && !gens.contains(&x) && x != g.identity() {
                gens.push(x);
            }
        }
        if gens.len() == self.generators.len() {
            return Some(self.clone());
        }
        let mut mask = self.mask.clone();
        let mut members: Vec<u32> = self.members().collect();
        let mut i = 0;
        while i < members.len() {
            let m = members[i];
            for &s in &gens {
                let y = g.mul(m, s);
                if !mask.put(y as usize) {
                    members.push(y);
                    if members.len() > cap {
                        return None;
                    }
                }
            }
            i += 1;
        }
        Some(Subgroup {
            parent: g.clone(),
            order: members.len(),
            mask,
            generators: gens,
        })
    }

    /// Build from a membership mask after checking closure.
    pub fn from_mask(parent: &Group, mask: FixedBitSet) -> Result<Self> {
        if mask.len() != parent.order() {
            return Err(Error::Precondition("mask length differs from group order".into()));
        }
        if !mask.contains(parent.identity() as usize) {
            return Err(Error::Precondition("mask does not contain the identity".into()));
        }
        let members: Vec<u32> = mask.ones().map(|i| i as u32).collect();
        for &a in &members {
            if !mask.contains(parent.inv(a) as usize) {
                return Err(Error::Precondition("mask is not closed under inversion".into()));
            }
            for &b in &members {
                if !mask.contains(parent.mul(a, b) as usize) {
                    return Err(Error::Precondition(
                        "mask is not closed under composition".into(),
                    ));
                }
            }
        }
        Ok(Subgroup::from_mask_trusted(parent, mask))
    }

    /// Build from a mask known to be a subgroup; recomputes a generating set.
    pub(crate) fn from_mask_trusted(parent: &Group, mask: FixedBitSet) -> Self {
        let order = mask.count_ones(..);
        let mut sub = Subgroup::trivial(parent);
        for x in mask.ones() {
            if sub.order == order {
                break;
            }
            if !sub.contains(x as u32) {
                sub = sub.extend_capped(&[x as u32], order).expect("inside the mask");
            }
        }
        debug_assert_eq!(sub.mask, mask);
        sub
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<GroupElement> {
        self.generators
            .iter()
            .map(|&g| self.parent.element(g).clone())
            .collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `[parent : self]`.
    pub fn index(&self) -> usize {
        self.parent.order() / self.order
    }

    /// `[other : self]`; `self` must lie inside `other`.
    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.order / self.order
    }

    pub fn contains(&self, a: u32) -> bool {
        self.mask.contains(a as usize)
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        self.mask.ones().map(|i| i as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.parent.order()
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent)
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.same_parent(other) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.same_parent(other) && self.mask.is_subset(&other.mask)
    }

    /// Normal in the parent, checked against every parent element.
    pub fn is_normal(&self) -> bool {
        self.is_normalized_by(self.parent.positions())
    }

    /// Normal inside `other` (which must contain `self`).
    pub fn is_normal_in(&self, other: &Subgroup) -> bool {
        self.is_subgroup_of(other) && self.is_normalized_by(other.members())
    }

    fn is_normalized_by(&self, conjugators: impl Iterator<Item = u32>) -> bool {
        let g = &self.parent;
        let members: Vec<u32> = self.members().collect();
        for x in conjugators {
            if self.contains(x) {
                continue;
            }
            if members.iter().any(|&h| !self.contains(g.conjugate(h, x))) {
                return false;
            }
        }
        true
    }

    /// Abelian, checked on generators only.
    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        self.generators
            .iter()
            .enumerate()
            .all(|(i, &a)| self.generators[i + 1..].iter().all(|&b| g.commute(a, b)))
    }

    /// Abelian, checked on every pair of members.
    pub fn is_abelian_exhaustive(&self) -> bool {
        let g = &self.parent;
        let members: Vec<u32> = self.members().collect();
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| g.commute(a, b)))
    }

    /// Order not divisible by `p`; vacuous for `p = 0`.
    pub fn is_p_prime(&self, p: u64) -> bool {
        p < 2 || self.order as u64 % p != 0
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let mut mask = self.mask.clone();
        mask.intersect_with(&other.mask);
        Ok(Subgroup::from_mask_trusted(&self.parent, mask))
    }

    /// `⟨self, other⟩`.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        if other.is_subgroup_of(self) {
            return Ok(self.clone());
        }
        Ok(self
            .extend_capped(&other.generators, usize::MAX)
            .expect("uncapped"))
    }

    /// The set `self · other = { a b }`, returned only if it is a subgroup.
    pub fn set_product(&self, other: &Subgroup) -> Result<Option<Subgroup>> {
        self.check_parent(other)?;
        let g = &self.parent;
        let mut mask = FixedBitSet::with_capacity(g.order());
        let right: Vec<u32> = other.members().collect();
        for a in self.members() {
            for &b in &right {
                mask.insert(g.mul(a, b) as usize);
            }
        }
        Ok(Subgroup::from_mask(g, mask).ok())
    }

    /// `x⁻¹ · self · x`.
    pub fn conjugate_by(&self, x: u32) -> Subgroup {
        let g = &self.parent;
        let mut mask = FixedBitSet::with_capacity(g.order());
        for h in self.members() {
            mask.insert(g.conjugate(h, x) as usize);
        }
        Subgroup {
            parent: g.clone(),
            mask,
            generators: self.generators.iter().map(|&h| g.conjugate(h, x)).collect(),
            order: self.order,
        }
    }

    /// `C_G(self)`.
    pub fn centralizer(&self) -> Subgroup {
        let g = &self.parent;
        let mut mask = FixedBitSet::with_capacity(g.order());
        for x in g.positions() {
            if self.generators.iter().all(|&h| g.commute(x, h)) {
                mask.insert(x as usize);
            }
        }
        Subgroup::from_mask_trusted(g, mask)
    }

    /// Number of cosets `x · self` meeting `ambient`, counted by explicit
    /// labelling rather than by dividing orders.
    pub fn coset_count_in(&self, ambient: &Subgroup) -> usize {
        let g = &self.parent;
        let members: Vec<u32> = self.members().collect();
        let mut seen = FixedBitSet::with_capacity(g.order());
        let mut count = 0;
        for x in ambient.members() {
            if seen.contains(x as usize) {
                continue;
            }
            count += 1;
            for &h in &members {
                seen.insert(g.mul(x, h) as usize);
            }
        }
        count
    }

    /// Minimal representatives of the cosets `x · self` inside `ambient`.
    pub fn coset_representatives_in(&self, ambient: &Subgroup) -> Vec<u32> {
        let g = &self.parent;
        let members: Vec<u32> = self.members().collect();
        let mut seen = FixedBitSet::with_capacity(g.order());
        let mut reps = Vec::new();
        for x in ambient.members() {
            if seen.contains(x as usize) {
                continue;
            }
            reps.push(x);
            for &h in &members {
                seen.insert(g.mul(x, h) as usize);
            }
        }
        reps
    }

    /// Digest of the member list; equals the digest of [`Subgroup::to_group`].
    pub fn digest(&self) -> String {
        super::finite::element_digest(self.members().map(|a| self.parent.element(a)))
    }

    /// Least common multiple of member orders.
    pub fn exponent(&self) -> u64 {
        self.members()
            .map(|a| self.parent.element_order(a))
            .fold(1, num_integer::lcm)
    }

    /// This subgroup as a group of its own, with the inclusion map.
    pub fn to_group(&self) -> (Group, Homomorphism) {
        let members: Vec<u32> = self.members().collect();
        let group = Arc::new(FiniteGroup::embedded(&self.parent, members.clone(), &self.generators));
        let inclusion = Homomorphism::trusted(group.clone(), self.parent.clone(), members);
        (group, inclusion)
    }

    /// Canonical order: by size, then lexicographically on the sorted member
    /// positions.
    pub fn canonical_cmp(&self, other: &Subgroup) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.mask.ones().cmp(other.mask.ones()))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_parent(other) && self.mask == other.mask
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order)
            .field("parent_order", &self.parent.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// `a ∩ b`; both must share a parent.
pub fn intersect(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    a.intersect(b)
}
