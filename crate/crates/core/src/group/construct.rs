use std::sync::Arc;

use super::finite::{FiniteGroup, Group};
use super::hom::Homomorphism;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// `G₁ × G₂` together with both projections.
#[derive(Clone)]
pub struct DirectProduct {
    pub group: Group,
    pub left: Group,
    pub right: Group,
    pub proj_left: Homomorphism,
    pub proj_right: Homomorphism,
}

impl DirectProduct {
    /// Position of the pair `(a, b)`.
    pub fn pair(&self, a: u32, b: u32) -> u32 {
        a * self.right.order() as u32 + b
    }

    /// `A × B` as a subgroup of the product.
    pub fn product_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        if !Arc::ptr_eq(a.parent(), &self.left) || !Arc::ptr_eq(b.parent(), &self.right) {
            return Err(Error::ParentMismatch);
        }
        let mut gens: Vec<u32> = a
            .generators()
            .iter()
            .map(|&x| self.pair(x, self.right.identity()))
            .collect();
        gens.extend(b.generators().iter().map(|&y| self.pair(self.left.identity(), y)));
        Ok(Subgroup::generated(&self.group, &gens))
    }

    /// The diagonal `{(x, x)}`; both factors must be the same group.
    pub fn diagonal(&self) -> Result<Subgroup> {
        if self.left.digest() != self.right.digest() {
            return Err(Error::Precondition(
                "diagonal needs identical factors".into(),
            ));
        }
        let gens: Vec<u32> = self.left.generators().iter().map(|&x| self.pair(x, x)).collect();
        Ok(Subgroup::generated(&self.group, &gens))
    }
}

/// `g1 × g2`, refusing products larger than `cap`.
pub fn direct_product(g1: &Group, g2: &Group, cap: usize) -> Result<DirectProduct> {
    let n = g1.order() * g2.order();
    if n > cap {
        return Err(Error::OrderCapExceeded { cap, reached: n });
    }
    let group = Arc::new(FiniteGroup::product_of(g1, g2));
    let n2 = g2.order() as u32;
    let proj_left = Homomorphism::trusted(
        group.clone(),
        g1.clone(),
        group.positions().map(|a| a / n2).collect(),
    );
    let proj_right = Homomorphism::trusted(
        group.clone(),
        g2.clone(),
        group.positions().map(|a| a % n2).collect(),
    );
    Ok(DirectProduct {
        group,
        left: g1.clone(),
        right: g2.clone(),
        proj_left,
        proj_right,
    })
}

/// `G / N` with its projection. Quotient elements are the canonical
/// (minimal) coset representatives.
#[derive(Clone)]
pub struct QuotientGroup {
    pub base: Group,
    pub kernel: Subgroup,
    pub group: Group,
    /// Base positions of the coset representatives, indexed by quotient position.
    pub representatives: Vec<u32>,
    pub projection: Homomorphism,
}

impl QuotientGroup {
    /// `π(s)` for a subgroup of the base.
    pub fn image(&self, s: &Subgroup) -> Result<Subgroup> {
        self.projection.image_of_subgroup(s)
    }

    /// `π⁻¹(t)` for a subgroup of the quotient.
    pub fn pullback(&self, t: &Subgroup) -> Result<Subgroup> {
        self.projection.preimage(t)
    }
}

pub fn quotient(g: &Group, n: &Subgroup) -> Result<QuotientGroup> {
    if !Arc::ptr_eq(n.parent(), g) {
        return Err(Error::ParentMismatch);
    }
    if !n.is_normal() {
        return Err(Error::NotNormal(display_name(g)));
    }
    let members: Vec<u32> = n.members().collect();
    let mut label = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    // Positions are in canonical order, so the first unlabelled element of
    // each coset is its minimal representative.
    for x in g.positions() {
        if label[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &h in &members {
            label[g.mul(x, h) as usize] = c;
        }
    }
    let group = Arc::new(FiniteGroup::quotient_of(g, label.clone(), reps.clone()));
    let projection = Homomorphism::trusted(g.clone(), group.clone(), label);
    Ok(QuotientGroup {
        base: g.clone(),
        kernel: n.clone(),
        group,
        representatives: reps,
        projection,
    })
}

fn display_name(g: &Group) -> String {
    if g.name().is_empty() {
        format!("group of order {}", g.order())
    } else {
        g.name().to_string()
    }
}
