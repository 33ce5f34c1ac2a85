//! Explicit finite groups: closure from generators, subgroups as masks,
//! direct products, quotients, and verified homomorphisms.

mod construct;
mod definition;
mod finite;
mod hom;
mod subgroup;

pub use construct::{direct_product, quotient, DirectProduct, QuotientGroup};
pub use definition::GroupDefinition;
pub use finite::{FiniteGroup, Group, DEFAULT_CAP, TABLE_LIMIT};
pub use hom::{preimage, Homomorphism, Verification, EXHAUSTIVE_LIMIT};
pub use subgroup::{intersect, Subgroup};

use crate::error::Result;
use crate::primitives::GroupElement;

/// Free-function form of [`FiniteGroup::closure`].
pub fn closure(gens: &[GroupElement], cap: usize) -> Result<Group> {
    FiniteGroup::closure(gens, cap)
}
