//! Executable witness constructions. Each returns the subgroup it built
//! together with a [`WitnessReport`] whose certificates are checked
//! exhaustively and whose index bound is compared literally.

mod complement;
mod conjugate;
mod extension;
mod product;
mod report;

pub use complement::{complement_by_cocycle, complement_by_search, schur_zassenhaus, SEARCH_BUDGET};
pub use conjugate::conjugate_intersection_witness;
pub use extension::{
    lifting_divisibility_check, quotient_witness_general, quotient_witness_pprime,
    ExtensionInstance, LiftingReport, SylowOrders,
};
pub use product::product_witness;
pub use report::{Certificates, Construction, Witness, WitnessReport};

use crate::group::{Group, Subgroup};
use crate::lab::center;

/// The p'-part of the center: always a normal abelian p'-subgroup, and cheap
/// enough for groups too large for the oracle.
pub fn center_witness(g: &Group, p: u64) -> Witness {
    let z = center(g);
    let pprime: Vec<u32> = z
        .members()
        .filter(|&x| p < 2 || g.element_order(x) % p != 0)
        .collect();
    let a = Subgroup::generated(g, &pprime);
    let bound = g.order() as u64;
    Witness::certify(Construction::CenterPPrime, a, &Subgroup::whole(g), p, bound)
}
