use std::sync::Arc;

use super::report::{Construction, Witness};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// Witness for `Γ` from a normal abelian `a0` of a normal subgroup `Γ°`.
///
/// `A = ⋂ g_i⁻¹ a0 g_i` over coset representatives of `Γ/Γ°`; it is normal in
/// `Γ` and `[Γ : A] ≤ ℓ · [Γ° : a0]^ℓ` with `ℓ = [Γ : Γ°]`.
pub fn conjugate_intersection_witness(
    gamma: &Group,
    gamma0: &Subgroup,
    a0: &Subgroup,
    p: u64,
) -> Result<Witness> {
    if !Arc::ptr_eq(gamma0.parent(), gamma) || !Arc::ptr_eq(a0.parent(), gamma) {
        return Err(Error::ParentMismatch);
    }
    if !gamma0.is_normal() {
        return Err(Error::Precondition("inner subgroup is not normal".into()));
    }
    if !a0.is_normal_in(gamma0) || !a0.is_abelian_exhaustive() {
        return Err(Error::Precondition(
            "inner witness must be normal and abelian in the inner subgroup".into(),
        ));
    }
    let whole = Subgroup::whole(gamma);
    let ell = gamma0.index();
    let reps = gamma0.coset_representatives_in(&whole);
    let mut a = a0.clone();
    for &g in &reps {
        a = a.intersect(&a0.conjugate_by(g))?;
    }
    let inner_index = a0.index_in(gamma0) as u64;
    let bound = (inner_index)
        .checked_pow(ell as u32)
        .and_then(|x| x.checked_mul(ell as u64))
        .unwrap_or(u64::MAX);

    let mut all = a0.clone();
    for g in gamma.positions() {
        all = all.intersect(&a0.conjugate_by(g))?;
    }
    let index_in_inner = a.index_in(gamma0) as u64;
    let mut w = Witness::certify(Construction::ConjugateIntersection, a, &whole, p, bound);
    w.check("independent_of_representatives", w.subgroup == all);
    w.check(
        "index_splits",
        w.report.index == ell as u64 * index_in_inner,
    );
    w.chain("outer_index", ell as u64);
    w.chain("inner_witness_index", inner_index);
    w.chain("index_in_inner", index_in_inner);
    w.chain("representatives", reps.len() as u64);
    if bound == u64::MAX {
        w.note("bound saturated at u64::MAX");
    }
    Ok(w)
}
