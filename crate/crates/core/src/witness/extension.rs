use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::complement::schur_zassenhaus;
use super::report::{Construction, Witness};
use crate::error::{Error, Result};
use crate::group::{quotient, Group, QuotientGroup, Subgroup};
use crate::lab::{is_p_prime, minimal_index_normal_abelian, sylow, sylow_of_subgroup};

/// An extension `1 → K → H → Γ → 1` with `Γ = H/K` built explicitly.
#[derive(Clone)]
pub struct ExtensionInstance {
    pub total: Group,
    pub kernel: Subgroup,
    pub quotient: QuotientGroup,
}

/// Sylow orders of the three terms of an extension at one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowOrders {
    pub p: u64,
    pub total: u64,
    pub kernel: u64,
    pub quotient: u64,
}

impl SylowOrders {
    pub fn multiplicative(&self) -> bool {
        self.total == self.kernel * self.quotient
    }
}

impl ExtensionInstance {
    pub fn new(total: &Group, kernel: Subgroup) -> Result<Self> {
        if !Arc::ptr_eq(kernel.parent(), total) {
            return Err(Error::ParentMismatch);
        }
        let quotient = quotient(total, &kernel)?;
        debug_assert_eq!(kernel.order() * quotient.group.order(), total.order());
        Ok(ExtensionInstance {
            total: total.clone(),
            kernel,
            quotient,
        })
    }

    pub fn gamma(&self) -> &Group {
        &self.quotient.group
    }

    /// Sylow orders measured on constructed Sylow subgroups of `H`, `K`, `Γ`.
    pub fn sylow_orders(&self, p: u64) -> SylowOrders {
        SylowOrders {
            p,
            total: sylow(&self.total, p).subgroup.order() as u64,
            kernel: sylow_of_subgroup(&self.kernel, p).subgroup.order() as u64,
            quotient: sylow(self.gamma(), p).subgroup.order() as u64,
        }
    }
}

/// Witness for a p'-quotient `Γ = H/K` when `K` has a normal Sylow
/// p-subgroup `K_(p)`.
///
/// `K_(p)` is then the normal Sylow subgroup of `H`; a Hall complement `H_C`
/// of it is a p'-group mapping onto `Γ`. The oracle supplies the witness for
/// `H_C` and its image in `Γ` is returned, with
/// `[Γ : A] ≤ [H_C : A_{H_C}] ≤ base_bound` recorded.
pub fn quotient_witness_pprime(
    ext: &ExtensionInstance,
    p: u64,
    base_bound: u64,
) -> Result<Witness> {
    let gamma = ext.gamma();
    if !is_p_prime(gamma, p) {
        return Err(Error::Precondition(format!(
            "quotient of order {} is not a {p}'-group",
            gamma.order()
        )));
    }
    let kp = sylow_of_subgroup(&ext.kernel, p);
    if !kp.is_normal {
        return Err(Error::Precondition(
            "kernel has no normal Sylow subgroup at p".into(),
        ));
    }
    let kp = kp.subgroup;
    let total_sylow = sylow(&ext.total, p).subgroup.order();
    let kp_normal_in_total = kp.is_normal();
    if !kp_normal_in_total || kp.order() != total_sylow {
        return Err(Error::Precondition(
            "kernel Sylow subgroup is not the normal Sylow subgroup of the total group".into(),
        ));
    }
    let complement = if kp.is_trivial() {
        Subgroup::whole(&ext.total)
    } else {
        schur_zassenhaus(&ext.total, &kp)?
    };
    let (hc, inclusion) = complement.to_group();
    let inner = minimal_index_normal_abelian(&hc, p, hc.order())?;
    let inner_in_total = inclusion.image_of_subgroup(&inner.subgroup)?;
    let image = ext.quotient.image(&inner_in_total)?;

    let construction = if kp.is_trivial() {
        Construction::QuotientCoprimeKernel
    } else {
        Construction::QuotientPPrime
    };
    let mut w = Witness::certify(construction, image, &Subgroup::whole(gamma), p, base_bound);
    let inner_index = inner.index;
    w.chain("kernel_sylow_order", kp.order() as u64);
    w.chain("complement_order", complement.order() as u64);
    w.chain("complement_witness_index", inner_index);
    w.chain("base_bound", base_bound);
    w.check("complement_maps_onto_quotient", ext.quotient.image(&complement)?.is_whole());
    w.check("kernel_sylow_normal_in_total", kp_normal_in_total);
    w.check("index_le_complement_index", w.report.index <= inner_index);
    w.check("complement_index_le_bound", inner_index <= base_bound);
    if kp.is_trivial() {
        w.note(
            "reconstructed route: kernel has order prime to p, so the complement \
             is the whole extension and the witness is the image of its oracle optimum",
        );
    }
    Ok(w)
}

/// Witness for `Γ = H/K` as the image of a normal abelian p'-subgroup `a_h`
/// of `H`, with `[Γ : A] ≤ [H : a_h]`.
///
/// When `(j_prime, exponent)` is given, the decomposition
/// `J'·|K_(p)|^e·|Γ_(p)|^e` is evaluated and compared with `[H : a_h]`.
pub fn quotient_witness_general(
    ext: &ExtensionInstance,
    p: u64,
    a_h: &Subgroup,
    decomposition: Option<(u64, u32)>,
) -> Result<Witness> {
    if !Arc::ptr_eq(a_h.parent(), &ext.total) {
        return Err(Error::Precondition("witness is not a subgroup of the total group".into()));
    }
    if !a_h.is_normal() || !a_h.is_abelian_exhaustive() || !a_h.is_p_prime(p) {
        return Err(Error::Precondition(
            "witness must be a normal abelian p'-subgroup of the total group".into(),
        ));
    }
    let gamma = ext.gamma();
    let image = ext.quotient.image(a_h)?;
    let total_index = a_h.index() as u64;
    let mut w = Witness::certify(
        Construction::QuotientGeneral,
        image,
        &Subgroup::whole(gamma),
        p,
        total_index,
    );
    w.chain("total_witness_index", total_index);
    if p >= 2 {
        let orders = ext.sylow_orders(p);
        w.chain("total_sylow_order", orders.total);
        w.chain("kernel_sylow_order", orders.kernel);
        w.chain("quotient_sylow_order", orders.quotient);
        w.check("sylow_multiplicative", orders.multiplicative());
        if let Some((j_prime, e)) = decomposition {
            let value = BigUint::from(j_prime)
                * BigUint::from(orders.kernel).pow(e)
                * BigUint::from(orders.quotient).pow(e);
            w.check("total_index_le_decomposition", BigUint::from(total_index) <= value);
            w.report.decomposition_bound = Some(value.to_string());
            w.chain("decomposition_exponent", e as u64);
            w.chain("decomposition_constant", j_prime);
        }
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingReport {
    pub kernel_order: u64,
    pub quotient_order: u64,
    pub rank: u32,
    pub kernel_exponent: u64,
    /// `|S|` divides `|Γ|^r`.
    pub order_divides: bool,
    /// `exp(S)` divides `|Γ|`, i.e. `S` sits in the `|Γ|`-torsion.
    pub exponent_divides: bool,
    pub holds: bool,
}

/// Both divisibilities expected of a torus-torsion kernel `S` in
/// `1 → S → F → Γ → 1` for a torus of rank `r`.
pub fn lifting_divisibility_check(ext: &ExtensionInstance, r: u32) -> Result<LiftingReport> {
    let s = &ext.kernel;
    if !s.is_abelian_exhaustive() {
        return Err(Error::ModelViolation("kernel is not abelian".into()));
    }
    let n = ext.gamma().order() as u64;
    let order = s.order() as u64;
    let power = BigUint::from(n).pow(r);
    let order_divides = (&power % BigUint::from(order)).is_zero();
    let exponent = s.exponent();
    let exponent_divides = n % exponent == 0;
    Ok(LiftingReport {
        kernel_order: order,
        quotient_order: n,
        rank: r,
        kernel_exponent: exponent,
        order_divides,
        exponent_divides,
        holds: order_divides && exponent_divides,
    })
}
