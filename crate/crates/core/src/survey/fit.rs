use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::catalog::Catalog;
use super::record::{Ratio, Status, SurveyRecord};
use crate::constants::exponent;
use crate::error::{Error, Result};

/// Smallest constant `J'` with `index ≤ J'·|Γ_(p)|³` across a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFit {
    pub family: String,
    pub dim: Option<u32>,
    /// Maximum ratio, reduced.
    pub fitted: Ratio,
    /// The same value as recorded by the maximizing entry.
    pub attained: Ratio,
    pub argmax: String,
    pub records: usize,
    /// Records without an exact optimum (errors, witness-only).
    pub excluded: usize,
}

/// Fits one family. Only records with an exact oracle optimum count; the
/// first record wins ties.
pub fn fit_family_constant(records: &[SurveyRecord]) -> Result<FamilyFit> {
    let mut best: Option<(&SurveyRecord, Ratio)> = None;
    let mut used = 0;
    for r in records {
        let Some(ratio) = r.ratio.filter(|_| r.status == Status::Ok) else {
            continue;
        };
        used += 1;
        if best.map_or(true, |(_, b)| ratio.cmp_value(&b).is_gt()) {
            best = Some((r, ratio));
        }
    }
    let (arg, ratio) = best.ok_or(Error::EmptyFamily)?;
    Ok(FamilyFit {
        family: arg.family.clone(),
        dim: arg.dim,
        fitted: ratio.reduced(),
        attained: ratio,
        argmax: arg.name.clone(),
        records: used,
        excluded: records.len() - used,
    })
}

/// Fits every (family, dim) group, in order of first appearance. Groups
/// with no usable record are skipped.
pub fn fit_families(records: &[SurveyRecord]) -> Vec<FamilyFit> {
    let mut keys: Vec<(String, Option<u32>)> = Vec::new();
    for r in records {
        let k = (r.family.clone(), r.dim);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .filter_map(|(family, dim)| {
            let group: Vec<SurveyRecord> = records
                .iter()
                .filter(|r| r.family == family && r.dim == dim)
                .cloned()
                .collect();
            fit_family_constant(&group).ok()
        })
        .collect()
}

/// `index ≤ J'_G · |Γ_(p)|^{e_G}` for a profiled entry, with `J'(n)` set to
/// the fitted family constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCheck {
    pub name: String,
    pub index: u64,
    pub fitted: Ratio,
    pub exponent: u64,
    /// `J'_G · |Γ_(p)|^{e_G}` as an exact rational, unreduced.
    pub bound: String,
    pub holds: bool,
}

pub fn profile_checks(
    catalog: &Catalog,
    records: &[SurveyRecord],
    fits: &[FamilyFit],
) -> Vec<ProfileCheck> {
    let mut out = Vec::new();
    for r in records {
        let (Some(entry), Some(index)) = (catalog.get(&r.name), r.oracle_index) else {
            continue;
        };
        let Some(profile) = &entry.def.profile else {
            continue;
        };
        let Some(fit) = fits.iter().find(|f| f.family == r.family && f.dim == r.dim) else {
            continue;
        };
        let e = exponent(profile) as u32;
        let c = profile.c_g;
        // c·(num/den)^c·kp^e·sylow^e, compared after clearing den^c.
        let num = BigUint::from(c)
            * BigUint::from(fit.fitted.num).pow(c)
            * BigUint::from(profile.kp_order).pow(e)
            * BigUint::from(r.sylow_order).pow(e);
        let den = BigUint::from(fit.fitted.den).pow(c);
        out.push(ProfileCheck {
            name: r.name.clone(),
            index,
            fitted: fit.fitted,
            exponent: e as u64,
            bound: format!("{num}/{den}"),
            holds: BigUint::from(index) * &den <= num,
        });
    }
    out
}
