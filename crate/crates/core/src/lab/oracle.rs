use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_subgroups, normal_subgroups};
use super::sylow::sylow;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::primitives::{is_prime, GroupElement};

/// The optimal normal abelian p'-subgroup of a group.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub p: u64,
    pub subgroup: Subgroup,
    pub index: u64,
    /// Number of normal abelian p'-subgroups examined.
    pub search_space: usize,
}

fn qualifies(s: &Subgroup, p: u64) -> bool {
    s.is_p_prime(p) && s.is_abelian() && s.is_normal()
}

fn pick_best(candidates: Vec<Subgroup>, p: u64) -> Option<(Subgroup, usize)> {
    let qualifying: Vec<Subgroup> = candidates.into_iter().filter(|s| qualifies(s, p)).collect();
    let count = qualifying.len();
    let max_order = qualifying.iter().map(Subgroup::order).max()?;
    // Canonical order puts the lexicographically smallest mask first.
    let best = qualifying
        .into_iter()
        .filter(|s| s.order() == max_order)
        .min_by(Subgroup::canonical_cmp)?;
    Some((best, count))
}

fn check_prime(p: u64) -> Result<()> {
    if p == 0 || is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Maximum-order subgroup that is normal, abelian, and of order prime to `p`
/// (`p = 0`: no order constraint). Scans the normal-subgroup lattice.
pub fn minimal_index_normal_abelian(g: &Group, p: u64, limit: usize) -> Result<OracleResult> {
    check_prime(p)?;
    if g.order() > limit {
        return Err(Error::OverLimit {
            order: g.order(),
            limit,
        });
    }
    let (subgroup, search_space) =
        pick_best(normal_subgroups(g), p).expect("the trivial subgroup always qualifies");
    Ok(OracleResult {
        p,
        index: subgroup.index() as u64,
        subgroup,
        search_space,
    })
}

/// Same optimum, found by scanning every subgroup. Independent of the
/// normal-subgroup lattice; used to cross-check the fast path.
pub fn minimal_index_normal_abelian_by_enumeration(
    g: &Group,
    p: u64,
    limit: usize,
) -> Result<OracleResult> {
    check_prime(p)?;
    let (subgroup, search_space) =
        pick_best(enumerate_subgroups(g, limit)?, p).expect("the trivial subgroup always qualifies");
    Ok(OracleResult {
        p,
        index: subgroup.index() as u64,
        subgroup,
        search_space,
    })
}

/// Serialized oracle summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub group_digest: String,
    pub p: u64,
    pub order: u64,
    pub sylow_order: u64,
    pub min_index: u64,
    pub abelian_subgroup_generators: Vec<GroupElement>,
    pub search_space: usize,
}

impl OracleResult {
    pub fn report(&self) -> OracleReport {
        let g = self.subgroup.parent();
        OracleReport {
            group_digest: g.digest().to_string(),
            p: self.p,
            order: g.order() as u64,
            sylow_order: sylow(g, self.p).subgroup.order() as u64,
            min_index: self.index,
            abelian_subgroup_generators: self.subgroup.generator_elements(),
            search_space: self.search_space,
        }
    }
}
