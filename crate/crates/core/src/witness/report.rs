use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::group::Subgroup;
use crate::primitives::GroupElement;

/// Which proof construction produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// Intersection of pulled-back witnesses from the two factors.
    Product,
    /// Image of a witness for a Hall complement of the kernel's Sylow subgroup.
    QuotientPPrime,
    /// Same route when the kernel itself has order prime to p.
    QuotientCoprimeKernel,
    /// Image of a witness for the whole extension.
    QuotientGeneral,
    /// Intersection of the conjugates of a witness for a normal subgroup.
    ConjugateIntersection,
    /// Elements of the center whose order is prime to p.
    CenterPPrime,
}

impl Construction {
    pub fn tag(self) -> &'static str {
        match self {
            Construction::Product => "product",
            Construction::QuotientPPrime => "quotient-pprime",
            Construction::QuotientCoprimeKernel => "quotient-coprime-kernel",
            Construction::QuotientGeneral => "quotient-general",
            Construction::ConjugateIntersection => "conjugate-intersection",
            Construction::CenterPPrime => "center-pprime",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    pub normal: bool,
    pub abelian: bool,
    pub p_prime: bool,
}

impl Certificates {
    pub fn all(&self) -> bool {
        self.normal && self.abelian && self.p_prime
    }
}

/// Serializable summary of a witness.
///
/// A violated bound is recorded here (`bound_satisfied = false`) instead of
/// being raised as an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub construction: Construction,
    /// Digest of the ambient group the witness lives in.
    pub group_digest: String,
    pub order: u64,
    pub p: u64,
    pub index: u64,
    pub bound: u64,
    pub bound_satisfied: bool,
    pub certificates: Certificates,
    pub chain_values: BTreeMap<String, u64>,
    pub checks: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition_bound: Option<String>,
    pub subgroup_generators: Vec<GroupElement>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl WitnessReport {
    /// True when the bound or any recorded identity failed.
    pub fn falsified(&self) -> bool {
        !self.bound_satisfied || !self.certificates.all() || self.checks.values().any(|ok| !ok)
    }
}

/// A constructed subgroup plus its certified report.
#[derive(Debug, Clone)]
pub struct Witness {
    pub subgroup: Subgroup,
    pub report: WitnessReport,
}

impl Witness {
    /// Run the three certificate checks exhaustively against `ambient`
    /// (a subgroup of the same parent containing `subgroup`).
    pub(crate) fn certify(
        construction: Construction,
        subgroup: Subgroup,
        ambient: &Subgroup,
        p: u64,
        bound: u64,
    ) -> Witness {
        let certificates = Certificates {
            normal: subgroup.is_normal_in(ambient),
            abelian: subgroup.is_abelian_exhaustive(),
            p_prime: subgroup.is_p_prime(p),
        };
        let index = subgroup.index_in(ambient) as u64;
        let report = WitnessReport {
            construction,
            group_digest: if ambient.is_whole() {
                ambient.parent().digest().to_string()
            } else {
                ambient.digest()
            },
            order: ambient.order() as u64,
            p,
            index,
            bound,
            bound_satisfied: index <= bound,
            certificates,
            chain_values: BTreeMap::new(),
            checks: BTreeMap::new(),
            decomposition_bound: None,
            subgroup_generators: subgroup.generator_elements(),
            notes: Vec::new(),
        };
        Witness { subgroup, report }
    }

    pub(crate) fn chain(&mut self, key: &str, value: u64) {
        self.report.chain_values.insert(key.to_string(), value);
    }

    pub(crate) fn check(&mut self, key: &str, ok: bool) {
        self.report.checks.insert(key.to_string(), ok);
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.report.notes.push(note.into());
    }
}
