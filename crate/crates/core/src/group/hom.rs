use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::finite::Group;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// Domains up to this order are checked on every pair.
pub const EXHAUSTIVE_LIMIT: usize = 4096;

/// How multiplicativity was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Verification {
    Exhaustive,
    Sampled { pairs: u64, seed: u64 },
    /// Built by the engine from structure known to be multiplicative
    /// (projections, quotient maps, inclusions).
    Structural,
}

/// An element-level map between explicit groups.
#[derive(Clone)]
pub struct Homomorphism {
    domain: Group,
    codomain: Group,
    image_of: Vec<u32>,
    verification: Verification,
}

impl Homomorphism {
    /// Check multiplicativity: exhaustively up to [`EXHAUSTIVE_LIMIT`], on
    /// `10·|domain|` seeded random pairs above.
    pub fn new(domain: Group, codomain: Group, image_of: Vec<u32>, seed: u64) -> Result<Self> {
        if image_of.len() != domain.order() {
            return Err(Error::NotHomomorphism(format!(
                "image table has {} entries for a domain of order {}",
                image_of.len(),
                domain.order()
            )));
        }
        if let Some(&bad) = image_of.iter().find(|&&y| y as usize >= codomain.order()) {
            return Err(Error::NotHomomorphism(format!("image {bad} out of range")));
        }
        if image_of[domain.identity() as usize] != codomain.identity() {
            return Err(Error::NotHomomorphism("identity is not preserved".into()));
        }
        let check = |a: u32, b: u32| -> Result<()> {
            let lhs = image_of[domain.mul(a, b) as usize];
            let rhs = codomain.mul(image_of[a as usize], image_of[b as usize]);
            if lhs == rhs {
                Ok(())
            } else {
                Err(Error::NotHomomorphism(format!("fails on pair ({a}, {b})")))
            }
        };
        let n = domain.order();
        let verification = if n <= EXHAUSTIVE_LIMIT {
            for a in domain.positions() {
                for b in domain.positions() {
                    check(a, b)?;
                }
            }
            Verification::Exhaustive
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pairs = 10 * n as u64;
            for _ in 0..pairs {
                check(rng.gen_range(0..n as u32), rng.gen_range(0..n as u32))?;
            }
            Verification::Sampled { pairs, seed }
        };
        Ok(Homomorphism {
            domain,
            codomain,
            image_of,
            verification,
        })
    }

    pub(crate) fn trusted(domain: Group, codomain: Group, image_of: Vec<u32>) -> Self {
        Homomorphism {
            domain,
            codomain,
            image_of,
            verification: Verification::Structural,
        }
    }

    pub fn domain(&self) -> &Group {
        &self.domain
    }

    pub fn codomain(&self) -> &Group {
        &self.codomain
    }

    pub fn verification(&self) -> Verification {
        self.verification
    }

    pub fn apply(&self, a: u32) -> u32 {
        self.image_of[a as usize]
    }

    pub fn kernel(&self) -> Subgroup {
        self.preimage(&Subgroup::trivial(&self.codomain))
            .expect("trivial subgroup lives in the codomain")
    }

    pub fn image(&self) -> Subgroup {
        self.image_of_subgroup(&Subgroup::whole(&self.domain))
            .expect("whole domain")
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// `h(s)` for a subgroup `s` of the domain.
    pub fn image_of_subgroup(&self, s: &Subgroup) -> Result<Subgroup> {
        if !Arc::ptr_eq(s.parent(), &self.domain) {
            return Err(Error::ParentMismatch);
        }
        let mut mask = FixedBitSet::with_capacity(self.codomain.order());
        for a in s.members() {
            mask.insert(self.apply(a) as usize);
        }
        Ok(Subgroup::from_mask_trusted(&self.codomain, mask))
    }

    /// Full preimage `h⁻¹(s)` of a subgroup of the codomain.
    pub fn preimage(&self, s: &Subgroup) -> Result<Subgroup> {
        if !Arc::ptr_eq(s.parent(), &self.codomain) {
            return Err(Error::ParentMismatch);
        }
        let mut mask = FixedBitSet::with_capacity(self.domain.order());
        for a in self.domain.positions() {
            if s.contains(self.apply(a)) {
                mask.insert(a as usize);
            }
        }
        Ok(Subgroup::from_mask_trusted(&self.domain, mask))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if !Arc::ptr_eq(&self.codomain, &other.domain) {
            return Err(Error::ParentMismatch);
        }
        let image_of = self.image_of.iter().map(|&y| other.apply(y)).collect();
        Ok(Homomorphism {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            image_of,
            verification: self.verification,
        })
    }
}

/// Free-function form of [`Homomorphism::preimage`].
pub fn preimage(h: &Homomorphism, s: &Subgroup) -> Result<Subgroup> {
    h.preimage(s)
}
