use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 64;

/// A permutation of `{0, …, d-1}` stored as its image array.
///
/// Composition follows function notation: `(a · b)(i) = a(b(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermElement {
    images: Vec<u8>,
}

impl PermElement {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d == 0 || d > MAX_DEGREE {
            return Err(Error::InvalidElement(format!(
                "permutation degree {d} outside 1..={MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || seen[i] {
                return Err(Error::InvalidElement(format!(
                    "{images:?} is not a bijection on 0..{d}"
                )));
            }
            seen[i] = true;
        }
        Ok(PermElement {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    pub fn identity(degree: usize) -> Self {
        PermElement {
            images: (0..degree as u8).collect(),
        }
    }

    /// Build from disjoint cycles, e.g. `&[&[0, 1, 2]]` for the 3-cycle.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &i) in cycle.iter().enumerate() {
                if i >= degree {
                    return Err(Error::InvalidElement(format!(
                        "cycle point {i} exceeds degree {degree}"
                    )));
                }
                images[i] = cycle[(k + 1) % cycle.len()];
            }
        }
        PermElement::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn mul(&self, other: &Self) -> Self {
        PermElement {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        PermElement { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }
}

impl fmt::Debug for PermElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}
