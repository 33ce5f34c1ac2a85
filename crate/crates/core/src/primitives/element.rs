use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::matrix::MatrixElement;
use super::perm::PermElement;
use crate::error::{Error, Result};

/// A concrete group element: a permutation, an invertible matrix over F_p,
/// or an ordered pair (the carrier of direct products).
///
/// The derived order compares the carrier kind first and is lexicographic on
/// the flattened image/entry array within one carrier.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ElementLiteral", into = "ElementLiteral")]
pub enum GroupElement {
    Perm(PermElement),
    Mat(MatrixElement),
    Pair(Box<GroupElement>, Box<GroupElement>),
}

impl GroupElement {
    pub fn perm(images: Vec<usize>) -> Result<Self> {
        PermElement::new(images).map(GroupElement::Perm)
    }

    pub fn cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        PermElement::from_cycles(degree, cycles).map(GroupElement::Perm)
    }

    pub fn matrix(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        MatrixElement::from_rows(PrimeField::new(p)?, rows).map(GroupElement::Mat)
    }

    pub fn pair(left: GroupElement, right: GroupElement) -> Self {
        GroupElement::Pair(Box::new(left), Box::new(right))
    }

    /// Short description of the carrier, used in mismatch errors.
    pub fn carrier(&self) -> String {
        match self {
            GroupElement::Perm(p) => format!("perm(degree {})", p.degree()),
            GroupElement::Mat(m) => format!("mat(dim {}, p {})", m.dim(), m.field().modulus()),
            GroupElement::Pair(a, b) => format!("pair({}, {})", a.carrier(), b.carrier()),
        }
    }

    pub fn same_carrier(&self, other: &Self) -> bool {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => a.degree() == b.degree(),
            (GroupElement::Mat(a), GroupElement::Mat(b)) => a.same_carrier(b),
            (GroupElement::Pair(a1, b1), GroupElement::Pair(a2, b2)) => {
                a1.same_carrier(a2) && b1.same_carrier(b2)
            }
            _ => false,
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if !self.same_carrier(other) {
            return Err(Error::CarrierMismatch {
                left: self.carrier(),
                right: other.carrier(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    /// Composition for elements already known to share a carrier.
    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => GroupElement::Perm(a.mul(b)),
            (GroupElement::Mat(a), GroupElement::Mat(b)) => GroupElement::Mat(a.mul(b)),
            (GroupElement::Pair(a1, b1), GroupElement::Pair(a2, b2)) => {
                GroupElement::pair(a1.compose_unchecked(a2), b1.compose_unchecked(b2))
            }
            _ => unreachable!("carrier checked by caller"),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm(p.inverse()),
            GroupElement::Mat(m) => GroupElement::Mat(m.inverse()),
            GroupElement::Pair(a, b) => GroupElement::pair(a.inverse(), b.inverse()),
        }
    }

    pub fn identity_like(&self) -> Self {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm(PermElement::identity(p.degree())),
            GroupElement::Mat(m) => GroupElement::Mat(MatrixElement::identity(m.field(), m.dim())),
            GroupElement::Pair(a, b) => GroupElement::pair(a.identity_like(), b.identity_like()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Perm(p) => p.is_identity(),
            GroupElement::Mat(m) => m.is_identity(),
            GroupElement::Pair(a, b) => a.is_identity() && b.is_identity(),
        }
    }

    /// Smallest `k ≥ 1` with `g^k = 1`.
    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut acc = self.clone();
        while !acc.is_identity() {
            acc = acc.compose_unchecked(self);
            k += 1;
        }
        k
    }

    /// Deterministic byte encoding used for group digests.
    pub fn encode(&self, out: &mut Vec<u8>) {
        match self {
            GroupElement::Perm(p) => {
                out.push(b'P');
                out.push(p.degree() as u8);
                out.extend_from_slice(p.raw());
            }
            GroupElement::Mat(m) => {
                out.push(b'M');
                out.push(m.dim() as u8);
                out.extend_from_slice(&m.field().modulus().to_le_bytes());
                for &v in m.entries() {
                    out.extend_from_slice(&v.to_le_bytes());
                }
            }
            GroupElement::Pair(a, b) => {
                out.push(b'(');
                a.encode(out);
                out.push(b',');
                b.encode(out);
                out.push(b')');
            }
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => p.fmt(f),
            GroupElement::Mat(m) => m.fmt(f),
            GroupElement::Pair(a, b) => write!(f, "({a:?}, {b:?})"),
        }
    }
}

/// JSON literal form of an element.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ElementLiteral {
    Perm {
        images: Vec<usize>,
    },
    Mat {
        p: u32,
        rows: Vec<Vec<i64>>,
    },
    Pair {
        left: Box<ElementLiteral>,
        right: Box<ElementLiteral>,
    },
}

impl TryFrom<ElementLiteral> for GroupElement {
    type Error = Error;
    fn try_from(lit: ElementLiteral) -> Result<Self> {
        match lit {
            ElementLiteral::Perm { images } => GroupElement::perm(images),
            ElementLiteral::Mat { p, rows } => GroupElement::matrix(p, &rows),
            ElementLiteral::Pair { left, right } => Ok(GroupElement::pair(
                GroupElement::try_from(*left)?,
                GroupElement::try_from(*right)?,
            )),
        }
    }
}

impl From<GroupElement> for ElementLiteral {
    fn from(g: GroupElement) -> Self {
        match g {
            GroupElement::Perm(p) => ElementLiteral::Perm { images: p.images() },
            GroupElement::Mat(m) => ElementLiteral::Mat {
                p: m.field().modulus(),
                rows: m
                    .rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(i64::from).collect())
                    .collect(),
            },
            GroupElement::Pair(a, b) => ElementLiteral::Pair {
                left: Box::new((*a).into()),
                right: Box::new((*b).into()),
            },
        }
    }
}
