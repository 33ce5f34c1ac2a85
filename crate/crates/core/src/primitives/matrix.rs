use std::fmt;

use super::field::PrimeField;
use crate::error::{Error, Result};

pub const MAX_DIM: usize = 8;

/// An invertible square matrix over a prime field, stored row-major.
///
/// Field order makes the derived `Ord` lexicographic on the flattened
/// entries for matrices of equal shape and field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixElement {
    dim: u8,
    field: PrimeField,
    entries: Vec<u32>,
}

impl MatrixElement {
    /// Build from rows, reducing every entry mod p and rejecting singular input.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidElement(format!(
                "matrix dimension {dim} outside 1..={MAX_DIM}"
            )));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::InvalidElement("matrix is not square".into()));
            }
            entries.extend(row.iter().map(|&v| field.reduce(v)));
        }
        let m = MatrixElement {
            dim: dim as u8,
            field,
            entries,
        };
        if m.determinant() == 0 {
            return Err(Error::InvalidElement("matrix is singular".into()));
        }
        Ok(m)
    }

    /// Build from already-reduced row-major entries; returns `None` if singular.
    pub fn from_entries(field: PrimeField, dim: usize, entries: Vec<u32>) -> Option<Self> {
        assert_eq!(entries.len(), dim * dim);
        let m = MatrixElement {
            dim: dim as u8,
            field,
            entries: entries.into_iter().map(|v| v % field.modulus()).collect(),
        };
        (m.determinant() != 0).then_some(m)
    }

    pub fn identity(field: PrimeField, dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % field.modulus();
        }
        MatrixElement {
            dim: dim as u8,
            field,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.dim() + c]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.dim()).map(|r| r.to_vec()).collect()
    }

    pub fn same_carrier(&self, other: &Self) -> bool {
        self.dim == other.dim && self.field == other.field
    }

    /// `self · other`. Callers must have checked the carrier.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim();
        let p = self.field.modulus() as u64;
        let mut entries = vec![0u32; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += self.entries[r * n + k] as u64 * other.entries[k * n + c] as u64;
                }
                entries[r * n + c] = (acc % p) as u32;
            }
        }
        MatrixElement {
            dim: self.dim,
            field: self.field,
            entries,
        }
    }

    pub fn determinant(&self) -> u32 {
        let n = self.dim();
        let f = self.field;
        let mut a = self.entries.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for k in col..n {
                    let sub = f.mul(factor, a[col * n + k]);
                    a[r * n + k] = f.sub(a[r * n + k], sub);
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let f = self.field;
        let mut a = self.entries.clone();
        let mut inv = MatrixElement::identity(f, n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .expect("matrix elements are invertible");
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let pinv = f.inv(a[col * n + col]).expect("pivot is nonzero");
            for k in 0..n {
                a[col * n + k] = f.mul(a[col * n + k], pinv);
                inv[col * n + k] = f.mul(inv[col * n + k], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor == 0 {
                    continue;
                }
                for k in 0..n {
                    a[r * n + k] = f.sub(a[r * n + k], f.mul(factor, a[col * n + k]));
                    inv[r * n + k] = f.sub(inv[r * n + k], f.mul(factor, inv[col * n + k]));
                }
            }
        }
        MatrixElement {
            dim: self.dim,
            field: self.field,
            entries: inv,
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        self.entries
            .iter()
            .enumerate()
            .all(|(i, &v)| v == u32::from(i / n == i % n))
    }
}

impl fmt::Debug for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.field.modulus(), self.rows())
    }
}
