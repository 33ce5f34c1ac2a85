use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::primitives::GroupElement;

/// Default bound on the order of any group built by closure.
pub const DEFAULT_CAP: usize = 20_000;

/// Groups up to this order carry a precomputed Cayley table.
pub const TABLE_LIMIT: usize = 2048;

pub type Group = Arc<FiniteGroup>;

/// How products are computed when no Cayley table is cached.
enum Backend {
    /// Elements compose directly.
    Concrete,
    /// Pairs `(a, b)` at position `a * |right| + b`.
    Product { left: Group, right: Group },
    /// Cosets of `base`, named by their minimal representative.
    Quotient {
        base: Group,
        label: Vec<u32>,
        reps: Vec<u32>,
    },
    /// A subgroup materialized as a group in its own right.
    Embedded {
        parent: Group,
        members: Vec<u32>,
        local: Vec<u32>,
    },
}

/// An explicitly enumerated finite group.
///
/// Elements are kept in canonical order; everything downstream addresses
/// them by position (`u32`).
pub struct FiniteGroup {
    name: String,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, u32>,
    generators: Vec<u32>,
    identity: u32,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
    backend: Backend,
    digest: String,
}

impl FiniteGroup {
    /// The subgroup generated by `gens`, materialized by breadth-first
    /// saturation under right multiplication.
    pub fn closure(gens: &[GroupElement], cap: usize) -> Result<Group> {
        let first = gens.first().ok_or(Error::NoGenerators)?;
        for g in &gens[1..] {
            if !first.same_carrier(g) {
                return Err(Error::CarrierMismatch {
                    left: first.carrier(),
                    right: g.carrier(),
                });
            }
        }
        let identity = first.identity_like();
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut list = vec![identity.clone()];
        seen.insert(identity);
        let mut i = 0;
        while i < list.len() {
            for g in gens {
                let y = list[i].compose_unchecked(g);
                if !seen.contains(&y) {
                    seen.insert(y.clone());
                    list.push(y);
                    if list.len() > cap {
                        return Err(Error::OrderCapExceeded {
                            cap,
                            reached: list.len(),
                        });
                    }
                }
            }
            i += 1;
        }
        drop(seen);
        list.sort();
        let index: HashMap<GroupElement, u32> = list
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        let mut generators: Vec<u32> = gens.iter().map(|g| index[g]).collect();
        dedup_keep_order(&mut generators);
        Ok(Arc::new(FiniteGroup::assemble(
            String::new(),
            list,
            Some(index),
            generators,
            Backend::Concrete,
        )))
    }

    /// Direct product; element `(a, b)` sits at `a * |right| + b`.
    pub(crate) fn product_of(left: &Group, right: &Group) -> FiniteGroup {
        let mut elements = Vec::with_capacity(left.order() * right.order());
        for a in &left.elements {
            for b in &right.elements {
                elements.push(GroupElement::pair(a.clone(), b.clone()));
            }
        }
        let n2 = right.order() as u32;
        let mut generators: Vec<u32> = left
            .generators
            .iter()
            .map(|&a| a * n2 + right.identity)
            .chain(right.generators.iter().map(|&b| left.identity * n2 + b))
            .collect();
        dedup_keep_order(&mut generators);
        let name = format!("{} x {}", left.name, right.name);
        FiniteGroup::assemble(
            name,
            elements,
            None,
            generators,
            Backend::Product {
                left: left.clone(),
                right: right.clone(),
            },
        )
    }

    /// Quotient by the coset labelling `label` (base position → coset number),
    /// with `reps[c]` the minimal representative of coset `c`.
    pub(crate) fn quotient_of(base: &Group, label: Vec<u32>, reps: Vec<u32>) -> FiniteGroup {
        let elements: Vec<GroupElement> =
            reps.iter().map(|&r| base.elements[r as usize].clone()).collect();
        let mut generators: Vec<u32> = base
            .generators
            .iter()
            .map(|&g| label[g as usize])
            .filter(|&c| c != label[base.identity as usize])
            .collect();
        dedup_keep_order(&mut generators);
        FiniteGroup::assemble(
            String::new(),
            elements,
            None,
            generators,
            Backend::Quotient {
                base: base.clone(),
                label,
                reps,
            },
        )
    }

    /// Materialize the members of a subgroup (sorted parent positions).
    pub(crate) fn embedded(parent: &Group, members: Vec<u32>, gens: &[u32]) -> FiniteGroup {
        let mut local = vec![u32::MAX; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            local[m as usize] = i as u32;
        }
        let elements = members
            .iter()
            .map(|&m| parent.elements[m as usize].clone())
            .collect();
        let generators = gens.iter().map(|&g| local[g as usize]).collect();
        FiniteGroup::assemble(
            String::new(),
            elements,
            None,
            generators,
            Backend::Embedded {
                parent: parent.clone(),
                members,
                local,
            },
        )
    }

    fn assemble(
        name: String,
        elements: Vec<GroupElement>,
        index: Option<HashMap<GroupElement, u32>>,
        generators: Vec<u32>,
        backend: Backend,
    ) -> FiniteGroup {
        let index = index.unwrap_or_else(|| {
            elements
                .iter()
                .enumerate()
                .map(|(i, g)| (g.clone(), i as u32))
                .collect()
        });
        let n = elements.len();
        let digest = element_digest(elements.iter());
        let mut g = FiniteGroup {
            name,
            elements,
            index,
            generators,
            identity: 0,
            inverse: Vec::new(),
            table: None,
            backend,
            digest,
        };
        g.identity = g.backend_identity();
        g.inverse = (0..n as u32).map(|a| g.backend_inv(a)).collect();
        if n <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    table.push(g.backend_mul(a, b));
                }
            }
            g.table = Some(table);
        }
        g
    }

    fn backend_identity(&self) -> u32 {
        match &self.backend {
            Backend::Concrete => self
                .elements
                .iter()
                .position(GroupElement::is_identity)
                .expect("closure contains the identity") as u32,
            Backend::Product { left, right } => {
                left.identity * right.order() as u32 + right.identity
            }
            Backend::Quotient { base, label, .. } => label[base.identity as usize],
            Backend::Embedded { parent, local, .. } => local[parent.identity as usize],
        }
    }

    fn backend_inv(&self, a: u32) -> u32 {
        match &self.backend {
            Backend::Concrete => self.index[&self.elements[a as usize].inverse()],
            Backend::Product { left, right } => {
                let n2 = right.order() as u32;
                left.inv(a / n2) * n2 + right.inv(a % n2)
            }
            Backend::Quotient { base, label, reps } => {
                label[base.inv(reps[a as usize]) as usize]
            }
            Backend::Embedded {
                parent,
                members,
                local,
            } => local[parent.inv(members[a as usize]) as usize],
        }
    }

    fn backend_mul(&self, a: u32, b: u32) -> u32 {
        match &self.backend {
            Backend::Concrete => {
                let y = self.elements[a as usize].compose_unchecked(&self.elements[b as usize]);
                self.index[&y]
            }
            Backend::Product { left, right } => {
                let n2 = right.order() as u32;
                left.mul(a / n2, b / n2) * n2 + right.mul(a % n2, b % n2)
            }
            Backend::Quotient { base, label, reps } => {
                label[base.mul(reps[a as usize], reps[b as usize]) as usize]
            }
            Backend::Embedded {
                parent,
                members,
                local,
            } => local[parent.mul(members[a as usize], members[b as usize]) as usize],
        }
    }

    pub fn with_name(mut self: Group, name: impl Into<String>) -> Group {
        match Arc::get_mut(&mut self) {
            Some(g) => {
                g.name = name.into();
                self
            }
            None => self,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, a: u32) -> &GroupElement {
        &self.elements[a as usize]
    }

    pub fn position(&self, g: &GroupElement) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.backend_mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `g⁻¹ · x · g`.
    pub fn conjugate(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut k = 1;
        let mut acc = a;
        while acc != self.identity {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    pub fn positions(&self) -> impl Iterator<Item = u32> {
        0..self.elements.len() as u32
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, &a)| self.generators[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.positions()
            .map(|a| self.element_order(a))
            .fold(1, num_integer::lcm)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("digest", &&self.digest[..12])
            .finish()
    }
}

/// SHA-256 over the canonical encodings of an ordered element list.
pub(crate) fn element_digest<'a>(elements: impl Iterator<Item = &'a GroupElement>) -> String {
    let mut hasher = Sha256::new();
    let mut buf = Vec::new();
    for g in elements {
        buf.clear();
        g.encode(&mut buf);
        hasher.update(&buf);
    }
    hex::encode(hasher.finalize())
}

fn dedup_keep_order(v: &mut Vec<u32>) {
    let mut seen = HashSet::new();
    v.retain(|x| seen.insert(*x));
}
