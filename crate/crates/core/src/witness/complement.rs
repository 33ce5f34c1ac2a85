use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{quotient, Group, QuotientGroup, Subgroup};

/// Upper limit on generator-image tuples tried by [`complement_by_search`].
pub const SEARCH_BUDGET: u64 = 1 << 20;

fn check_hall(h: &Group, n: &Subgroup) -> Result<()> {
    if !Arc::ptr_eq(n.parent(), h) {
        return Err(Error::Precondition("kernel is not a subgroup of the group".into()));
    }
    if !n.is_normal() {
        return Err(Error::Precondition("kernel is not normal".into()));
    }
    let index = n.index();
    if n.order().gcd(&index) != 1 {
        return Err(Error::NotCoprime {
            kernel: n.order(),
            index,
        });
    }
    Ok(())
}

fn verify_complement(c: &Subgroup, n: &Subgroup) -> bool {
    c.order() * n.order() == c.parent().order()
        && c.intersect(n).map(|x| x.is_trivial()).unwrap_or(false)
}

/// A complement of a normal Hall subgroup `n ⊴ h`.
///
/// Abelian kernels use the cocycle-averaging construction; otherwise the
/// complement is found by search.
pub fn schur_zassenhaus(h: &Group, n: &Subgroup) -> Result<Subgroup> {
    check_hall(h, n)?;
    if n.is_whole() {
        return Ok(Subgroup::trivial(h));
    }
    if n.is_trivial() {
        return Ok(Subgroup::whole(h));
    }
    if n.is_abelian() {
        complement_by_cocycle(h, n)
    } else {
        complement_by_search(h, n, SEARCH_BUDGET)
    }
}

/// Complement of an abelian normal Hall subgroup by correcting a transversal.
///
/// With `t` the minimal-representative transversal of `Q = h/n` and
/// `f(x, y) = t(x) t(y) t(xy)⁻¹ ∈ n`, set `F(x) = ∏_z f(x, z)` and
/// `c(x) = F(x)^u` where `u·|Q| ≡ 1 (mod exp n)`. Then `x ↦ c(x)⁻¹ t(x)` is
/// a homomorphism `Q → h` whose image meets `n` trivially.
pub fn complement_by_cocycle(h: &Group, n: &Subgroup) -> Result<Subgroup> {
    check_hall(h, n)?;
    if !n.is_abelian_exhaustive() {
        return Err(Error::Precondition(
            "cocycle construction needs an abelian kernel".into(),
        ));
    }
    let q: QuotientGroup = quotient(h, n)?;
    let quot = &q.group;
    let t = &q.representatives;
    let q_order = quot.order() as i64;
    let exponent = n.exponent() as i64;
    let u = mod_inverse(q_order, exponent).ok_or(Error::NotCoprime {
        kernel: n.order(),
        index: quot.order(),
    })?;

    let mut mask = FixedBitSet::with_capacity(h.order());
    for x in quot.positions() {
        let tx = t[x as usize];
        let mut big_f = h.identity();
        for z in quot.positions() {
            let xz = quot.mul(x, z);
            let f = h.mul(h.mul(tx, t[z as usize]), h.inv(t[xz as usize]));
            debug_assert!(n.contains(f));
            big_f = h.mul(big_f, f);
        }
        let c = h.pow(big_f, u as u64);
        mask.insert(h.mul(h.inv(c), tx) as usize);
    }
    let c = Subgroup::from_mask(h, mask)
        .map_err(|e| Error::ComplementSearch(format!("corrected transversal: {e}")))?;
    if !verify_complement(&c, n) {
        return Err(Error::ComplementSearch(
            "corrected transversal is not a complement".into(),
        ));
    }
    Ok(c)
}

/// Complement by exhaustive choice of generator images.
///
/// A small generating set of `Q = h/n` is lifted coset by coset; every tuple
/// of lifts generating a subgroup of order `|Q|` gives a complement. All
/// complements are collected and the canonically smallest is returned.
pub fn complement_by_search(h: &Group, n: &Subgroup, budget: u64) -> Result<Subgroup> {
    check_hall(h, n)?;
    let q = quotient(h, n)?;
    let quot = &q.group;
    let target = quot.order();
    if target == 1 {
        return Ok(Subgroup::trivial(h));
    }

    // Drop redundant quotient generators.
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(quot);
    for &g in quot.generators() {
        if !span.contains(g) {
            span = span.extend_capped(&[g], usize::MAX).expect("uncapped");
            gens.push(g);
        }
    }
    let kernel: Vec<u32> = n.members().collect();
    let lifts: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let rep = q.representatives[g as usize];
            kernel.iter().map(|&k| h.mul(rep, k)).collect()
        })
        .collect();
    let combos = (kernel.len() as u64).checked_pow(gens.len() as u32);
    match combos {
        Some(c) if c <= budget => {}
        _ => {
            return Err(Error::ComplementSearch(format!(
                "{}^{} generator lifts exceed the search budget {budget}",
                kernel.len(),
                gens.len()
            )))
        }
    }

    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut best: Option<Subgroup> = None;
    let mut choice = vec![0usize; gens.len()];
    let trivial = Subgroup::trivial(h);
    loop {
        let tuple: Vec<u32> = choice.iter().zip(&lifts).map(|(&i, l)| l[i]).collect();
        if let Some(c) = trivial.extend_capped(&tuple, target) {
            if c.order() == target && seen.insert(c.mask().clone()) && verify_complement(&c, n) {
                let better = best
                    .as_ref()
                    .map(|b| c.canonical_cmp(b).is_lt())
                    .unwrap_or(true);
                if better {
                    best = Some(c);
                }
            }
        }
        // odometer
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < kernel.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    best.ok_or_else(|| Error::ComplementSearch("no complement found".into()))
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = a.extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}
