use super::enumerate::{enumerate_subgroups, ENUMERATION_LIMIT};
use crate::group::{Group, Subgroup};
use crate::primitives::{is_power_of, p_part};

#[derive(Debug, Clone)]
pub struct SylowWitness {
    pub prime: u64,
    pub subgroup: Subgroup,
    pub is_normal: bool,
}

/// A Sylow `p`-subgroup of `g`.
///
/// Grown greedily: scan the p-elements in canonical order and adjoin each one
/// whenever the result is still a p-group. A p-subgroup that is not Sylow has
/// a p-element in its normalizer outside it, so a single pass reaches full
/// p-part order; the enumeration fallback only guards against that argument
/// being wrong. For `p = 0` or `p ∤ |g|` this is the trivial subgroup.
pub fn sylow(g: &Group, p: u64) -> SylowWitness {
    let target = p_part(g.order() as u64, p) as usize;
    if target == 1 {
        return SylowWitness {
            prime: p,
            subgroup: Subgroup::trivial(g),
            is_normal: true,
        };
    }
    let mut current = Subgroup::trivial(g);
    for x in g.positions() {
        if current.order() == target {
            break;
        }
        if current.contains(x) || !is_power_of(g.element_order(x), p) {
            continue;
        }
        if let Some(bigger) = current.extend_capped(&[x], target) {
            if is_power_of(bigger.order() as u64, p) {
                current = bigger;
            }
        }
    }
    if current.order() != target {
        current = enumerate_subgroups(g, ENUMERATION_LIMIT.max(g.order()))
            .expect("limit raised to the group order")
            .into_iter()
            .find(|s| s.order() == target)
            .expect("Sylow subgroups exist");
    }
    let is_normal = current.is_normal();
    SylowWitness {
        prime: p,
        subgroup: current,
        is_normal,
    }
}

/// Sylow `p`-subgroup of a subgroup, expressed inside the same parent.
pub fn sylow_of_subgroup(s: &Subgroup, p: u64) -> SylowWitness {
    let (group, inclusion) = s.to_group();
    let w = sylow(&group, p);
    let subgroup = inclusion
        .image_of_subgroup(&w.subgroup)
        .expect("subgroup of the materialized group");
    let is_normal = subgroup.is_normal_in(s);
    SylowWitness {
        prime: p,
        subgroup,
        is_normal,
    }
}

/// `p ∤ |g|`; vacuously true for `p = 0`.
pub fn is_p_prime(g: &Group, p: u64) -> bool {
    p < 2 || g.order() as u64 % p != 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{closure, DEFAULT_CAP};
    use crate::primitives::GroupElement;

    fn sym(d: usize) -> Group {
        let cycle: Vec<usize> = (0..d).collect();
        closure(
            &[
                GroupElement::cycles(d, &[&[0, 1]]).unwrap(),
                GroupElement::cycles(d, &[&cycle]).unwrap(),
            ],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    #[test]
    fn s3_at_three() {
        let w = sylow(&sym(3), 3);
        assert_eq!(w.subgroup.order(), 3);
        assert!(w.is_normal);
    }

    #[test]
    fn s4_at_two() {
        let g = sym(4);
        let w = sylow(&g, 2);
        assert_eq!(w.subgroup.order(), 8);
        assert!(!w.is_normal);
        // three distinct conjugates
        let mut conjugates: Vec<_> = g
            .positions()
            .map(|x| w.subgroup.conjugate_by(x).mask().clone())
            .collect();
        conjugates.sort_by(|a, b| a.ones().cmp(b.ones()));
        conjugates.dedup();
        assert_eq!(conjugates.len(), 3);
    }

    #[test]
    fn coprime_prime_gives_trivial() {
        let c6 = closure(&[GroupElement::cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap()], DEFAULT_CAP)
            .unwrap();
        let w = sylow(&c6, 5);
        assert!(w.subgroup.is_trivial() && w.is_normal);
        let w = sylow(&c6, 0);
        assert!(w.subgroup.is_trivial());
        assert!(is_p_prime(&c6, 5));
        assert!(!is_p_prime(&c6, 3));
    }

    #[test]
    fn s5_all_primes() {
        let g = sym(5);
        for (p, order) in [(2, 8), (3, 3), (5, 5)] {
            let w = sylow(&g, p);
            assert_eq!(w.subgroup.order(), order);
            assert!(!w.is_normal);
        }
    }
}
