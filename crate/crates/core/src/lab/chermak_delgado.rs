use super::enumerate::enumerate_subgroups;
use crate::error::Result;
use crate::group::{Group, Subgroup};

/// `|H| · |C_G(H)|`.
pub fn chermak_delgado_measure(h: &Subgroup) -> u64 {
    h.order() as u64 * h.centralizer().order() as u64
}

/// Subgroups of maximal Chermak–Delgado measure, in canonical order.
pub fn chermak_delgado_lattice(g: &Group, limit: usize) -> Result<(u64, Vec<Subgroup>)> {
    let subs = enumerate_subgroups(g, limit)?;
    let measures: Vec<u64> = subs.iter().map(chermak_delgado_measure).collect();
    let best = *measures.iter().max().expect("trivial subgroup");
    let lattice = subs
        .into_iter()
        .zip(measures)
        .filter(|(_, m)| *m == best)
        .map(|(s, _)| s)
        .collect();
    Ok((best, lattice))
}

/// The least member of the Chermak–Delgado lattice: the intersection of all
/// measure-maximizing subgroups, which the lattice contains.
pub fn chermak_delgado(g: &Group, limit: usize) -> Result<Subgroup> {
    let (_, lattice) = chermak_delgado_lattice(g, limit)?;
    let mut least = Subgroup::whole(g);
    for s in &lattice {
        least = least.intersect(s)?;
    }
    debug_assert!(lattice.contains(&least));
    Ok(least)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{closure, DEFAULT_CAP};
    use crate::lab::{center, ENUMERATION_LIMIT};
    use crate::primitives::GroupElement;

    #[test]
    fn abelian_group_is_its_own() {
        let g = closure(
            &[GroupElement::cycles(6, &[&[0, 1, 2], &[3, 4]]).unwrap()],
            DEFAULT_CAP,
        )
        .unwrap();
        assert!(chermak_delgado(&g, ENUMERATION_LIMIT).unwrap().is_whole());
    }

    #[test]
    fn s3_measures() {
        let g = closure(
            &[
                GroupElement::cycles(3, &[&[0, 1]]).unwrap(),
                GroupElement::cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
            DEFAULT_CAP,
        )
        .unwrap();
        let subs = enumerate_subgroups(&g, ENUMERATION_LIMIT).unwrap();
        let measures: Vec<u64> = subs.iter().map(chermak_delgado_measure).collect();
        // 1, three transpositions, A3, S3
        assert_eq!(measures, vec![6, 4, 4, 4, 9, 6]);
        let m = chermak_delgado(&g, ENUMERATION_LIMIT).unwrap();
        assert_eq!(m.order(), 3);
    }

    #[test]
    fn q8_is_center() {
        let g = closure(
            &[
                GroupElement::matrix(3, &[vec![0, 2], vec![1, 0]]).unwrap(),
                GroupElement::matrix(3, &[vec![1, 1], vec![1, 2]]).unwrap(),
            ],
            DEFAULT_CAP,
        )
        .unwrap();
        let (best, lattice) = chermak_delgado_lattice(&g, ENUMERATION_LIMIT).unwrap();
        assert_eq!(best, 16);
        assert_eq!(lattice.len(), 5);
        assert_eq!(chermak_delgado(&g, ENUMERATION_LIMIT).unwrap(), center(&g));
    }
}
