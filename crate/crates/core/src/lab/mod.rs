//! Structural analysis of explicit groups: Sylow subgroups, subgroup and
//! normal-subgroup enumeration, the minimal-index normal abelian p'-subgroup
//! oracle, and the Chermak–Delgado subgroup.

mod chermak_delgado;
mod enumerate;
mod oracle;
mod sylow;

pub use chermak_delgado::{chermak_delgado, chermak_delgado_lattice, chermak_delgado_measure};
pub use enumerate::{
    center, conjugacy_classes, cyclic_subgroups, enumerate_subgroups, normal_subgroups,
    ENUMERATION_LIMIT,
};
pub use oracle::{
    minimal_index_normal_abelian, minimal_index_normal_abelian_by_enumeration, OracleReport,
    OracleResult,
};
pub use sylow::{is_p_prime, sylow, sylow_of_subgroup, SylowWitness};
