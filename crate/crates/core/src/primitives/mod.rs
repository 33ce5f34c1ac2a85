//! Exact carriers for group elements: prime-field scalars, invertible
//! matrices over F_p, and permutations of bounded degree.

mod element;
mod field;
mod matrix;
mod perm;

pub use element::{ElementLiteral, GroupElement};
pub use field::{is_power_of, is_prime, p_part, prime_factors, PrimeField};
pub use matrix::{MatrixElement, MAX_DIM};
pub use perm::{PermElement, MAX_DEGREE};
