//! Exact arithmetic substrate: the three endomorphism rings, integer matrix
//! normal forms, and linear congruence solvers on tori.

mod congruence;
mod matrix;
mod ratmat;
mod ring;

pub use congruence::{canonical_coset_rep, finite_solution_count, solve_congruence, CongruenceSolutions};
pub use matrix::{
    hermite_normal_form, in_row_lattice, integral_solve, is_saturated, kernel_basis, rank,
    saturate_rows, smith_normal_form, IntMatrix, SmithDecomposition,
};
pub use ratmat::RatMatrix;
pub use ring::{integral_rep, ring_element_order, EndoRing, RingElement};
