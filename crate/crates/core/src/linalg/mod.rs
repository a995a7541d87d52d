//! Exact integer and rational linear algebra.

mod lattice;
mod matrix;
mod poly;
mod subspace;

pub(crate) use lattice::fmt_vec;
pub use lattice::{hermite_basis, intersect_affine, solve_linear_system_integer};
pub use lattice::{AffineLattice, AffineLatticeUnion, Lattice};
pub use matrix::{common_denominator, int_vec, is_zero_vec, to_int_vec, to_rat_vec, vec_content};
pub use matrix::{vec_add, vec_neg, vec_scale, vec_sub, IntMatrix, RatMatrix};
pub use poly::{minimal_polynomial, RatPolynomial};
pub use subspace::{smallest_invariant_subspace, CyclicSubspace, RatSubspace};
