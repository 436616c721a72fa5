//! Exact linear algebra: row reduction over `Z/p`, integer Hermite normal
//! form, and 2-dimensional lattice reduction.

mod integer;
mod lattice;
mod modp;
mod sparse;

pub use integer::{hnf, Hnf, HnfReducer, IntMatrix};
pub use lattice::{gauss_lagrange, LatticeBasis2};
pub use modp::{
    inv_mod, nullspace_mod, rref_mod, symmetric_lift, symmetric_lift_vec, ModMatrix, ModRowReducer, Rref,
};
pub use sparse::SparseMatrix;

use num_bigint::BigInt;

/// Exact dot product of integer vectors.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
