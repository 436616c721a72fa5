//! Exact computation of the fundamental polynomial invariants (degrees 6, 9
//! and 12) of 3×3×3 arrays under `SL3 × SL3 × SL3`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; file formats and the command line live in the
//! companion `trilinvar` crate.
//!
//! Layers, bottom to top:
//!
//! * [`monomial`]: exponent arrays, their total order, weights, and the
//!   weight-zero / higher-weight monomial bases.
//! * [`symmetry`]: the order-1296 slice/direction permutation group, orbits
//!   and orbit sums.
//! * [`lie`]: the six raising operators and the matrices they induce.
//! * [`linalg`]: row reduction mod p, Hermite normal form, 2-D lattice
//!   reduction.
//! * [`poly`]: sparse integer polynomials, evaluation and the `SL3(Z)` action.
//! * [`pipeline`]: the end-to-end computations of `I6`, `I9`, `I12`, `I12'`.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod error;
pub mod lie;
pub mod linalg;
pub mod monomial;
pub mod pipeline;
pub mod poly;
pub mod symmetry;

pub use error::{Error, Result};
pub use lie::OperatorId;
pub use monomial::{DegreeBasis, ExponentArray, Weight};
pub use poly::Polynomial;
pub use symmetry::{GroupElement, Orbit, OrbitSumKind};

/// Default working prime for modular elimination.
pub const DEFAULT_PRIME: u32 = 101;
