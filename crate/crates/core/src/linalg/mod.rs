//! Exact rational linear algebra over adjacency matrices.

mod kernel;
mod matrix;
mod rational;

pub use kernel::{
    fingerprint, hat_closure, hat_closure_by_rank, is_realizable, kernel_matroid, kernel_rank,
    nullity, nullspace, rank, vanishing_subspace, witness_nullvector, KernelMatroid,
    NullspaceBasis,
};
pub use matrix::{primitive, RationalMatrix};
pub use rational::{format_rational, parse_rational, RationalVector};
