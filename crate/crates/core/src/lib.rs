//! Exact-arithmetic workbench for the affine indefinite orthogonal Lie algebra
//! `h_n = I_n ⋊ so(p,q)`.
//!
//! The crate builds the algebras from first-order vector fields, enumerates
//! tensor, exterior and mixed representation spaces, computes invariant
//! subspaces as exact kernels, assembles Loday and Chevalley–Eilenberg
//! boundary operators and reports Betti numbers with exact or two-prime
//! modular certification.

pub mod complexes;
pub mod error;
pub mod homology;
pub mod invariants;
pub mod liealg;
pub mod linalg;
pub mod repspace;
pub mod scalar;
pub mod verify;

pub mod cli;

pub use error::{Error, Result};
pub use scalar::Q;
