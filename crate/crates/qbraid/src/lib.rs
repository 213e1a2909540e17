//! Exact-arithmetic construction and analysis of the q-Pascal family of
//! representations of the braid group B₃.
//!
//! Modules, bottom-up:
//! - [`scalar`]: ℚ, ℚ(ζₘ) and rational functions in q
//! - [`linalg`]: dense exact matrices
//! - [`qcomb`]: q-integers, Gaussian polynomials and their identities
//! - [`rep`]: the representation matrices and braid verification
//! - [`structure`]: q-exponentials, symmetric powers, polynomial-space operators, normal forms
//! - [`irred`]: irreducibility criteria, commutants, intertwiners
//! - [`cli`]: command-line front end

pub mod cli;
pub mod error;
pub mod irred;
pub mod linalg;
pub mod qcomb;
pub mod rep;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use linalg::{ExactMatrix, IndexSubset};
pub use scalar::{FieldContext, Scalar};
