//! Singularly factorized Schrödinger operators in one dimension.
//!
//! The crate covers four layers:
//!
//! * [`orthopoly`] and [`models`]: exactly solvable one-body models with
//!   eigenfunctions `P_n(η(x)) e^{-w(x)}`.
//! * [`spectral`] and [`factorization`]: finite-difference spectra of the
//!   operators obtained by factorizing through an excited state, which
//!   amounts to Dirichlet conditions at its nodes, plus the delta-coupling
//!   and regularized families that converge to them.
//! * [`manybody`]: hard-core distinguishable particles, whose spectrum is
//!   the fermion spectrum repeated once per ordering sector.
//! * [`calogero`]: the pair potential that makes the Jastrow product
//!   `e^{-Σw} Π (η_j - η_k)^λ` an exact ground state, with residual checks.

// `!(a < b)` comparisons are deliberate: they reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop, clippy::redundant_guards, clippy::too_many_arguments)]

pub mod calogero;
pub mod error;
pub mod expr;
pub mod factorization;
pub mod manybody;
pub mod models;
pub mod orthopoly;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
pub use models::OneBodyModel;
pub use orthopoly::PolyFamily;
pub use report::VerificationReport;
pub use spectral::{SpectralEntry, SpectralResult};
