//! Genuinely entangled subspaces built from quantum channels.
//!
//! This crate is the allocation-only core of `entsub`. It covers:
//!
//! * [`tensor`]: dense tensor-product linear algebra on state vectors and
//!   density matrices (reshaping across bipartitions, Schmidt spectra, partial
//!   trace and transpose, local maps, subsystem factorization),
//! * [`channels`]: Kraus channels, Stinespring isometries, maximal output
//!   norms and the Holevo-Werner family,
//! * [`constructions`]: parameterized completely and genuinely entangled
//!   subspaces (3⊗3, 4⊗4, three and four qubits, three qutrits, lifted
//!   subspaces),
//! * [`polysys`]: exact polynomial arithmetic over the Gaussian rationals and a
//!   Buchberger engine used to certify that a pencil of matrices never drops to
//!   rank one,
//! * [`certify`]: per-bipartition certificates (exact and numeric) and the
//!   subspace entanglement λ̄₁ / G_GME,
//! * [`measures`]: pure-state measures and the projector-based lower bounds and
//!   noise-robustness thresholds for mixed states.
//!
//! The crate is `no_std`; floating point functions come from `libm` through
//! `num-traits`. File formats and the command line live in the `entsub` crate.
//!
//! Index convention: subsystem 0 is the slowest-varying tensor index.

#![no_std]

extern crate alloc;

pub mod certify;
pub mod channels;
pub mod constructions;
mod error;
pub mod exact;
pub mod linalg;
pub mod measures;
pub mod polysys;
pub mod random;
pub mod tensor;
mod tol;

pub use error::{Error, Result};
pub use linalg::{C64, CMatrix};
pub use tensor::{Bipartition, DensityMatrix, Dims, FactorizationScheme, PureState};
pub use tol::Tolerances;
