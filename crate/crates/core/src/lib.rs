//! Birkhoff-James orthogonality on finite-dimensional normed spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`space`]: `ℓ_p^n` spaces and their `⊕₁` sums, norms, dual norms, norming
//!   functionals, extreme points and seeded sphere sampling.
//! * [`search`]: the one-dimensional convex minimiser and bisection helpers.
//! * [`orthogonality`]: vector-level B-J orthogonality, one-sided cones, James
//!   companion scalars and point symmetry searches.
//! * [`operator`]: matrices between descriptor spaces, operator norms, the
//!   norm-attainment set `M_T` and operator-level orthogonality.
//! * [`symmetry`]: left/right symmetry falsifiers for operators, the explicit
//!   counterexample constructor, classifiers and the theorem suites.
//! * [`cli`]: the `bj` command-line front end and persisted reports.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

#![forbid(unsafe_code)]

pub mod cli;
pub mod error;
pub mod operator;
pub mod orthogonality;
pub mod rng;
pub mod search;
pub mod space;
pub mod symmetry;
pub mod tolerance;

pub use error::{Error, Result};
pub use operator::{LinearOperator, NormAttainment, NormValue};
pub use orthogonality::{Method, OrthogonalityVerdict};
pub use space::{FunctionalSet, Space};
pub use tolerance::Tolerances;
