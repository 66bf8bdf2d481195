//! Exact symbolic kernel for the Lawrence-Sullivan interval model, its
//! enveloping cylinder, the Baker-Campbell-Hausdorff series and the
//! Bernoulli-number identities that fall out of them.
//!
//! Everything is computed in truncated complete tensor algebras with exact
//! rational coefficients; every identity is checked "through order N",
//! meaning on all words of length at most N.

pub mod bch;
pub mod cli;
pub mod cylinder;
pub mod error;
pub mod exact;
pub mod freeseries;
pub mod gauge;
pub mod identities;
pub mod models;
pub mod sampling;

pub use error::{Error, Result};
pub use exact::Rational;
pub use freeseries::{AlgebraMorphism, Alphabet, Derivation, Series, Word};
