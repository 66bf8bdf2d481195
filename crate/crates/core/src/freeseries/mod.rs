//! Truncated noncommutative formal series over a graded alphabet.
//!
//! Truncation is by word length, never by degree: degree-0 generators make
//! every degree slice infinite. All operations are exact and finite at a
//! fixed order.

mod alphabet;
mod derivation;
mod morphism;
mod ops;
mod series;

pub use alphabet::{Alphabet, Generator, Letter, Word};
pub use derivation::Derivation;
pub use morphism::AlgebraMorphism;
pub use ops::{ad_pow, bracket, exp, log1p};
pub use series::{Mismatch, Series, TermRecord};
