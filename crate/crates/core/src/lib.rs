//! Generalized Thue-Morse sequences, turtle curves over exact cyclotomic
//! arithmetic, Dekking sums with their self-similarity law, similarity
//! witnesses between the two curve families, and Hausdorff-metric convergence
//! certification of the scaled prefixes (the Koch curve being the flagship
//! case).
//!
//! All curve coordinates live in cyclotomic fields and every structural
//! identity is checked with exact equality; floating point only enters at the
//! geometry boundary, through certified embeddings with explicit error
//! budgets.

pub mod catalog;
pub mod curves;
pub mod cyclotomic;
pub mod error;
pub mod exec;
pub mod hausdorff;
pub mod similarity;
pub mod turtle;
pub mod words;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
