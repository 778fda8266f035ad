//! Annihilation operators for bivariate exponential spaces.
//!
//! * [`expspace`]: exponential sums, frequencies and grid samples.
//! * [`operators`]: differential and difference operators, chains of them,
//!   and kernel checks.
//! * [`detection`]: frequency identification from grid samples.
//! * [`subdivision`]: level-dependent four-point refinement reproducing
//!   `span{1, e^{γz}, e^{-γz}}`.
//! * [`oracle`]: brute-force validators and seeded random instances.
//! * [`cli`]: the `annihil` command-line front end.

pub mod cli;
pub mod detection;
pub mod expspace;
pub mod operators;
pub mod oracle;
pub mod subdivision;

pub use num_complex::Complex64;
