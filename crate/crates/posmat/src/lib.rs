//! Exact-arithmetic analysis of nonnegative matrices.
//!
//! The crate works with two views of a matrix: exact rational entries
//! ([`matrix::NonnegMatrix`], [`matrix::StochasticMatrix`]) and the zero
//! pattern alone ([`matrix::PatternMatrix`], a boolean matrix stored as
//! bitset rows).  Every structural predicate (irreducibility, primitivity,
//! scrambling, ...) depends only on the pattern, so numeric matrices are
//! analysed through their indicator pattern; powers of patterns are taken
//! over the boolean semiring and never overflow.
//!
//! Module map:
//! - [`matrix`]: core types, submatrices, boolean products, allowability.
//! - [`gplus`]: row-wise positivity on index-set pairs, chain verification,
//!   partition-level positivity.
//! - [`gk`]: the g_k family of connectivity-like matrix classes.
//! - [`classes`]: irreducible / primitive / fully indecomposable / Markov /
//!   scrambling / Sarymsakov recognition, exact power limits.
//! - [`bounds`]: a catalog of positivity bounds with checkable certificates.
//! - [`graph`]: vertex connectivity of undirected graphs, brute force and
//!   via the g_k criterion on the adjacency matrix.
//! - [`generate`]: deterministic and seeded random generators.
//! - [`textio`]: plain-text formats for matrices, patterns and graphs.
//! - [`fixtures`]: a small corpus of worked examples with pinned properties.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod classes;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod gk;
pub mod gplus;
pub mod graph;
pub mod matrix;
pub mod textio;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Exact rational scalar; all numeric computation in this crate is exact.
pub type Rational = num::BigRational;
