//! Exact arithmetic for quadratic fields: ideal class groups via binary
//! quadratic forms, fundamental units and regulators, Weil heights, prime
//! splitting counts, and family-level torsion statistics.
//!
//! The crate is organized around per-field computations that are pure and
//! reentrant, so callers can fan out over discriminants with any worker
//! pool. See the `census` module for the parallel driver.

pub mod arith;
pub mod census;
pub mod classgroup;
pub mod error;
pub mod heights;
pub mod moments;
pub mod primes;
pub mod tfw;
pub mod units_lattice;

pub use arith::Discriminant;
pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
