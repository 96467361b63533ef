//! Identification of component laws from the joint law of maxima.
//!
//! The crate models the pair
//!
//! ```text
//! U = max(X, a·Z₁, b·Z₂),   V = max(Y, c·Z₁, d·Z₂)
//! ```
//!
//! with `Z₁, Z₂` identically distributed and `X, Y, Z₁, Z₂` independent or
//! max-independent. It evaluates and samples the joint CDF of `(U, V)`
//! ([`max_model`]), recovers `F_X, F_Y, F_Z` from that joint CDF
//! ([`identification`]), checks the ratio identities any two
//! observationally equivalent systems must satisfy, and explores candidate
//! alternative systems when the coefficients have mixed signs
//! ([`nonuniqueness`]).

pub mod cli;
pub mod distributions;
pub mod error;
pub mod identification;
pub mod interp;
pub mod isotonic;
pub mod max_independence;
pub mod max_model;
pub mod nonuniqueness;
pub mod rng;

pub use distributions::{DistributionSpec, Family, Support};
pub use error::{Error, Result};
pub use max_independence::{Generator, GeneratorSpec};
pub use max_model::{ComponentSystem, Dependence, JointCdf2D, JointDistribution, Regime, ScaleCoefficients};
