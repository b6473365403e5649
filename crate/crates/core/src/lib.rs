//! Julia sets of finitely generated rational semigroups on the Riemann
//! sphere: spherical Lipschitz constants of generators, limit-set
//! approximation by repelling fixed points and randomized backward orbits,
//! and uniform-perfectness diagnostics via separating round annuli.

pub mod cli;
pub mod error;
pub mod examples;
pub mod perfectness;
pub mod rational;
pub mod semigroup;
pub mod sphere;

pub use error::{Error, Result};
