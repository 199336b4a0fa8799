//! One-parameter Darboux deformations of Schrödinger potentials.
//!
//! The crate builds isospectral families from a nodeless seed solution
//! ([`darboux`]), specializes them to the harmonic oscillator
//! ([`oscillator`]) and the radial Coulomb problem ([`hydrogen`]), and
//! certifies the results numerically with a tridiagonal finite-difference
//! eigensolver ([`spectral`]). The [`cli`] module drives all of it from the
//! command line.

pub mod cli;
pub mod darboux;
pub mod error;
pub mod grid;
pub mod hydrogen;
pub mod oscillator;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
pub use grid::GridFunction;
