//! Exact computations on integral elements of the Cartan plane of a jet
//! space at a fixed point.
//!
//! The crate works with `L = Q^n`, `N = Q^m` and the Cartan plane
//! `C = L ⊕ (S^{k-1} L* ⊗ N)` carrying the meta-symplectic form `Ω`. On top
//! of an exact rational linear-algebra layer it provides isotropic
//! Grassmannians and their affine-bundle structure ([`grassmann`]), polar
//! planes ([`polar`]), the chart-level contactization of the polar
//! distribution on lines ([`contactization`]) and singularity equations of
//! third-order scalar PDEs in two variables ([`pdesing`]).

pub mod cartan;
pub mod contactization;
pub mod error;
pub mod expr;
pub mod grassmann;
pub mod io;
pub mod mpoly;
pub mod pdesing;
pub mod polar;
pub mod rational;
pub mod ratlin;
pub mod report;
pub mod rng;
pub mod suite;
pub mod symalg;
pub mod univar;

pub use error::{Error, Result};
pub use rational::Rational;
