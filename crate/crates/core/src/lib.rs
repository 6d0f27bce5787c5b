//! Decision procedures for the R∞-property of fundamental groups of
//! finite-volume geometric 3-manifolds.
//!
//! A group has the R∞-property when every automorphism `φ` has infinitely
//! many `φ`-twisted conjugacy classes (orbits of `σ·α = σ α φ(σ)⁻¹`). The
//! crate answers this question for all eight Thurston geometries. Most
//! geometries are table-driven; Sol torus bundles `Z² ⋊_A Z` are decided by
//! exact computation in `GL(2, Z)` and come with a checkable certificate.
//!
//! Layout:
//!
//! * [`exact_linear`]: unbounded-integer 2×2 / 3×3 matrices and Smith normal form.
//! * [`modular_group`]: normal-form words in `PSL(2, Z) ≅ Z/2 * Z/3`.
//! * [`glz_conjugacy`]: `GL(2, Z)` conjugacy, reversers, unit groups, the Sol decision.
//! * [`reidemeister`]: Reidemeister numbers and finite twisted-conjugacy oracles.
//! * [`catalog`]: geometry descriptors, classification tables and the dispatcher.
//! * [`appendix_maps`]: quaternion self-maps of `S³ × S³` realizing a matrix on `H₃`.
//! * [`cli`]: the command-line front end.

pub mod appendix_maps;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod exact_linear;
pub mod glz_conjugacy;
pub mod modular_group;
pub mod reidemeister;

pub use error::{Error, Result};
pub use exact_linear::{Cardinality, Int, Mat2, Mat3, MatN};
