//! Lagrangian dynamics of n-dimensional submanifolds, specialized to
//! relativistic mechanics (n = 1) with the gauge-invariant Lagrangian
//! `L = G^{1/2N} + A·q̇`, plus the Nambu-Goto density (n = 2) as a
//! verification target.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI
//! live in the companion `relmech-cli` crate.
//!
//! Module map:
//! - [`jet_charts`]: chart algebra for first-order jets of submanifolds and
//!   the two-way maps between submanifold jets and section jets.
//! - [`lagrangian`]: the relativistic Lagrangian family, its variational
//!   derivatives (via nested forward-mode duals) and the Noether identity.
//! - [`dynamics`]: fixed-step RK4 integration of the relativistic equation
//!   under the constraint G = 1, with drift monitoring.
//! - [`three_velocity`]: the reduced (chart) picture in three-velocities and
//!   τ-reconstruction by quadrature.
//! - [`nambu_goto`]: induced worldsheet metric, Nambu-Goto density and its
//!   variational derivative.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dual;
pub mod dynamics;
pub mod error;
pub mod jet_charts;
pub mod lagrangian;
pub mod linalg;
pub mod nambu_goto;
pub mod poly;
pub mod quad;
pub mod scalar;
pub mod tensor;
pub mod three_velocity;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
