//! Numerical laboratory for almost-representations of finitely presented
//! groups into finite-dimensional unitary groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`words`]: free-group words, reduction, and evaluation on unitaries.
//! - [`groups`]: presentations, normal-form backends (`Z^d`, `Z/m`) and
//!   finite windows (balls) on which cochains live.
//! - [`normkit`]: dense complex matrices, the operator/Frobenius/normalized
//!   Hilbert-Schmidt norms, `|A|`, nearest involution, skew-hermitian
//!   exponential, Haar-random unitaries.
//! - [`almostrep`]: almost-representations, defect and distance functionals,
//!   lifts over a window, relator bounds from normal-closure witnesses.
//! - [`cohomology`]: the defect-diminishing pipeline (Hochschild cocycle,
//!   group 2-cocycle, least-squares coboundary, exponential correction).
//! - [`families`]: the clock/shift pair, the `BS(2,3)` pair in `U(6n)`, and
//!   perturbed genuine representations.
//! - [`cli`]: the `sweep`, `verify` and `correct` commands behind the
//!   `asymlab` binary.

pub mod almostrep;
pub mod cli;
pub mod cohomology;
mod error;
pub mod families;
pub mod groups;
pub mod normkit;
pub mod seed;
pub mod words;

pub use error::{Error, Result};
