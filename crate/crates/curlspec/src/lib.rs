//! Spectral toolkit for curl eigenvalue bounds on rotationally symmetric
//! toroidal domains.
//!
//! The crate compares two families of eigenvalues on a solid torus of
//! revolution: the symmetric branch, identified with Dirichlet eigenvalues
//! of the Grad-Shafranov operator on the cross-section, and the
//! antisymmetric branch, governed by Bessel dispersion relations on flat
//! tubes. Whichever branch attains the smaller first positive eigenvalue
//! decides whether the first Amperian curl eigenfield is rotationally
//! symmetric. An exact-rational engine certifies the one sign condition the
//! construction of asymmetric domains hinges on.
//!
//! Every capability has a runnable example under `examples/`; the `curlspec`
//! binary exposes the same pipelines as subcommands.

// `!(x > 0)` rejects NaN where `x <= 0` would accept it; reference values
// keep their full printed precision.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

mod dd;

pub mod bessel;
pub mod certificate;
pub mod cli;
pub mod dispersion;
pub mod error;
pub mod grad_shafranov;
pub mod symmetry;

pub use error::{Error, Result};
