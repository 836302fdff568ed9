//! Randomized embeddings `y = h(Ax + w)` with designable distance maps.
//!
//! * [`maps`]: periodic nonlinearities `h` and their power spectra.
//! * [`randproj`]: projection matrices, dither, characteristic functions.
//! * [`embedder`]: embedding operators, embedding distances, files.
//! * [`theory`]: distance/kernel maps, inversion, probability bounds.
//! * [`experiments`]: configurable simulation runners writing CSV.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod embedder;
pub mod error;
pub mod experiments;
pub mod maps;
pub mod randproj;
pub mod table;
pub mod theory;

pub use error::{Error, Result};
