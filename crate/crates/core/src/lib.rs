//! Traces of strips between two curves on a surface and four independent
//! computations of their Viterbo–Maslov index, in exact rational arithmetic.

#![allow(clippy::result_large_err)]

pub mod chains;
pub mod cover;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod generate;
pub mod geometry;
pub mod maslov;
pub mod reduction;
pub mod render;
pub mod trace;
pub mod verify;

pub use error::{Error, Result};
