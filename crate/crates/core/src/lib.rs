//! Exact verification of tiling and spectrality for subsets of finite abelian groups.

pub mod analysis;
pub mod certificate;
pub mod cli;
pub mod constructions;
pub mod cyclo;
pub mod error;
pub mod fourier;
pub mod groups;

pub use error::{Error, Result};
