//! Exact deciders for coorbit-compatible matrices of shearlet dilation
//! groups, with a floating-point coarse-geometry oracle for cross-checks.

pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod shearlet;
pub mod symmetry;

pub use error::{Error, Result};
