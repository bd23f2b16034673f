//! Uniform splines of maximum smoothness: basis functions, spline spaces,
//! mass/stiffness/prolongation operators, their Fourier symbols, and
//! numerical checks of approximation, inverse and two-grid estimates.

pub mod analysis;
pub mod bspline_core;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod operators;
pub mod spaces;
pub mod symbols;

pub use error::{Error, Result};
pub use spaces::{SpaceKind, SpaceSpec};
