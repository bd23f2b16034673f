//! Scalar kernels: cardinal B-splines, Eulerian numbers and piecewise Gauss
//! quadrature.

pub(crate) mod cardinal;
mod eulerian;
mod quadrature;

pub use cardinal::{cardinal_derivative, cardinal_eval, cardinal_eval_sided, Side};
pub use eulerian::{binomial, eulerian_row_normalized};
pub use quadrature::{gauss_rule, integrate_piecewise, QuadRule};

/// Largest degree accepted by the public constructors.
pub const DEFAULT_DEGREE_CAP: usize = 20;

/// Default number of Gauss nodes per element for products of two degree-`p`
/// splines.
pub fn default_quad_order(p: usize) -> usize {
    p + 2
}

/// Gauss nodes per element for inner products that involve a user function.
pub fn function_quad_order(p: usize) -> usize {
    (p + 2).max(10)
}
