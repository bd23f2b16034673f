//! Projections, error norms and the numerical checks of the approximation,
//! inverse and two-grid estimates.

mod battery;
mod inverse;
mod lift;
mod projection;
mod report;
pub mod sampling;
mod tensor;
mod twogrid;

pub use battery::{battery_1d, battery_2d, Function1d, Function2d};
pub use inverse::{
    counterexample_ratio, orthogonal_witness, rayleigh_max, rayleigh_max_constrained,
    smooth_witness, Counterexample, RayleighMax, Witness,
};
pub use lift::{composed_approximation, mean_matched_lift, sobolev_lift};
pub use projection::{
    coarse_approx, h1_seminorm_error, h1circ_project, l2_error, l2_project, CoefVector,
};
pub use report::{reports_to_csv, reports_to_json, BoundReport};
pub use tensor::{tensor2d_error, Tensor2dResult};
pub use twogrid::two_grid_error_direct;
