use super::battery::Function2d;
use super::report::BoundReport;
use super::sampling::{basis_matrix, PointSet};
use crate::bspline_core::function_quad_order;
use crate::error::Result;
use crate::linalg::{spd_solve_matrix, DenseMatrix};
use crate::operators::gram_matrix;
use crate::spaces::SpaceSpec;

/// Best `L2` approximation error of a bivariate function in the tensor
/// product of a univariate space with itself, and the two bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor2dResult {
    pub p: usize,
    pub n: usize,
    pub h: f64,
    pub error: f64,
    pub h1_seminorm: f64,
    /// `2 h |f|_{H1}`.
    pub isotropic_bound: f64,
    /// `sqrt(2) h (||f_x|| + ||f_y||)`.
    pub anisotropic_bound: f64,
    /// Coefficient matrix `W` of the approximant `sum W_ij b_i(x) b_j(y)`.
    pub coefficients: DenseMatrix,
}

impl Tensor2dResult {
    pub fn isotropic_report(&self, tol: f64) -> BoundReport {
        BoundReport::upper(
            "tensor2d",
            self.p,
            self.n,
            self.h,
            self.error,
            self.isotropic_bound,
            tol,
        )
    }

    pub fn anisotropic_report(&self, tol: f64) -> BoundReport {
        BoundReport::upper(
            "tensor2d-anisotropic",
            self.p,
            self.n,
            self.h,
            self.error,
            self.anisotropic_bound,
            tol,
        )
    }
}

/// Solves `M W M = F` with `F_ij = ∫∫ f b_i(x) b_j(y)` and measures the error
/// by tensor Gauss quadrature.
pub fn tensor2d_error(f: &Function2d, spec: &SpaceSpec) -> Result<Tensor2dResult> {
    let pts = PointSet::for_space(spec, function_quad_order(spec.p()))?;
    let nq = pts.len();
    let b = basis_matrix(spec, &pts.xs, 0);
    let values = DenseMatrix::from_fn(nq, nq, |i, j| (f.f)(pts.xs[i], pts.xs[j]));
    let w = DenseMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&pts.ws));
    let rhs = b.transpose() * &w * &values * &w * &b;
    let m = gram_matrix(spec, 0, false)?;
    // W = M^{-1} F M^{-1}
    let half = spd_solve_matrix(&m, &rhs)?;
    let coefficients = spd_solve_matrix(&m, &half.transpose())?.transpose();
    let approx = &b * &coefficients * b.transpose();
    let mut err2 = 0.0;
    let mut fx2 = 0.0;
    let mut fy2 = 0.0;
    for i in 0..nq {
        for j in 0..nq {
            let ww = pts.ws[i] * pts.ws[j];
            let (x, y) = (pts.xs[i], pts.xs[j]);
            err2 += ww * (values[(i, j)] - approx[(i, j)]).powi(2);
            fx2 += ww * (f.dx)(x, y).powi(2);
            fy2 += ww * (f.dy)(x, y).powi(2);
        }
    }
    let h = spec.h();
    let h1 = (fx2 + fy2).sqrt();
    Ok(Tensor2dResult {
        p: spec.p(),
        n: spec.n(),
        h,
        error: err2.sqrt(),
        h1_seminorm: h1,
        isotropic_bound: 2.0 * h * h1,
        anisotropic_bound: 2f64.sqrt() * h * (fx2.sqrt() + fy2.sqrt()),
        coefficients,
    })
}
