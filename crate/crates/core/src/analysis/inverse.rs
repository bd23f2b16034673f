use super::projection::CoefVector;
use super::sampling::{basis_matrix, PointSet};
use crate::bspline_core::{default_quad_order, gauss_rule};
use crate::error::{Error, Result};
use crate::linalg::{generalized_eigen, null_space, DenseMatrix};
use crate::operators::gram_matrix;
use crate::spaces::{constrained_reduced_basis, SpaceKind, SpaceSpec};

/// Largest ratio `|u|_{H^r} / |u|_{H^{r-1}}` over the space and a maximizer.
#[derive(Debug, Clone, PartialEq)]
pub struct RayleighMax {
    /// `sqrt(lambda_max)`.
    pub value: f64,
    pub argmax: CoefVector,
}

/// Maximal generalized eigenvalue of the `H^r` and `H^{r-1}` Gram matrices.
pub fn rayleigh_max(spec: &SpaceSpec, r: usize) -> Result<RayleighMax> {
    if r == 0 || r > spec.p() {
        return Err(Error::InvalidDerivativeOrder {
            order: r,
            reason: "need 1 <= r <= p",
        });
    }
    let a = gram_matrix(spec, r, false)?;
    let b = gram_matrix(spec, r - 1, false)?;
    let (vals, vecs) = generalized_eigen(&a, &b)?;
    let last = vals.len() - 1;
    let argmax = CoefVector::new(spec.clone(), vecs.column(last).iter().copied().collect())?;
    Ok(RayleighMax {
        value: vals[last].max(0.0).sqrt(),
        argmax,
    })
}

/// `sqrt(lambda_max)` of the `H1` and `L2` Gram matrices on the splines of
/// degree `p` on `n` elements of `(0, 1)` with vanishing odd boundary
/// derivatives, built from the constraints so that `p >= n` is allowed.
pub fn rayleigh_max_constrained(p: usize, n: usize) -> Result<f64> {
    let full = SpaceSpec::unit(p, n, SpaceKind::Full)?;
    let basis = constrained_reduced_basis(p, n, 1);
    let m = gram_matrix(&full, 0, false)?;
    let k = gram_matrix(&full, 1, false)?;
    let (vals, _) = generalized_eigen(
        &(basis.transpose() * k * &basis),
        &(basis.transpose() * m * &basis),
    )?;
    Ok(vals[vals.len() - 1].max(0.0).sqrt())
}

/// `|u|_{H1} / ||u||_{L2}` for `u(x) = (1 - x/h)^p` on `[0, h)`, zero elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counterexample {
    pub p: usize,
    pub h: f64,
    pub formula: f64,
    pub quadrature: f64,
}

pub fn counterexample_ratio(p: usize, h: f64) -> Result<Counterexample> {
    if p == 0 {
        return Err(Error::InvalidArgument("counterexample needs p >= 1".into()));
    }
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "counterexample needs 0 < h < 1, got {h}"
        )));
    }
    let pf = p as f64;
    let formula = ((2.0 * pf + 1.0) / (2.0 * pf - 1.0)).sqrt() * pf / h;
    let rule = gauss_rule(p + 1)?;
    let u = |x: f64| (1.0 - x / h).powi(p as i32);
    let du = |x: f64| -pf / h * (1.0 - x / h).powi(p as i32 - 1);
    let l2 = rule.integrate(0.0, h, |x| u(x) * u(x));
    let h1 = rule.integrate(0.0, h, |x| du(x) * du(x));
    Ok(Counterexample {
        p,
        h,
        formula,
        quadrature: (h1 / l2).sqrt(),
    })
}

/// A spline orthogonal in `L2` to a coarser space, with its norms.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub coefs: CoefVector,
    pub l2_norm: f64,
    pub h1_seminorm: f64,
    /// `max_i |(w, v_i)|` over the basis of the space it is orthogonal to.
    pub residual: f64,
}

/// Element of the reduced space on `2n` elements of `(0, 1)` that is
/// `L2`-orthogonal to the full space on `n` elements, chosen with the
/// largest `|w|_{H1} / ||w||_{L2}`.
pub fn orthogonal_witness(p: usize, n_coarse: usize) -> Result<Witness> {
    let fine = SpaceSpec::unit(p, 2 * n_coarse, SpaceKind::Reduced)?;
    let coarse = SpaceSpec::unit(p, n_coarse, SpaceKind::Full)?;
    witness(&fine, &coarse, true)
}

/// Element of the reduced space on `n` elements of `(0, 1)` that is
/// `L2`-orthogonal to the full space on `n/2` elements, chosen with the
/// smallest `|w|_{H1} / ||w||_{L2}`.
pub fn smooth_witness(p: usize, n: usize) -> Result<Witness> {
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(
            "smooth witness needs an even element count".into(),
        ));
    }
    let fine = SpaceSpec::unit(p, n, SpaceKind::Reduced)?;
    let coarse = SpaceSpec::unit(p, n / 2, SpaceKind::Full)?;
    witness(&fine, &coarse, false)
}

fn witness(fine: &SpaceSpec, coarse: &SpaceSpec, roughest: bool) -> Result<Witness> {
    let pts = PointSet::for_space(fine, default_quad_order(fine.p()))?;
    let bf = basis_matrix(fine, &pts.xs, 0);
    let bc = basis_matrix(coarse, &pts.xs, 0);
    let w = DenseMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&pts.ws));
    let cross = bc.transpose() * &w * &bf;
    let (basis, rank) = null_space(&cross, 1e-10);
    if basis.ncols() == 0 {
        return Err(Error::EmptyWitnessSpace {
            fine_dim: fine.dimension(),
            rank,
        });
    }
    let m = gram_matrix(fine, 0, false)?;
    let k = gram_matrix(fine, 1, false)?;
    let mr = basis.transpose() * &m * &basis;
    let kr = basis.transpose() * &k * &basis;
    let (vals, vecs) = generalized_eigen(&kr, &mr)?;
    let pick = if roughest { vals.len() - 1 } else { 0 };
    let v = &basis * vecs.column(pick);
    let l2 = v.dot(&(&m * &v)).sqrt();
    let v = v / l2;
    let residual = (&cross * &v).amax();
    let h1 = v.dot(&(&k * &v)).max(0.0).sqrt();
    Ok(Witness {
        coefs: CoefVector::new(fine.clone(), v.iter().copied().collect())?,
        l2_norm: 1.0,
        h1_seminorm: h1,
        residual,
    })
}
