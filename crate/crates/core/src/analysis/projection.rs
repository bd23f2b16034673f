use super::sampling::{basis_matrix, PointSet};
use crate::bspline_core::function_quad_order;
use crate::error::{Error, Result};
use crate::linalg::spd_solve;
use crate::operators::{gram_matrix, prolongation, stiffness_circulant_folded};
use crate::spaces::{spline_eval, SpaceKind, SpaceSpec};
use nalgebra::DVector;

/// Coefficients of a spline in a given space.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefVector {
    pub spec: SpaceSpec,
    pub values: Vec<f64>,
}

impl CoefVector {
    pub fn new(spec: SpaceSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.dimension() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                spec.dimension(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        Ok(CoefVector { spec, values })
    }

    pub fn constant(spec: SpaceSpec, c: f64) -> Result<Self> {
        let values = vec![c; spec.dimension()];
        Self::new(spec, values)
    }

    /// `r`-th derivative at `x`.
    pub fn eval(&self, x: f64, r: usize) -> f64 {
        spline_eval(&self.spec, &self.values, x, r).expect("length checked at construction")
    }

    fn vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.values)
    }

    /// `||d^r s||_{L2(a,b)}`, exact up to rounding.
    pub fn seminorm(&self, r: usize) -> Result<f64> {
        let g = gram_matrix(&self.spec, r, false)?;
        let v = self.vector();
        Ok(v.dot(&(g * &v)).max(0.0).sqrt())
    }
}

fn points(spec: &SpaceSpec) -> Result<PointSet> {
    PointSet::for_space(spec, function_quad_order(spec.p()))
}

/// Best `L2(a, b)` approximation of `f` in the space.
pub fn l2_project<F: Fn(f64) -> f64>(f: F, spec: &SpaceSpec) -> Result<CoefVector> {
    let pts = points(spec)?;
    let b = basis_matrix(spec, &pts.xs, 0);
    let fw = DVector::from_iterator(
        pts.len(),
        pts.xs.iter().zip(&pts.ws).map(|(x, w)| w * f(*x)),
    );
    let rhs = b.transpose() * fw;
    let m = gram_matrix(spec, 0, false)?;
    let sol = spd_solve(&m, &rhs)?;
    CoefVector::new(spec.clone(), sol.iter().copied().collect())
}

/// `H1∘` projection on a periodic space: `(s, v)_{H1∘} = (f, v)_{H1∘}` for all
/// `v`, with `(u, v)_{H1∘} = (u', v') + (∫u)(∫v)`.
pub fn h1circ_project<F, G>(f: F, df: G, spec: &SpaceSpec) -> Result<CoefVector>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    if spec.kind() != SpaceKind::Periodic {
        return Err(Error::InvalidSpace(
            "the H1∘ projection needs a periodic space".into(),
        ));
    }
    let pts = points(spec)?;
    let b0 = basis_matrix(spec, &pts.xs, 0);
    let b1 = basis_matrix(spec, &pts.xs, 1);
    let w = DVector::from_column_slice(&pts.ws);
    let dfw = DVector::from_iterator(
        pts.len(),
        pts.xs.iter().zip(&pts.ws).map(|(x, w)| w * df(*x)),
    );
    let mean_f = pts.integrate(&f);
    let means = b0.transpose() * w;
    let rhs = b1.transpose() * dfw + means * mean_f;
    let k = gram_matrix(spec, 1, true)?;
    let sol = spd_solve(&k, &rhs)?;
    CoefVector::new(spec.clone(), sol.iter().copied().collect())
}

/// Galerkin coarse approximation `K_h^{-1} P^T K_{h/2} u` of a spline in the
/// periodic space on `2n` elements.
pub fn coarse_approx(fine: &CoefVector) -> Result<CoefVector> {
    let spec = &fine.spec;
    if spec.kind() != SpaceKind::Periodic || !spec.n().is_multiple_of(2) {
        return Err(Error::InvalidSpace(
            "coarse approximation needs a periodic space on an even grid".into(),
        ));
    }
    let nc = spec.n() / 2;
    let coarse = spec.with_elements(nc)?;
    let p = spec.p();
    let kf = stiffness_circulant_folded(p, spec.h(), spec.n())?.to_dense();
    let kc = stiffness_circulant_folded(p, coarse.h(), nc)?.to_dense();
    let pm = prolongation(p, nc)?;
    let rhs = pm.transpose() * (kf * fine.vector());
    let sol = spd_solve(&kc, &rhs)?;
    CoefVector::new(coarse, sol.iter().copied().collect())
}

/// `||f - s||_{L2(a,b)}` by quadrature on the grid of `s`.
pub fn l2_error<F: Fn(f64) -> f64>(f: F, s: &CoefVector) -> Result<f64> {
    pointwise_error(f, s, 0)
}

/// `|f - s|_{H1(a,b)}` given `f'`.
pub fn h1_seminorm_error<G: Fn(f64) -> f64>(df: G, s: &CoefVector) -> Result<f64> {
    pointwise_error(df, s, 1)
}

fn pointwise_error<F: Fn(f64) -> f64>(f: F, s: &CoefVector, r: usize) -> Result<f64> {
    let pts = points(&s.spec)?;
    let b = basis_matrix(&s.spec, &pts.xs, r);
    let vals = b * s.vector();
    let sum: f64 = pts
        .xs
        .iter()
        .zip(&pts.ws)
        .zip(vals.iter())
        .map(|((x, w), v)| w * (f(*x) - v).powi(2))
        .sum();
    Ok(sum.sqrt())
}
