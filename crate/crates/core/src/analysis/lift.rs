use super::projection::{l2_project, CoefVector};
use super::sampling::{basis_matrix, PointSet};
use crate::bspline_core::function_quad_order;
use crate::error::{Error, Result};
use crate::spaces::{SpaceKind, SpaceSpec};

/// Antiderivative `c + ∫_a^x s` of a degree `p-1` spline, as a spline of
/// degree `p` in the full space on the same grid.
pub fn sobolev_lift(source: &CoefVector, c: f64) -> Result<CoefVector> {
    let spec = &source.spec;
    let target = SpaceSpec::new(spec.p() + 1, spec.n(), spec.a(), spec.b(), SpaceKind::Full)?;
    let src = spec.to_full(&source.values)?;
    let h = spec.h();
    // d_i - d_{i-1} = h c_i for the B-splines of one degree higher
    let mut d = Vec::with_capacity(target.dimension());
    d.push(0.0);
    for v in &src {
        let last = *d.last().expect("nonempty");
        d.push(last + h * v);
    }
    let at_a: f64 = {
        let lift = CoefVector::new(target.clone(), d.clone())?;
        lift.eval(spec.a(), 0)
    };
    let shift = c - at_a;
    CoefVector::new(target, d.into_iter().map(|v| v + shift).collect())
}

/// Lift whose integral over `(a, b)` equals `mean_target`.
pub fn mean_matched_lift(source: &CoefVector, mean_target: f64) -> Result<CoefVector> {
    let lift = sobolev_lift(source, 0.0)?;
    let spec = &lift.spec;
    let pts = PointSet::for_space(spec, function_quad_order(spec.p()))?;
    let vals = basis_matrix(spec, &pts.xs, 0) * nalgebra::DVector::from_column_slice(&lift.values);
    let integral: f64 = vals.iter().zip(&pts.ws).map(|(v, w)| v * w).sum();
    let shift = (mean_target - integral) / (spec.b() - spec.a());
    CoefVector::new(
        lift.spec.clone(),
        lift.values.iter().map(|v| v + shift).collect(),
    )
}

/// Two-level approximation of `u` with derivative `du`: `w` is the
/// mean-matched lift of the best `L2` approximation of `du` in the reduced
/// space of degree `p-1`, then `w` is corrected by the best `L2`
/// approximation of `u - w` in the reduced space of degree `p`.
///
/// Returns the lift `w` and the corrected approximant as a function.
pub fn composed_approximation<F, G>(
    u: F,
    du: G,
    p: usize,
    n: usize,
    a: f64,
    b: f64,
) -> Result<(CoefVector, impl Fn(f64) -> f64)>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    if p < 2 {
        return Err(Error::InvalidArgument(
            "composed approximation needs p >= 2".into(),
        ));
    }
    let lower = SpaceSpec::new(p - 1, n, a, b, SpaceKind::Reduced)?;
    let reduced = SpaceSpec::new(p, n, a, b, SpaceKind::Reduced)?;
    let slope = l2_project(&du, &lower)?;
    let pts = PointSet::uniform(a, b, n, function_quad_order(p))?;
    let w = mean_matched_lift(&slope, pts.integrate(&u))?;
    let w_eval = w.clone();
    let corr = l2_project(|x| u(x) - w_eval.eval(x, 0), &reduced)?;
    let w_out = w.clone();
    Ok((w_out, move |x: f64| w.eval(x, 0) + corr.eval(x, 0)))
}
