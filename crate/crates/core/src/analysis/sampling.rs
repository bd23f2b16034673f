//! Quadrature point sets on a spline grid and the basis values at them.

use crate::bspline_core::{cardinal::derivative_sided, gauss_rule, Side};
use crate::error::Result;
use crate::linalg::DenseMatrix;
use crate::spaces::SpaceSpec;

/// Gauss points of every element of a uniform grid on `(a, b)`.
#[derive(Debug, Clone)]
pub struct PointSet {
    pub xs: Vec<f64>,
    pub ws: Vec<f64>,
}

impl PointSet {
    pub fn uniform(a: f64, b: f64, n: usize, order: usize) -> Result<Self> {
        let rule = gauss_rule(order)?;
        let h = (b - a) / n as f64;
        let mut xs = Vec::with_capacity(n * order);
        let mut ws = Vec::with_capacity(n * order);
        for e in 0..n {
            for (s, w) in rule.nodes.iter().zip(&rule.weights) {
                xs.push(a + h * (e as f64 + s));
                ws.push(h * w);
            }
        }
        Ok(PointSet { xs, ws })
    }

    /// Points on the grid of `spec`.
    pub fn for_space(spec: &SpaceSpec, order: usize) -> Result<Self> {
        Self::uniform(spec.a(), spec.b(), spec.n(), order)
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.xs.iter().zip(&self.ws).map(|(x, w)| w * f(*x)).sum()
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

/// Values of the `r`-th derivatives of the full B-splines of `spec` that are
/// active at `x`: `(first full position, values)`.
pub fn active_full_values(spec: &SpaceSpec, x: f64, r: usize) -> (usize, Vec<f64>) {
    let p = spec.p();
    let h = spec.h();
    let t = (x - spec.a()) / h;
    let side = if x <= spec.a() {
        Side::Right
    } else {
        Side::Left
    };
    let e = (t.ceil() as i64 - 1).clamp(0, spec.n() as i64 - 1);
    let scale = h.powi(r as i32);
    let vals = (0..=p)
        .map(|k| derivative_sided(p, e - p as i64 + k as i64, t, r, side) / scale)
        .collect();
    (e as usize, vals)
}

/// Dense `points x dimension` matrix of `r`-th derivative basis values.
pub fn basis_matrix(spec: &SpaceSpec, xs: &[f64], r: usize) -> DenseMatrix {
    let mut full = DenseMatrix::zeros(xs.len(), spec.full_dimension());
    for (q, &x) in xs.iter().enumerate() {
        let (first, vals) = active_full_values(spec, x, r);
        for (k, v) in vals.into_iter().enumerate() {
            full[(q, first + k)] = v;
        }
    }
    full * spec.extraction().transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{basis_eval, SpaceKind};

    #[test]
    fn basis_matrix_matches_pointwise_evaluation() {
        for kind in [SpaceKind::Full, SpaceKind::Reduced, SpaceKind::Periodic] {
            let spec = SpaceSpec::new(3, 6, -1.0, 2.0, kind).unwrap();
            let pts = PointSet::for_space(&spec, 4).unwrap();
            for r in 0..=2 {
                let b = basis_matrix(&spec, &pts.xs, r);
                for (q, &x) in pts.xs.iter().enumerate() {
                    for k in 0..spec.dimension() {
                        let want = basis_eval(&spec, spec.index_at(k), x, r).unwrap();
                        assert!((b[(q, k)] - want).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn point_set_integrates_polynomials() {
        let pts = PointSet::uniform(0.0, 2.0, 5, 3).unwrap();
        assert_eq!(pts.len(), 15);
        assert!((pts.integrate(|x| x * x) - 8.0 / 3.0).abs() < 1e-14);
    }
}
