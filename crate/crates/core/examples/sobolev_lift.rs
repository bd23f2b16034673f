//! Approximation of `cos(2 pi x)` through its derivative: project `u'` one
//! degree lower, integrate back, then correct in L2.

use maxsplines::analysis::{
    composed_approximation, h1_seminorm_error, l2_project, mean_matched_lift, sampling::PointSet,
};
use maxsplines::{SpaceKind, SpaceSpec};
use std::f64::consts::PI;

fn main() -> maxsplines::Result<()> {
    let u = |x: f64| (2.0 * PI * x).cos();
    let du = |x: f64| -2.0 * PI * (2.0 * PI * x).sin();
    let h2 = 4.0 * PI * PI / 2f64.sqrt();
    for p in 2..=5 {
        for n in [8, 16, 32] {
            let h = 1.0 / n as f64;
            let slope = l2_project(du, &SpaceSpec::unit(p - 1, n, SpaceKind::Reduced)?)?;
            let w = mean_matched_lift(&slope, 0.0)?;
            let e1 = h1_seminorm_error(du, &w)?;
            let (_, approx) = composed_approximation(u, du, p, n, 0.0, 1.0)?;
            let e0 = PointSet::uniform(0.0, 1.0, n, 12)?
                .integrate(|x| (u(x) - approx(x)).powi(2))
                .sqrt();
            println!(
                "p={p} n={n:>2}  |u-w|_H1={e1:.3e} (<= {:.3e})  ||u-u_h||={e0:.3e} (<= {:.3e})",
                2f64.sqrt() * h * h2,
                2.0 * h * h * h2
            );
        }
    }
    Ok(())
}
