use super::output::{emit, Table};
use super::{RunConfig, EXIT_OK};
use crate::analysis::{
    battery_1d, battery_2d, counterexample_ratio, l2_error, l2_project, rayleigh_max,
    rayleigh_max_constrained, sampling::PointSet, tensor2d_error,
};
use crate::bspline_core::function_quad_order;
use crate::error::{Error, Result};
use crate::spaces::{SpaceKind, SpaceSpec};
use crate::symbols::two_grid_constant;
use std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Quantity {
    Twogrid,
    Inverse,
    Approx,
    Counterexample,
    Tensor2d,
}

const TWO_SQRT3: f64 = 3.4641016151377544;

/// Table of one quantity over the configured grid.
pub fn scan_table(cfg: &RunConfig) -> Result<Table> {
    let quantity = cfg
        .quantity
        .ok_or_else(|| Error::InvalidArgument("scan needs --quantity".into()))?;
    let ps = |default_max: usize| {
        cfg.p_range
            .clone()
            .unwrap_or_else(|| (1..=default_max).collect())
    };
    let ns = |default: &[usize]| cfg.n_set.clone().unwrap_or_else(|| default.to_vec());
    let check_degrees = |ps: &[usize]| {
        if ps.contains(&0) {
            Err(Error::InvalidArgument("degrees must be >= 1".into()))
        } else {
            Ok(())
        }
    };
    let table = match quantity {
        Quantity::Twogrid => {
            let ps = ps(8);
            check_degrees(&ps)?;
            let mut t = Table::new(&["p", "n", "h", "convention", "q", "q_coarse", "rho0"]);
            for &p in &ps {
                for &n in &ns(&[4, 8, 16]) {
                    let r = two_grid_constant(p, n, cfg.convention)?;
                    t.push(vec![
                        p.into(),
                        n.into(),
                        r.h.into(),
                        cfg.convention.name().into(),
                        r.q.into(),
                        r.q_coarse.into(),
                        r.frequencies[0].rho.into(),
                    ]);
                }
            }
            t
        }
        Quantity::Inverse => {
            let ps = ps(8);
            check_degrees(&ps)?;
            let mut t = Table::new(&["p", "n", "h", "space", "h_sqrt_lambda_max", "bound"]);
            for &p in &ps {
                for &n in &ns(&[8, 16, 32]) {
                    let (space, v) = if p < n {
                        (
                            "reduced",
                            rayleigh_max(&SpaceSpec::unit(p, n, SpaceKind::Reduced)?, 1)?.value,
                        )
                    } else {
                        ("constrained", rayleigh_max_constrained(p, n)?)
                    };
                    let h = 1.0 / n as f64;
                    t.push(vec![
                        p.into(),
                        n.into(),
                        h.into(),
                        space.into(),
                        (h * v).into(),
                        TWO_SQRT3.into(),
                    ]);
                }
            }
            t
        }
        Quantity::Approx => {
            let ps = ps(6);
            check_degrees(&ps)?;
            let mut t = Table::new(&["function", "p", "n", "h", "error", "bound", "ratio"]);
            for g in battery_1d() {
                for &p in &ps {
                    for &n in ns(&[8, 16, 32]).iter().filter(|&&n| p < n) {
                        let spec = SpaceSpec::unit(p, n, SpaceKind::Reduced)?;
                        let err = l2_error(&*g.f, &l2_project(&*g.f, &spec)?)?;
                        let pts = PointSet::for_space(&spec, function_quad_order(p))?;
                        let bound = SQRT_2 * spec.h() * pts.integrate(|x| (g.df)(x).powi(2)).sqrt();
                        t.push(vec![
                            g.name.as_str().into(),
                            p.into(),
                            n.into(),
                            spec.h().into(),
                            err.into(),
                            bound.into(),
                            (err / bound).into(),
                        ]);
                    }
                }
            }
            t
        }
        Quantity::Counterexample => {
            let ps = ps(10);
            check_degrees(&ps)?;
            let h = cfg.h.unwrap_or(0.1);
            let mut t = Table::new(&["p", "h", "formula", "quadrature", "scaled"]);
            for &p in &ps {
                let c = counterexample_ratio(p, h)?;
                t.push(vec![
                    p.into(),
                    h.into(),
                    c.formula.into(),
                    c.quadrature.into(),
                    (c.formula * h).into(),
                ]);
            }
            t
        }
        Quantity::Tensor2d => {
            let ps = ps(3);
            check_degrees(&ps)?;
            let mut t = Table::new(&[
                "function",
                "p",
                "n",
                "h",
                "error",
                "isotropic_bound",
                "anisotropic_bound",
            ]);
            for f in battery_2d() {
                for &p in &ps {
                    for &n in ns(&[8, 16]).iter().filter(|&&n| p < n) {
                        let r = tensor2d_error(&f, &SpaceSpec::unit(p, n, SpaceKind::Reduced)?)?;
                        t.push(vec![
                            f.name.as_str().into(),
                            p.into(),
                            n.into(),
                            r.h.into(),
                            r.error.into(),
                            r.isotropic_bound.into(),
                            r.anisotropic_bound.into(),
                        ]);
                    }
                }
            }
            t
        }
    };
    Ok(table)
}

pub fn cmd_scan(cfg: &RunConfig) -> Result<i32> {
    let table = scan_table(cfg)?;
    emit(cfg.out.as_deref(), |w| table.write(cfg.format, w))?;
    Ok(EXIT_OK)
}
