use super::output::{emit, write_json, Format};
use super::{RunConfig, EXIT_FAIL, EXIT_OK};
use crate::analysis::sampling::PointSet;
use crate::analysis::{
    battery_1d, battery_2d, composed_approximation, counterexample_ratio, h1_seminorm_error,
    l2_error, l2_project, mean_matched_lift, orthogonal_witness, rayleigh_max,
    rayleigh_max_constrained, reports_to_csv, smooth_witness, tensor2d_error, BoundReport,
};
use crate::bspline_core::function_quad_order;
use crate::error::{Error, Result};
use crate::spaces::{SpaceKind, SpaceSpec};
use crate::symbols::{psi, two_grid_constant};
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::io::Write;

pub const DEFAULT_TWO_GRID_N: [usize; 3] = [4, 8, 16];
pub const DEFAULT_SPACE_N: [usize; 3] = [8, 16, 32];
pub const DEFAULT_P_MAX: usize = 8;
const TWO_SQRT3: f64 = 3.4641016151377544;

/// Builtin relative tolerances.
fn builtin_tol(quantity: &str) -> f64 {
    match quantity {
        // absolute 1e-12 on 1/sqrt(2)
        "twogrid" => 1e-12 * SQRT_2,
        "psi" => 1e-12,
        _ => 1e-9,
    }
}

/// Largest sampled `Psi_p` over the admissible region
/// `[0,1) x (0,1] ∪ (-1,0] x [1,inf)` on a `k x k` grid per part.
pub fn psi_sample_max(p: usize, k: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..k {
        let c = i as f64 / k as f64;
        for j in 0..k {
            let xi = (j + 1) as f64 / k as f64;
            worst = worst.max(psi(p, c, xi)?).max(psi(p, -c, 1.0 / xi)?);
        }
    }
    Ok(worst)
}

/// Every check selected by the configuration.
pub fn verification_reports(cfg: &RunConfig) -> Result<Vec<BoundReport>> {
    let ps: Vec<usize> = cfg
        .p_range
        .clone()
        .unwrap_or_else(|| (1..=DEFAULT_P_MAX).collect());
    if ps.contains(&0) {
        return Err(Error::InvalidArgument(
            "degrees must be >= 1 for verification".into(),
        ));
    }
    let tg_n = cfg
        .n_set
        .clone()
        .unwrap_or_else(|| DEFAULT_TWO_GRID_N.to_vec());
    let sp_n = cfg
        .n_set
        .clone()
        .unwrap_or_else(|| DEFAULT_SPACE_N.to_vec());
    let tol = |q: &str| cfg.tolerances.get(q, builtin_tol(q));
    let conv = cfg.convention;
    let mut out = Vec::new();

    for &p in &ps {
        for &n in &tg_n {
            let r = two_grid_constant(p, n, conv)?;
            out.push(
                BoundReport::upper("twogrid", p, n, r.h, r.q, FRAC_1_SQRT_2, tol("twogrid"))
                    .with_convention(conv.name()),
            );
        }
    }
    for &p in &ps {
        out.push(BoundReport::upper(
            "psi",
            p,
            0,
            0.0,
            psi_sample_max(p, 200)?,
            0.5,
            tol("psi"),
        ));
    }
    for &p in &ps {
        for &n in &sp_n {
            let h = 1.0 / n as f64;
            let (quantity, value) = if p < n {
                (
                    "inverse",
                    rayleigh_max(&SpaceSpec::unit(p, n, SpaceKind::Reduced)?, 1)?.value,
                )
            } else {
                ("inverse-constrained", rayleigh_max_constrained(p, n)?)
            };
            out.push(BoundReport::upper(
                quantity,
                p,
                n,
                h,
                h * value,
                TWO_SQRT3,
                tol("inverse"),
            ));
            if 2.0 * h * (p as f64) < 1.0 {
                out.push(BoundReport::lower(
                    "sharpness",
                    p,
                    n,
                    h,
                    h * value,
                    1.0 / (2.0 * SQRT_2),
                    tol("sharpness"),
                ));
            }
        }
    }
    for &p in ps.iter().filter(|&&p| p >= 3) {
        for &n in &sp_n {
            let c = counterexample_ratio(p, 1.0 / n as f64)?;
            out.push(BoundReport::lower(
                "counterexample",
                p,
                n,
                c.h,
                c.formula * c.h,
                TWO_SQRT3,
                0.0,
            ));
        }
    }
    let battery = battery_1d();
    for &p in &ps {
        for &n in sp_n.iter().filter(|&&n| p < n) {
            let spec = SpaceSpec::unit(p, n, SpaceKind::Reduced)?;
            let pts = PointSet::for_space(&spec, function_quad_order(p))?;
            for g in &battery {
                let err = l2_error(&*g.f, &l2_project(&*g.f, &spec)?)?;
                let semi = pts.integrate(|x| (g.df)(x).powi(2)).sqrt();
                out.push(BoundReport::upper(
                    "approx",
                    p,
                    n,
                    spec.h(),
                    err,
                    SQRT_2 * spec.h() * semi,
                    tol("approx"),
                ));
            }
        }
    }
    for &p in &ps {
        for &n in &sp_n {
            let h = 1.0 / n as f64;
            match orthogonal_witness(p, n) {
                Ok(w) => out.push(BoundReport::lower(
                    "witness",
                    p,
                    n,
                    h,
                    w.l2_norm,
                    h * w.h1_seminorm / (4.0 * 3f64.sqrt()),
                    tol("witness"),
                )),
                Err(Error::EmptyWitnessSpace { .. } | Error::InvalidSpace(_)) => {}
                Err(e) => return Err(e),
            }
            if n % 2 == 0 && 2.0 * h * (p as f64) < 1.0 {
                match smooth_witness(p, n) {
                    Ok(w) => out.push(BoundReport::upper(
                        "smooth-witness",
                        p,
                        n,
                        h,
                        w.l2_norm,
                        SQRT_2 * 2.0 * h * w.h1_seminorm,
                        tol("smooth-witness"),
                    )),
                    Err(Error::EmptyWitnessSpace { .. } | Error::InvalidSpace(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let u = |x: f64| (2.0 * PI * x).cos();
    let du = |x: f64| -2.0 * PI * (2.0 * PI * x).sin();
    let h2 = 4.0 * PI * PI / SQRT_2;
    for &p in ps.iter().filter(|&&p| p >= 2) {
        for &n in sp_n.iter().filter(|&&n| p < n) {
            let h = 1.0 / n as f64;
            let slope = l2_project(du, &SpaceSpec::unit(p - 1, n, SpaceKind::Reduced)?)?;
            let w = mean_matched_lift(&slope, 0.0)?;
            let e1 = h1_seminorm_error(du, &w)?;
            out.push(BoundReport::upper(
                "lift",
                p,
                n,
                h,
                e1,
                SQRT_2 * h * h2,
                tol("lift"),
            ));
            let (_, approx) = composed_approximation(u, du, p, n, 0.0, 1.0)?;
            let pts = PointSet::uniform(0.0, 1.0, n, function_quad_order(p))?;
            let e0 = pts.integrate(|x| (u(x) - approx(x)).powi(2)).sqrt();
            out.push(BoundReport::upper(
                "composed",
                p,
                n,
                h,
                e0,
                2.0 * h * h * h2,
                tol("composed"),
            ));
        }
    }
    let battery2 = battery_2d();
    for &p in ps.iter().filter(|&&p| p <= 3) {
        for &n in sp_n.iter().filter(|&&n| p < n) {
            let spec = SpaceSpec::unit(p, n, SpaceKind::Reduced)?;
            for f in &battery2 {
                out.push(tensor2d_error(f, &spec)?.isotropic_report(tol("tensor2d")));
            }
        }
    }
    Ok(out)
}

fn print_table(reports: &[BoundReport]) {
    println!(
        "{:<16} {:>3} {:>4} {:>12} {:>22} {:>22} {:>22} {:>5}",
        "quantity", "p", "n", "h", "value", "bound", "ratio", "pass"
    );
    for r in reports {
        println!(
            "{:<16} {:>3} {:>4} {:>12.6e} {:>22.15e} {:>22.15e} {:>22.15e} {:>5}",
            r.quantity, r.p, r.n, r.h, r.value, r.bound, r.ratio, r.pass
        );
    }
}

/// Runs the suite; exit 0 iff every check passes.
pub fn cmd_verify(cfg: &RunConfig) -> Result<i32> {
    let reports = verification_reports(cfg)?;
    print_table(&reports);
    if let Some(path) = &cfg.out {
        emit(Some(path), |w| match cfg.format {
            Format::Csv => reports_to_csv(&reports, w),
            Format::Json => write_json(&reports, w),
        })?;
    }
    Ok(summarize(
        &reports,
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    ))
}

/// Prints the pass count and the failing cases; returns the exit code.
pub fn summarize(reports: &[BoundReport], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let failing: Vec<&BoundReport> = reports.iter().filter(|r| !r.pass).collect();
    let _ = writeln!(out, "{} checks, {} failed", reports.len(), failing.len());
    for r in &failing {
        let _ = writeln!(
            err,
            "FAIL {} p={} n={} value={:e} bound={:e} ratio={:e}",
            r.quantity, r.p, r.n, r.value, r.bound, r.ratio
        );
    }
    if failing.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
