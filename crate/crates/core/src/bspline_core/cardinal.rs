use super::eulerian::binomial;
use crate::error::{Error, Result};

/// Which one-sided limit to take at a knot.
///
/// `Left` is the half-open `(i, i+1]` convention of the degree-zero splines;
/// `Right` uses `[i, i+1)` and is what a left domain endpoint needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn box_value(i: i64, x: f64, side: Side) -> f64 {
    let lo = i as f64;
    let hi = lo + 1.0;
    let inside = match side {
        Side::Left => x > lo && x <= hi,
        Side::Right => x >= lo && x < hi,
    };
    if inside {
        1.0
    } else {
        0.0
    }
}

/// Cardinal B-spline `psi_p^(i)(x)` with integer knots `i, ..., i+p+1`.
pub fn cardinal_eval(p: usize, i: i64, x: f64) -> f64 {
    cardinal_eval_sided(p, i, x, Side::Left)
}

/// [`cardinal_eval`] with an explicit one-sided convention at knots.
pub fn cardinal_eval_sided(p: usize, i: i64, x: f64, side: Side) -> f64 {
    let lo = i as f64;
    if x < lo || x > lo + (p + 1) as f64 {
        return 0.0;
    }
    // vals[k] holds psi_d^(i+k) for the current degree d
    let mut vals: Vec<f64> = (0..=p as i64).map(|k| box_value(i + k, x, side)).collect();
    for d in 1..=p {
        let df = d as f64;
        for k in 0..=(p - d) {
            let j = (i + k as i64) as f64;
            vals[k] = (x - j) / df * vals[k] + (j + df + 1.0 - x) / df * vals[k + 1];
        }
    }
    vals[0]
}

/// `r`-th derivative of `psi_p^(i)` at `x`.
///
/// Uses the difference relation `d/dx psi_p^(i) = psi_{p-1}^(i) - psi_{p-1}^(i+1)`
/// iterated `r` times. Orders above `p` are zero away from knots and are
/// returned as zero.
pub fn cardinal_derivative(p: usize, i: i64, x: f64, r: usize) -> Result<f64> {
    if r == 0 {
        return Err(Error::InvalidDerivativeOrder {
            order: 0,
            reason: "order must be at least 1",
        });
    }
    Ok(derivative_sided(p, i, x, r, Side::Left))
}

pub(crate) fn derivative_sided(p: usize, i: i64, x: f64, r: usize, side: Side) -> f64 {
    if r == 0 {
        return cardinal_eval_sided(p, i, x, side);
    }
    if r > p {
        return 0.0;
    }
    let q = p - r;
    (0..=r)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(r, k as i64) * cardinal_eval_sided(q, i + k as i64, x, side)
        })
        .sum()
}
