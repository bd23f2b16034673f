use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Gauss-Legendre rule on the unit interval `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub m: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    /// Applies the rule on `(lo, hi)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, lo: f64, hi: f64, f: F) -> f64 {
        let len = hi - lo;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(t, w)| w * f(lo + len * t))
            .sum::<f64>()
            * len
    }
}

/// `m`-point Gauss-Legendre rule mapped to `(0, 1)`; exact up to degree `2m-1`.
///
/// Nodes are found by Newton iteration on the three-term Legendre recurrence.
pub fn gauss_rule(m: usize) -> Result<QuadRule> {
    if !(1..=64).contains(&m) {
        return Err(Error::InvalidQuadratureOrder(m));
    }
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for k in 0..m.div_ceil(2) {
        let mut x = (PI * (k as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the k-th largest root on (-1, 1)
        nodes[m - 1 - k] = 0.5 * (1.0 + x);
        nodes[k] = 0.5 * (1.0 - x);
        weights[m - 1 - k] = 0.5 * w;
        weights[k] = 0.5 * w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.5;
    }
    Ok(QuadRule { m, nodes, weights })
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Sum of the rule applied on each of the `n` uniform elements of `(a, b)`.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    n: usize,
    rule: &QuadRule,
) -> f64 {
    let h = (b - a) / n as f64;
    (0..n)
        .map(|e| {
            let lo = a + e as f64 * h;
            rule.integrate(lo, lo + h, &f)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bspline_core::cardinal_eval;

    #[test]
    fn midpoint_and_two_point() {
        let r = gauss_rule(1).unwrap();
        assert_eq!(r.nodes, vec![0.5]);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
        let r = gauss_rule(2).unwrap();
        let off = 1.0 / (2.0 * 3f64.sqrt());
        assert!((r.nodes[0] - (0.5 - off)).abs() < 1e-15);
        assert!((r.nodes[1] - (0.5 + off)).abs() < 1e-15);
        assert!((r.weights[0] - 0.5).abs() < 1e-15 && (r.weights[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(gauss_rule(0).is_err());
        assert!(gauss_rule(65).is_err());
    }

    #[test]
    fn exactness_for_all_orders() {
        for m in 1..=64 {
            let r = gauss_rule(m).unwrap();
            let ws: f64 = r.weights.iter().sum();
            assert!((ws - 1.0).abs() < 1e-13, "m={m}");
            assert!(r.nodes.iter().all(|x| *x > 0.0 && *x < 1.0));
            assert!(r.weights.iter().all(|w| *w > 0.0));
            for k in 0..(2 * m) {
                let got = r.integrate(0.0, 1.0, |x| x.powi(k as i32));
                let want = 1.0 / (k as f64 + 1.0);
                assert!(((got - want) / want).abs() < 1e-13, "m={m} k={k}");
            }
        }
        let r = gauss_rule(4).unwrap();
        assert!((r.integrate(0.0, 1.0, |x| x.powi(7)) - 0.125).abs() < 1e-14);
    }

    #[test]
    fn piecewise_examples() {
        let r = gauss_rule(3).unwrap();
        for n in [1, 3, 10] {
            assert!((integrate_piecewise(|_| 1.0, 0.0, 1.0, n, &r) - 1.0).abs() < 1e-14);
        }
        let r2 = gauss_rule(2).unwrap();
        assert!((integrate_piecewise(|x| x.powi(3), 0.0, 1.0, 4, &r2) - 0.25).abs() < 1e-14);
        // a scaled interior B-spline integrates to h
        let (a, b, n, p) = (0.0, 1.0, 16usize, 3usize);
        let h = (b - a) / n as f64;
        let r = gauss_rule(p + 1).unwrap();
        let val = integrate_piecewise(|x| cardinal_eval(p, 5, (x - a) / h), a, b, n, &r);
        assert!((val - h).abs() < 1e-13);
    }
}
