//! The uniform spline spaces of maximum smoothness on `(a, b)`: the full
//! space, its periodic subspace, the reduced subspace with vanishing odd
//! boundary derivatives and the higher-order reduced variants.
//!
//! Every basis function is stored as a combination of the scaled cardinal
//! B-splines `phi^(m)(x) = psi_p^(m)((x - a) / h)`, `m = -p, ..., n-1`.
//! Public indices follow the B-spline numbering (full indices start at `-p`);
//! [`SpaceSpec::position`] maps them to zero-based coefficient positions.

use crate::bspline_core::{cardinal::derivative_sided, Side, DEFAULT_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::linalg::{null_space, DenseMatrix};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::Arc;

/// Which of the spline spaces a [`SpaceSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceKind {
    /// All `C^{p-1}` splines, dimension `n + p`.
    Full,
    /// Derivatives of order `< p` agree at both endpoints, dimension `n`.
    Periodic,
    /// Odd derivatives of order `< p` vanish at both endpoints.
    Reduced,
    /// Derivatives of order `2l + q < p` vanish at both endpoints.
    ReducedQ(usize),
}

/// Which endpoint of the interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Left,
    Right,
}

/// Combination of full-space B-splines: `(full index, weight)` pairs.
pub type Combination = Vec<(i64, f64)>;

/// One spline space: degree, uniform grid and kind. Immutable once built.
#[derive(Debug, Clone)]
pub struct SpaceSpec {
    p: usize,
    n: usize,
    a: f64,
    b: f64,
    kind: SpaceKind,
    first_index: i64,
    basis: Arc<Vec<Combination>>,
}

impl PartialEq for SpaceSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.a == other.a
            && self.b == other.b
            && self.kind == other.kind
    }
}

impl SpaceSpec {
    pub fn new(p: usize, n: usize, a: f64, b: f64, kind: SpaceKind) -> Result<Self> {
        Self::with_degree_cap(p, n, a, b, kind, DEFAULT_DEGREE_CAP)
    }

    pub fn with_degree_cap(
        p: usize,
        n: usize,
        a: f64,
        b: f64,
        kind: SpaceKind,
        cap: usize,
    ) -> Result<Self> {
        if p > cap {
            return Err(Error::DegreeTooLarge { p, cap });
        }
        if n == 0 {
            return Err(Error::InvalidSpace("need at least one element".into()));
        }
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidSpace(format!("interval ({a}, {b}) is empty")));
        }
        if kind == SpaceKind::ReducedQ(0) {
            return Err(Error::InvalidSpace("ReducedQ needs q >= 1".into()));
        }
        // h p < b - a  <=>  p < n
        if kind != SpaceKind::Full && p >= n {
            return Err(Error::InvalidSpace(format!(
                "{kind:?} space needs h*p < b-a, got p={p} with n={n} elements"
            )));
        }
        let mut spec = SpaceSpec {
            p,
            n,
            a,
            b,
            kind,
            first_index: 0,
            basis: Arc::new(Vec::new()),
        };
        let (first, basis) = spec.build_basis();
        spec.first_index = first;
        spec.basis = Arc::new(basis);
        Ok(spec)
    }

    /// Space on the unit interval `(0, 1)`.
    pub fn unit(p: usize, n: usize, kind: SpaceKind) -> Result<Self> {
        Self::new(p, n, 0.0, 1.0, kind)
    }

    pub fn p(&self) -> usize {
        self.p
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn kind(&self) -> SpaceKind {
        self.kind
    }
    pub fn h(&self) -> f64 {
        (self.b - self.a) / self.n as f64
    }

    /// The same grid and kind with another degree.
    pub fn with_degree(&self, p: usize) -> Result<Self> {
        Self::new(p, self.n, self.a, self.b, self.kind)
    }

    /// The same degree and kind on another element count.
    pub fn with_elements(&self, n: usize) -> Result<Self> {
        Self::new(self.p, n, self.a, self.b, self.kind)
    }

    /// The same grid and degree with another kind.
    pub fn with_kind(&self, kind: SpaceKind) -> Result<Self> {
        Self::new(self.p, self.n, self.a, self.b, kind)
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Number of full-space B-splines, `n + p`.
    pub fn full_dimension(&self) -> usize {
        self.n + self.p
    }

    /// Admissible basis indices (first, last).
    pub fn index_range(&self) -> (i64, i64) {
        (
            self.first_index,
            self.first_index + self.dimension() as i64 - 1,
        )
    }

    /// Zero-based coefficient position of a basis index. Periodic indices wrap.
    pub fn position(&self, index: i64) -> Result<usize> {
        if self.kind == SpaceKind::Periodic {
            return Ok(index.rem_euclid(self.n as i64) as usize);
        }
        let (lo, hi) = self.index_range();
        if index < lo || index > hi {
            return Err(Error::IndexOutOfRange {
                index,
                min: lo,
                max: hi,
            });
        }
        Ok((index - lo) as usize)
    }

    /// Basis index at a zero-based position.
    pub fn index_at(&self, position: usize) -> i64 {
        self.first_index + position as i64
    }

    /// The full-space combination making up the basis function at `position`.
    pub fn combination(&self, position: usize) -> &Combination {
        &self.basis[position]
    }

    /// Dense `dimension x (n + p)` matrix mapping space coefficients to
    /// full-space coefficients (row `k` holds basis function `k`).
    pub fn extraction(&self) -> DenseMatrix {
        let mut e = DenseMatrix::zeros(self.dimension(), self.full_dimension());
        for (k, combo) in self.basis.iter().enumerate() {
            for &(m, w) in combo {
                e[(k, (m + self.p as i64) as usize)] += w;
            }
        }
        e
    }

    /// Full-space coefficients of the spline with the given coefficients.
    pub fn to_full(&self, coefs: &[f64]) -> Result<Vec<f64>> {
        if coefs.len() != self.dimension() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                self.dimension(),
                coefs.len()
            )));
        }
        let mut full = vec![0.0; self.full_dimension()];
        for (c, combo) in coefs.iter().zip(self.basis.iter()) {
            for &(m, w) in combo {
                full[(m + self.p as i64) as usize] += c * w;
            }
        }
        Ok(full)
    }

    fn build_basis(&self) -> (i64, Vec<Combination>) {
        let p = self.p as i64;
        let n = self.n as i64;
        let in_full = |m: i64| (-p..n).contains(&m);
        match self.kind {
            SpaceKind::Full => (-p, (-p..n).map(|m| vec![(m, 1.0)]).collect()),
            SpaceKind::Periodic => {
                let basis = (0..n)
                    .map(|i| {
                        (-1..=1)
                            .map(|j| i + j * n)
                            .filter(|m| in_full(*m))
                            .map(|m| (m, 1.0))
                            .collect()
                    })
                    .collect();
                (0, basis)
            }
            SpaceKind::Reduced | SpaceKind::ReducedQ(1) => {
                let first = -((p + 1) / 2);
                let last = n - p / 2 - 1;
                let basis = (first..=last)
                    .map(|i| {
                        let set: BTreeSet<i64> = [-i - p - 1, i, 2 * n - i - p - 1]
                            .into_iter()
                            .filter(|m| in_full(*m))
                            .collect();
                        set.into_iter().map(|m| (m, 1.0)).collect()
                    })
                    .collect();
                (first, basis)
            }
            SpaceKind::ReducedQ(q) => {
                let constraints = self.reduced_q_constraints(q);
                if constraints.nrows() == 0 {
                    return (0, (-p..n).map(|m| vec![(m, 1.0)]).collect());
                }
                let (nullsp, _) = null_space(&constraints, 1e-9);
                let basis = (0..nullsp.ncols())
                    .map(|c| {
                        (0..nullsp.nrows())
                            .filter(|&r| nullsp[(r, c)] != 0.0)
                            .map(|r| (r as i64 - p, nullsp[(r, c)]))
                            .collect()
                    })
                    .collect();
                (0, basis)
            }
        }
    }

    /// Rows: derivative of order `2l + q < p` of every full B-spline at the
    /// left, then at the right endpoint (cardinal scale).
    fn reduced_q_constraints(&self, q: usize) -> DenseMatrix {
        let orders: Vec<usize> = (0..)
            .map(|l| 2 * l + q)
            .take_while(|&o| o < self.p)
            .collect();
        boundary_constraint_rows(self.p, self.n, &orders, &orders)
    }
}

/// Rows of one-sided cardinal-scale derivatives of the full B-splines:
/// `left_orders` at `t = 0` followed by `right_orders` at `t = n`.
pub fn boundary_constraint_rows(
    p: usize,
    n: usize,
    left_orders: &[usize],
    right_orders: &[usize],
) -> DenseMatrix {
    let cols = n + p;
    let mut m = DenseMatrix::zeros(left_orders.len() + right_orders.len(), cols);
    for (r, &o) in left_orders.iter().enumerate() {
        for c in 0..cols {
            m[(r, c)] = derivative_sided(p, c as i64 - p as i64, 0.0, o, Side::Right);
        }
    }
    for (r, &o) in right_orders.iter().enumerate() {
        for c in 0..cols {
            m[(left_orders.len() + r, c)] =
                derivative_sided(p, c as i64 - p as i64, n as f64, o, Side::Left);
        }
    }
    m
}

/// Full-space coefficients (one column per basis vector) of the splines on
/// `n` elements whose derivatives of order `2l + q < p` vanish at both ends,
/// for any `p` and `n`. Unlike [`SpaceSpec`] this does not require `p < n`.
pub fn constrained_reduced_basis(p: usize, n: usize, q: usize) -> DenseMatrix {
    let orders: Vec<usize> = (0..).map(|l| 2 * l + q).take_while(|&o| o < p).collect();
    if orders.is_empty() {
        return DenseMatrix::identity(n + p, n + p);
    }
    null_space(&boundary_constraint_rows(p, n, &orders, &orders), 1e-9).0
}

/// Dimension of the space described by `spec`.
pub fn dimension(spec: &SpaceSpec) -> usize {
    spec.dimension()
}

/// Degrees of freedom from the closed-form count, independent of whether a
/// space with these parameters can be constructed.
pub fn table_dimension(kind: SpaceKind, p: usize, n: usize) -> usize {
    match kind {
        SpaceKind::Full => n + p,
        SpaceKind::Periodic => n,
        SpaceKind::Reduced => n + p % 2,
        SpaceKind::ReducedQ(q) => {
            let per_end = (0..).map(|l| 2 * l + q).take_while(|&o| o < p).count();
            n + p - 2 * per_end
        }
    }
}

/// Value of the `r`-th derivative of full B-spline `m` at `x`.
fn full_bspline(spec: &SpaceSpec, m: i64, x: f64, r: usize, side: Side) -> f64 {
    let h = spec.h();
    let t = (x - spec.a) / h;
    derivative_sided(spec.p, m, t, r, side) / h.powi(r as i32)
}

fn side_for(spec: &SpaceSpec, x: f64) -> Side {
    if x <= spec.a {
        Side::Right
    } else {
        Side::Left
    }
}

/// Value (`r = 0`) or `r`-th derivative of the basis function with index `i`
/// at `x`. Zero outside `[a, b]`.
pub fn basis_eval(spec: &SpaceSpec, i: i64, x: f64, r: usize) -> Result<f64> {
    let pos = spec.position(i)?;
    if x < spec.a || x > spec.b {
        return Ok(0.0);
    }
    let side = side_for(spec, x);
    Ok(spec.basis[pos]
        .iter()
        .map(|&(m, w)| w * full_bspline(spec, m, x, r, side))
        .sum())
}

/// Evaluates the spline with the given coefficients (or its `r`-th derivative).
pub fn spline_eval(spec: &SpaceSpec, coefs: &[f64], x: f64, r: usize) -> Result<f64> {
    let full = spec.to_full(coefs)?;
    Ok(full_spline_eval(spec, &full, x, r))
}

pub(crate) fn full_spline_eval(spec: &SpaceSpec, full: &[f64], x: f64, r: usize) -> f64 {
    if x < spec.a || x > spec.b {
        return 0.0;
    }
    let side = side_for(spec, x);
    let h = spec.h();
    let t = (x - spec.a) / h;
    // only p+1 B-splines are active around t
    let e = (t.ceil() as i64 - 1).clamp(0, spec.n as i64 - 1);
    let p = spec.p as i64;
    ((e - p - 1).max(-p)..=(e + 1).min(spec.n as i64 - 1))
        .map(|m| full[(m + p) as usize] * full_bspline(spec, m, x, r, side))
        .sum()
}

/// One-sided `l`-th derivative of the spline at an endpoint.
pub fn boundary_derivative(spec: &SpaceSpec, coefs: &[f64], l: usize, end: End) -> Result<f64> {
    if l > spec.p {
        return Err(Error::InvalidDerivativeOrder {
            order: l,
            reason: "boundary derivative order exceeds degree",
        });
    }
    let full = spec.to_full(coefs)?;
    let (t, side) = match end {
        End::Left => (0.0, Side::Right),
        End::Right => (spec.n as f64, Side::Left),
    };
    let h = spec.h();
    let p = spec.p as i64;
    Ok(full
        .iter()
        .enumerate()
        .map(|(c, v)| v * derivative_sided(spec.p, c as i64 - p, t, l, side))
        .sum::<f64>()
        / h.powi(l as i32))
}

/// Mirror extension `w(x) = u(|x|)` of a function given on `(0, 1)` to `(-1, 1)`.
pub fn mirror_extend<F: Fn(f64) -> f64>(u: F) -> impl Fn(f64) -> f64 {
    move |x: f64| u(x.abs())
}

/// One row of a basis tabulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TabulationRow {
    pub index: i64,
    pub x: f64,
    pub value: f64,
}

/// Samples every basis function at `samples` equispaced points of `[a, b]`.
pub fn tabulate_basis(spec: &SpaceSpec, samples: usize) -> Vec<TabulationRow> {
    let samples = samples.max(2);
    let mut rows = Vec::with_capacity(samples * spec.dimension());
    for pos in 0..spec.dimension() {
        let index = spec.index_at(pos);
        for s in 0..samples {
            let x = spec.a + (spec.b - spec.a) * s as f64 / (samples - 1) as f64;
            let value = basis_eval(spec, index, x, 0).expect("index from the space's own range");
            rows.push(TabulationRow { index, x, value });
        }
    }
    rows
}

/// Values of the `n + p` B-splines of the clamped (open) knot vector on
/// `(0, 1)` at `x`, by the Cox-de Boor recurrence. Comparison tabulator for
/// the classical basis with `p + 1`-fold boundary knots.
pub fn clamped_basis_values(p: usize, n: usize, x: f64) -> Vec<f64> {
    let mut knots: Vec<f64> = vec![0.0; p];
    knots.extend((0..=n).map(|k| k as f64 / n as f64));
    knots.extend(std::iter::repeat_n(1.0, p));
    let count = n + p;
    // degree 0, half-open [t_k, t_{k+1}) with the last span closed
    let mut vals: Vec<f64> = (0..knots.len() - 1)
        .map(|k| {
            let (lo, hi) = (knots[k], knots[k + 1]);
            let last = hi == 1.0 && lo < hi && x == 1.0;
            if (lo <= x && x < hi) || last {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    for d in 1..=p {
        let mut next = vec![0.0; knots.len() - 1 - d];
        for (k, slot) in next.iter_mut().enumerate() {
            let mut v = 0.0;
            let den1 = knots[k + d] - knots[k];
            if den1 > 0.0 {
                v += (x - knots[k]) / den1 * vals[k];
            }
            let den2 = knots[k + d + 1] - knots[k + 1];
            if den2 > 0.0 {
                v += (knots[k + d + 1] - x) / den2 * vals[k + 1];
            }
            *slot = v;
        }
        vals = next;
    }
    vals.truncate(count);
    vals
}
