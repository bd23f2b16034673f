//! Circulant mass, gradient and stiffness operators of the periodic space,
//! the two-scale prolongation, and quadrature Gram matrices for any space.

use crate::bspline_core::{
    binomial, cardinal::derivative_sided, default_quad_order, eulerian_row_normalized, gauss_rule,
    Side,
};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::spaces::SpaceSpec;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// Circulant matrix given by its first column: entry `(i, j)` is
/// `col[(i - j) mod n]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circulant {
    pub n: usize,
    pub col: Vec<f64>,
}

impl Circulant {
    pub fn new(col: Vec<f64>) -> Result<Self> {
        if col.is_empty() {
            return Err(Error::InvalidArgument("circulant needs n >= 1".into()));
        }
        if col.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "circulant entries must be finite".into(),
            ));
        }
        Ok(Circulant { n: col.len(), col })
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.col[(i + self.n - j % self.n) % self.n]
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j) * x[j]).sum())
            .collect()
    }

    /// Product of two circulants (cyclic convolution of the columns).
    pub fn mul(&self, other: &Circulant) -> Circulant {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut col = vec![0.0; n];
        for (a, ca) in self.col.iter().enumerate() {
            for (b, cb) in other.col.iter().enumerate() {
                col[(a + b) % n] += ca * cb;
            }
        }
        Circulant { n, col }
    }

    pub fn transpose(&self) -> Circulant {
        let col = (0..self.n)
            .map(|j| self.col[(self.n - j) % self.n])
            .collect();
        Circulant { n: self.n, col }
    }

    pub fn add_scalar(&self, s: f64) -> Circulant {
        Circulant {
            n: self.n,
            col: self.col.iter().map(|c| c + s).collect(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.n, |i, j| self.entry(i, j))
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, self).map_err(|e| Error::InvalidArgument(e.to_string()))
    }
}

/// The rank-one operator `scale * 1 1^T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankOne {
    pub n: usize,
    pub scale: f64,
}

impl RankOne {
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let s = self.scale * x.iter().sum::<f64>();
        vec![s; self.n]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_element(self.n, self.n, self.scale)
    }
}

fn check_band(p: usize, n: usize) -> Result<()> {
    if n <= 2 * p + 1 {
        return Err(Error::InvalidArgument(format!(
            "circulant of size {n} is too small for bandwidth {} (degree {p})",
            2 * p + 1
        )));
    }
    Ok(())
}

/// Periodic mass matrix `M_{p,h}` of size `n`; requires `n > 2p + 1`.
pub fn mass_circulant(p: usize, h: f64, n: usize) -> Result<Circulant> {
    check_band(p, n)?;
    mass_circulant_folded(p, h, n)
}

/// Periodic mass matrix for any `n >= 1`: band entries that overlap on a
/// short period are added, which is exactly the Gram matrix of the periodic
/// basis whenever that basis exists.
pub fn mass_circulant_folded(p: usize, h: f64, n: usize) -> Result<Circulant> {
    if n == 0 {
        return Err(Error::InvalidArgument("circulant needs n >= 1".into()));
    }
    let row = eulerian_row_normalized(2 * p + 1);
    let mut col = vec![0.0; n];
    for j in -(p as i64)..=(p as i64) {
        col[j.rem_euclid(n as i64) as usize] += h * row[(p as i64 + j) as usize];
    }
    Ok(Circulant { n, col })
}

/// Gradient matrix `D_h`: maps coefficients to those of the derivative in
/// the degree-lowered space via `D^T`.
pub fn gradient_circulant(h: f64, n: usize) -> Result<Circulant> {
    if n < 2 {
        return Err(Error::InvalidArgument("gradient needs n >= 2".into()));
    }
    let mut col = vec![0.0; n];
    col[0] = 1.0 / h;
    col[n - 1] = -1.0 / h;
    Ok(Circulant { n, col })
}

/// `E_h = h^2 1 1^T`.
pub fn rank_one(h: f64, n: usize) -> RankOne {
    RankOne { n, scale: h * h }
}

/// Parts of the stiffness decomposition `K = D M_{p-1} D^T + E`.
#[derive(Debug, Clone, PartialEq)]
pub struct StiffnessParts {
    pub dmd: Circulant,
    pub e: RankOne,
}

impl StiffnessParts {
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let a = self.dmd.matvec(x);
        let b = self.e.matvec(x);
        a.iter().zip(b).map(|(u, v)| u + v).collect()
    }

    pub fn to_circulant(&self) -> Circulant {
        self.dmd.add_scalar(self.e.scale)
    }
}

/// Stiffness decomposition for any `n >= 2` (folded band).
pub fn stiffness_parts(p: usize, h: f64, n: usize) -> Result<StiffnessParts> {
    if p == 0 {
        return Err(Error::InvalidArgument("stiffness needs degree >= 1".into()));
    }
    let d = gradient_circulant(h, n)?;
    let m = mass_circulant_folded(p - 1, h, n)?;
    Ok(StiffnessParts {
        dmd: d.mul(&m).mul(&d.transpose()),
        e: rank_one(h, n),
    })
}

/// Periodic `H^1∘` stiffness matrix `K_{p,h}`; requires `n > 2p + 1`.
pub fn stiffness_circulant(p: usize, h: f64, n: usize) -> Result<Circulant> {
    if p == 0 {
        return Err(Error::InvalidArgument("stiffness needs degree >= 1".into()));
    }
    check_band(p, n)?;
    Ok(stiffness_parts(p, h, n)?.to_circulant())
}

/// Stiffness matrix for any `n >= 2` (folded band).
pub fn stiffness_circulant_folded(p: usize, h: f64, n: usize) -> Result<Circulant> {
    Ok(stiffness_parts(p, h, n)?.to_circulant())
}

/// Prolongation `P` (`2n x n`) from the periodic space on `n` elements to the
/// one on `2n` elements: column `j` holds `2^-p C(p+1, l)` at row `2j + l`.
pub fn prolongation(p: usize, n_coarse: usize) -> Result<DenseMatrix> {
    if n_coarse == 0 {
        return Err(Error::InvalidArgument("prolongation needs n >= 1".into()));
    }
    let nf = 2 * n_coarse;
    let scale = 0.5f64.powi(p as i32);
    let mut m = DenseMatrix::zeros(nf, n_coarse);
    for j in 0..n_coarse {
        for l in 0..=p + 1 {
            m[((2 * j + l) % nf, j)] += scale * binomial(p + 1, l as i64);
        }
    }
    Ok(m)
}

/// Gram matrix of `r`-th derivatives, `(d^r b_i, d^r b_j)` on `(a, b)`, by
/// piecewise Gauss quadrature with `p + 2` nodes per element. With `h1circ`
/// the mean-value term `(∫b_i)(∫b_j)` is added (requires `r = 1`).
pub fn gram_matrix(spec: &SpaceSpec, r: usize, h1circ: bool) -> Result<DenseMatrix> {
    gram_matrix_with_order(spec, r, h1circ, default_quad_order(spec.p()))
}

pub fn gram_matrix_with_order(
    spec: &SpaceSpec,
    r: usize,
    h1circ: bool,
    order: usize,
) -> Result<DenseMatrix> {
    let p = spec.p();
    if r > p {
        return Err(Error::InvalidDerivativeOrder {
            order: r,
            reason: "derivative order exceeds degree",
        });
    }
    if h1circ && r != 1 {
        return Err(Error::InvalidArgument(
            "the H1∘ Gram uses first derivatives".into(),
        ));
    }
    if order < p + 1 {
        return Err(Error::InvalidQuadratureOrder(order));
    }
    let full = full_gram(spec, r, order)?;
    let e = spec.extraction();
    let mut g = &e * full * e.transpose();
    if h1circ {
        let means = &e * full_integrals(spec);
        g += &means * means.transpose();
    }
    Ok(g.symmetrize())
}

trait Symmetrize {
    fn symmetrize(self) -> Self;
}

impl Symmetrize for DenseMatrix {
    fn symmetrize(self) -> Self {
        let t = self.transpose();
        (self + t) * 0.5
    }
}

/// Local values `d^r psi_p^{(k-p)}(s)` for `k = 0..=p` at each node `s`.
fn local_table(p: usize, r: usize, nodes: &[f64]) -> Vec<Vec<f64>> {
    nodes
        .iter()
        .map(|&s| {
            (0..=p)
                .map(|k| derivative_sided(p, k as i64 - p as i64, s, r, Side::Left))
                .collect()
        })
        .collect()
}

fn full_gram(spec: &SpaceSpec, r: usize, order: usize) -> Result<DenseMatrix> {
    let p = spec.p();
    let n = spec.n();
    let rule = gauss_rule(order)?;
    let table = local_table(p, r, &rule.nodes);
    let mut local = DenseMatrix::zeros(p + 1, p + 1);
    for (vals, w) in table.iter().zip(&rule.weights) {
        for a in 0..=p {
            for b in 0..=p {
                local[(a, b)] += w * vals[a] * vals[b];
            }
        }
    }
    let h = spec.h();
    local *= h.powi(1 - 2 * r as i32);
    // on element e the active full positions are e..=e+p
    let mut g = DenseMatrix::zeros(n + p, n + p);
    for e in 0..n {
        for a in 0..=p {
            for b in 0..=p {
                g[(e + a, e + b)] += local[(a, b)];
            }
        }
    }
    Ok(g)
}

/// Integrals over `(a, b)` of the full B-splines.
fn full_integrals(spec: &SpaceSpec) -> nalgebra::DVector<f64> {
    let p = spec.p();
    let rule = gauss_rule(p + 1).expect("valid order");
    let table = local_table(p, 0, &rule.nodes);
    let mut local = vec![0.0; p + 1];
    for (vals, w) in table.iter().zip(&rule.weights) {
        for a in 0..=p {
            local[a] += w * vals[a];
        }
    }
    let mut v = nalgebra::DVector::zeros(spec.n() + p);
    for e in 0..spec.n() {
        for a in 0..=p {
            v[e + a] += spec.h() * local[a];
        }
    }
    v
}

/// Writes a dense matrix as CSV, one row per line, with a `c0,c1,...` header.
pub fn write_dense_csv<W: Write>(m: &DenseMatrix, w: W) -> Result<()> {
    let io = |e: csv::Error| Error::InvalidArgument(e.to_string());
    let mut out = csv::Writer::from_writer(w);
    out.write_record((0..m.ncols()).map(|j| format!("c{j}")))
        .map_err(io)?;
    for i in 0..m.nrows() {
        out.write_record((0..m.ncols()).map(|j| format_float(m[(i, j)])))
            .map_err(io)?;
    }
    out.flush()
        .map_err(|e| Error::InvalidArgument(e.to_string()))
}

/// Shortest decimal representation that parses back to the same `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:?}")
}
