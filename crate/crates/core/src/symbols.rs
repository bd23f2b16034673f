//! Fourier symbols of the periodic operators and the two-grid constant.
//!
//! Fourier vectors on `n` points are `f_j = (e^{i k theta_j})_k` with
//! `theta_j = 2 pi j / n`; a circulant `C` satisfies `C f_j = c_hat_j f_j`
//! with `c_hat_j = sum_l col[l] e^{-i l theta_j}`. The inverse transform is
//! `(1/n) F^*`.

use crate::bspline_core::eulerian_row_normalized;
use crate::error::{Error, Result};
use crate::operators::Circulant;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Value of the rank-one block `E` at frequency zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EConvention {
    /// `e_hat(0) = h`.
    Paper,
    /// `e_hat(0) = h^2 n`, the eigenvalue of `h^2 1 1^T`.
    Matrix,
}

impl EConvention {
    pub fn name(self) -> &'static str {
        match self {
            EConvention::Paper => "paper",
            EConvention::Matrix => "matrix",
        }
    }
}

impl std::str::FromStr for EConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(EConvention::Paper),
            "matrix" => Ok(EConvention::Matrix),
            _ => Err(Error::InvalidArgument(format!(
                "unknown e-convention '{s}' (paper|matrix)"
            ))),
        }
    }
}

/// Which mass matrix weighs the two-grid error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MassDegree {
    /// `M_{p-1}`: the mass of the derivative space, for which the block
    /// spectral radius reduces to `Psi_p`.
    Lower,
    /// `M_p`: the mass of the space itself.
    Same,
}

/// Eigenvalue sequence of a circulant, indexed by frequency `j = 0..n-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolSeq {
    pub n: usize,
    pub values: Vec<Complex64>,
}

impl SymbolSeq {
    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }
}

pub fn theta(j: usize, n: usize) -> f64 {
    2.0 * PI * j as f64 / n as f64
}

/// Symbol of an arbitrary circulant.
pub fn circulant_symbol(c: &Circulant) -> SymbolSeq {
    let n = c.n;
    let values = (0..n)
        .map(|j| {
            c.col
                .iter()
                .enumerate()
                .map(|(l, v)| {
                    Complex64::from_polar(*v, -(((l * j) % n) as f64) * 2.0 * PI / n as f64)
                })
                .sum()
        })
        .collect();
    SymbolSeq { n, values }
}

fn mass_value(p: usize, h: f64, th: f64) -> f64 {
    let row = eulerian_row_normalized(2 * p + 1);
    let mut v = h * row[p];
    for l in 1..=p {
        v += 2.0 * h * row[p + l] * (l as f64 * th).cos();
    }
    v
}

/// `m_hat_j = h sum_l b(2p+1, p+l) cos(l theta_j)`.
pub fn mass_symbol(p: usize, h: f64, n: usize) -> SymbolSeq {
    let values = (0..n)
        .map(|j| Complex64::new(mass_value(p, h, theta(j, n)), 0.0))
        .collect();
    SymbolSeq { n, values }
}

/// `d_hat_j = (1 - e^{i theta_j}) / h`.
pub fn gradient_symbol(h: f64, n: usize) -> SymbolSeq {
    let values = (0..n)
        .map(|j| (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, theta(j, n))) / h)
        .collect();
    SymbolSeq { n, values }
}

/// `e_hat`: nonzero only at `j = 0`.
pub fn rank_one_symbol(h: f64, n: usize, conv: EConvention) -> SymbolSeq {
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    values[0] = Complex64::new(
        match conv {
            EConvention::Paper => h,
            EConvention::Matrix => h * h * n as f64,
        },
        0.0,
    );
    SymbolSeq { n, values }
}

fn stiffness_value(p: usize, h: f64, th: f64) -> f64 {
    // |d_hat|^2 = 4 sin^2(theta/2) / h^2
    let s = (th / 2.0).sin();
    4.0 * s * s / (h * h) * mass_value(p - 1, h, th)
}

/// `k_hat = d_hat m_hat_{p-1} conj(d_hat) + e_hat`.
pub fn stiffness_symbol(p: usize, h: f64, n: usize, conv: EConvention) -> Result<SymbolSeq> {
    if p == 0 {
        return Err(Error::InvalidArgument("stiffness needs degree >= 1".into()));
    }
    let e = rank_one_symbol(h, n, conv);
    let values = (0..n)
        .map(|j| Complex64::new(stiffness_value(p, h, theta(j, n)), 0.0) + e.values[j])
        .collect();
    Ok(SymbolSeq { n, values })
}

/// Symbol of the prolongation: column `j` of the `2n x n` matrix
/// `F_fine^{-1} P F_coarse` has nonzeros only at rows `j` and `j + n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProlongationSymbol {
    pub n_coarse: usize,
    /// `(row j, row j + n)` per coarse frequency `j`.
    pub pairs: Vec<(Complex64, Complex64)>,
}

impl ProlongationSymbol {
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.n_coarse;
        let mut m = DMatrix::zeros(2 * n, n);
        for (j, (a, b)) in self.pairs.iter().enumerate() {
            m[(j, j)] = *a;
            m[(j + n, j)] = *b;
        }
        m
    }
}

fn prolongation_value(p: usize, th_fine: f64) -> Complex64 {
    (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, -th_fine)).powu(p as u32 + 1)
        * 0.5f64.powi(p as i32 + 1)
}

/// `p_hat = 2^{-p-1} (1 + e^{-i theta})^{p+1}` at fine frequencies `j`, `j+n`.
pub fn prolongation_symbol(p: usize, n_coarse: usize) -> ProlongationSymbol {
    let nf = 2 * n_coarse;
    let pairs = (0..n_coarse)
        .map(|j| {
            (
                prolongation_value(p, theta(j, nf)),
                prolongation_value(p, theta(j + n_coarse, nf)),
            )
        })
        .collect();
    ProlongationSymbol { n_coarse, pairs }
}

/// Matrix whose columns are the Fourier vectors on `n` points.
pub fn fourier_matrix(n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |k, j| {
        Complex64::from_polar(1.0, theta((k * j) % n, n))
    })
}

/// `F^{-1} = (1/n) F^*`.
pub fn inverse_fourier_matrix(n: usize) -> DMatrix<Complex64> {
    fourier_matrix(n).adjoint() / Complex64::new(n as f64, 0.0)
}

/// Coefficients `a_{p,0..p}` of `g_p(c) = sum_j a_{p,j} c^j`, where
/// `h g_p(1 + cos theta) = m_hat(theta)`.
pub fn g_poly_coeffs(p: usize) -> Vec<f64> {
    let mut a = vec![1.0];
    for q in 1..=p {
        let qf = q as f64;
        let den = qf + 2.0 * qf * qf;
        let prev = |j: i64| {
            if j >= 0 && (j as usize) < a.len() {
                a[j as usize]
            } else {
                0.0
            }
        };
        a = (0..=q as i64)
            .map(|j| {
                let jf = j as f64;
                let aa = (1.0 - jf + qf).powi(2) / den;
                let bb = (4.0 * jf * (qf - jf) + jf + qf) / den;
                let cc = (2.0 + 6.0 * jf + 4.0 * jf * jf) / den;
                aa * prev(j - 1) + bb * prev(j) + cc * prev(j + 1)
            })
            .collect();
    }
    a
}

/// Horner evaluation of `g_p`.
pub fn g_eval(coeffs: &[f64], c: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, a| acc * c + a)
}

/// `Psi_p(c, xi) = ((1+c)^{p-1} + (1-c)^{p-1} xi) / (2 ((1+c)^p + (1-c)^p xi))`
/// with `0^0 = 1`.
pub fn psi(p: usize, c: f64, xi: f64) -> Result<f64> {
    if p == 0 {
        return Err(Error::InvalidArgument("Psi needs degree >= 1".into()));
    }
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "Psi needs xi > 0, got {xi}"
        )));
    }
    if !(-1.0..=1.0).contains(&c) {
        return Err(Error::InvalidArgument(format!(
            "Psi needs c in [-1, 1], got {c}"
        )));
    }
    let (u, v) = (1.0 + c, 1.0 - c);
    let pw = |x: f64, k: usize| if k == 0 { 1.0 } else { x.powi(k as i32) };
    Ok((pw(u, p - 1) + pw(v, p - 1) * xi) / (2.0 * (pw(u, p) + pw(v, p) * xi)))
}

/// One `2 x 2` frequency block of the two-grid operator, coupling fine
/// frequencies `l` and `l + n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoGridBlock {
    pub l: usize,
    pub entries: [[Complex64; 2]; 2],
}

impl TwoGridBlock {
    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let half = self.trace() / 2.0;
        let disc = (half * half - self.det()).sqrt();
        [half + disc, half - disc]
    }

    pub fn spectral_radius(&self) -> f64 {
        let [a, b] = self.eigenvalues();
        a.norm().max(b.norm())
    }

    /// Singular values, largest first.
    pub fn singular_values(&self) -> [f64; 2] {
        let fro2: f64 = self.entries.iter().flatten().map(|z| z.norm_sqr()).sum();
        let d = self.det().norm();
        let disc = (fro2 * fro2 - 4.0 * d * d).max(0.0).sqrt();
        let s1 = ((fro2 + disc) / 2.0).sqrt();
        let s2 = if s1 > 0.0 { d / s1 } else { 0.0 };
        [s1, s2]
    }

    /// `sigma_2 / sigma_1`, zero for a rank-one block.
    pub fn rank_one_ratio(&self) -> f64 {
        let [s1, s2] = self.singular_values();
        if s1 == 0.0 {
            0.0
        } else {
            s2 / s1
        }
    }
}

/// Per-frequency record of the two-grid analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyReport {
    pub block: TwoGridBlock,
    /// Spectral radius of the block (trace for `l >= 1`).
    pub rho: f64,
    /// `Psi_p(cos(pi l / n), xi_l)` for `l >= 1` with the lower-degree mass.
    pub rho_psi: Option<f64>,
}

/// Result of the symbol computation of the two-grid constant.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoGridReport {
    pub p: usize,
    pub n_coarse: usize,
    pub h: f64,
    pub convention: EConvention,
    pub mass: MassDegree,
    pub frequencies: Vec<FrequencyReport>,
    /// `q = sqrt(max rho)`, scaled by the fine grid size.
    pub q: f64,
    /// The same quantity scaled by the coarse grid size, `q / 2`.
    pub q_coarse: f64,
}

impl TwoGridReport {
    pub fn rho_max(&self) -> f64 {
        self.frequencies.iter().map(|f| f.rho).fold(0.0, f64::max)
    }
}

/// Two-grid constant on `(-1, 1)` with `h = 2 / n_coarse`, weighted by the
/// lower-degree mass.
pub fn two_grid_constant(p: usize, n_coarse: usize, conv: EConvention) -> Result<TwoGridReport> {
    two_grid_constant_with(p, n_coarse, conv, MassDegree::Lower)
}

/// Two-grid constant with an explicit choice of weighting mass.
///
/// The block at coarse frequency `l` is
/// `t(i,j) = m_i / k_i (delta_ij - p_i conj(p_j) k_j / sum_r |p_r|^2 k_r)`
/// over fine frequencies `i, j in {l, l+n}`, divided by `h_fine^2`.
pub fn two_grid_constant_with(
    p: usize,
    n_coarse: usize,
    conv: EConvention,
    mass: MassDegree,
) -> Result<TwoGridReport> {
    if p == 0 {
        return Err(Error::InvalidArgument(
            "two-grid analysis needs degree >= 1".into(),
        ));
    }
    if n_coarse == 0 {
        return Err(Error::InvalidArgument(
            "two-grid analysis needs n >= 1".into(),
        ));
    }
    let h = 2.0 / n_coarse as f64;
    let hf = h / 2.0;
    let nf = 2 * n_coarse;
    let mdeg = match mass {
        MassDegree::Lower => p - 1,
        MassDegree::Same => p,
    };
    let m = mass_symbol(mdeg, hf, nf);
    let k = stiffness_symbol(p, hf, nf, conv)?;
    let ps = prolongation_symbol(p, n_coarse);
    let m_low = mass_symbol(p - 1, hf, nf);
    let mut frequencies = Vec::with_capacity(n_coarse);
    for (l, &(pa, pb)) in ps.pairs.iter().enumerate() {
        let idx = [l, l + n_coarse];
        let pv = [pa, pb];
        let kv = [k.values[idx[0]].re, k.values[idx[1]].re];
        let mv = [m.values[idx[0]].re, m.values[idx[1]].re];
        let sum: f64 = (0..2).map(|r| pv[r].norm_sqr() * kv[r]).sum();
        let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let delta = if i == j { 1.0 } else { 0.0 };
                let t = Complex64::new(delta, 0.0) - pv[i] * pv[j].conj() * (kv[j] / sum);
                entries[i][j] = t * (mv[i] / kv[i]) / (hf * hf);
            }
        }
        let block = TwoGridBlock { l, entries };
        let (rho, rho_psi) = if l == 0 {
            (block.spectral_radius(), None)
        } else {
            let c = (PI * l as f64 / n_coarse as f64).cos();
            let xi = m_low.values[idx[1]].re / m_low.values[idx[0]].re;
            let closed = if mass == MassDegree::Lower {
                Some(psi(p, c, xi)?)
            } else {
                None
            };
            (block.trace().norm(), closed)
        };
        frequencies.push(FrequencyReport {
            block,
            rho,
            rho_psi,
        });
    }
    let q = frequencies.iter().map(|f| f.rho).fold(0.0, f64::max).sqrt();
    Ok(TwoGridReport {
        p,
        n_coarse,
        h,
        convention: conv,
        mass,
        frequencies,
        q,
        q_coarse: q / 2.0,
    })
}
