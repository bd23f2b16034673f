use crate::error::{Error, Result};
use crate::linalg::{spd_inv_sqrt, spd_solve_matrix, spd_sqrt, spectral_norm, DenseMatrix};
use crate::operators::{mass_circulant_folded, prolongation, stiffness_circulant_folded};
use crate::symbols::MassDegree;

/// Dense two-grid constant on `(-1, 1)` with `h = 2 / n_coarse`:
/// `h_f^{-1} || M^{1/2} (I - P K_h^{-1} P^T K_{h/2}) K_{h/2}^{-1/2} ||_2`
/// with `h_f = h / 2`.
pub fn two_grid_error_direct(p: usize, n_coarse: usize, mass: MassDegree) -> Result<f64> {
    Ok(two_grid_operator(p, n_coarse, mass)?.1)
}

/// The coarse-grid correction `I - P K_h^{-1} P^T K_{h/2}` and the constant.
pub(crate) fn two_grid_operator(
    p: usize,
    n_coarse: usize,
    mass: MassDegree,
) -> Result<(DenseMatrix, f64)> {
    if p == 0 || n_coarse == 0 {
        return Err(Error::InvalidArgument(
            "two-grid analysis needs p >= 1 and n >= 1".into(),
        ));
    }
    if n_coarse > 64 {
        return Err(Error::InvalidArgument(
            "dense two-grid analysis is limited to 64 coarse elements".into(),
        ));
    }
    let h = 2.0 / n_coarse as f64;
    let hf = h / 2.0;
    let nf = 2 * n_coarse;
    let kf = stiffness_circulant_folded(p, hf, nf)?.to_dense();
    let kc = stiffness_circulant_folded(p, h, n_coarse)?.to_dense();
    let mdeg = match mass {
        MassDegree::Lower => p - 1,
        MassDegree::Same => p,
    };
    let m = mass_circulant_folded(mdeg, hf, nf)?.to_dense();
    let pm = prolongation(p, n_coarse)?;
    let correction = &pm * spd_solve_matrix(&kc, &(pm.transpose() * &kf))?;
    let t = DenseMatrix::identity(nf, nf) - correction;
    let a = spd_sqrt(&m)? * &t * spd_inv_sqrt(&kf)?;
    Ok((t, spectral_norm(&a) / hf))
}
