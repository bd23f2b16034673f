//! Dense linear-algebra helpers on top of `nalgebra`.

use crate::error::{Error, Result};
use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};

/// Dense real matrix used for non-circulant operators.
pub type DenseMatrix = DMatrix<f64>;

/// Condition-number estimate above which SPD solves are refused.
pub const MAX_CONDITION: f64 = 1e14;

/// Solves `a x = b` for symmetric positive definite `a` by Cholesky
/// factorization.
pub fn spd_solve(a: &DenseMatrix, b: &DVector<f64>) -> Result<DVector<f64>> {
    let chol = spd_factor(a)?;
    Ok(chol.solve(b))
}

/// Solves `a X = b` column by column for SPD `a`.
pub fn spd_solve_matrix(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    let chol = spd_factor(a)?;
    Ok(chol.solve(b))
}

/// Cholesky factor with a cheap conditioning check on the diagonal of `L`.
pub fn spd_factor(a: &DenseMatrix) -> Result<Cholesky<f64, nalgebra::Dyn>> {
    let chol = Cholesky::new(a.clone()).ok_or_else(|| Error::Indefinite {
        min_eigenvalue: sym_eigen(a).0.min(),
    })?;
    let diag = chol.l_dirty().diagonal();
    let (lo, hi) = diag.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), d| {
        (lo.min(d.abs()), hi.max(d.abs()))
    });
    let estimate = (hi / lo).powi(2);
    if !estimate.is_finite() || estimate > MAX_CONDITION {
        return Err(Error::IllConditioned { estimate });
    }
    Ok(chol)
}

/// Eigen-decomposition of a symmetric matrix with eigenvalues sorted
/// ascending (columns of the second matrix are the eigenvectors).
pub fn sym_eigen(a: &DenseMatrix) -> (DVector<f64>, DenseMatrix) {
    let sym = 0.5 * (a + a.transpose());
    let eig = SymmetricEigen::new(sym);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DenseMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

fn sym_power(a: &DenseMatrix, power: f64) -> Result<DenseMatrix> {
    let (vals, vecs) = sym_eigen(a);
    let scale = vals.amax().max(f64::MIN_POSITIVE);
    if vals.min() <= 1e-14 * scale {
        return Err(Error::Indefinite {
            min_eigenvalue: vals.min(),
        });
    }
    let d = DVector::from_iterator(vals.len(), vals.iter().map(|v| v.powf(power)));
    Ok(&vecs * DenseMatrix::from_diagonal(&d) * vecs.transpose())
}

/// Symmetric positive definite square root.
pub fn spd_sqrt(a: &DenseMatrix) -> Result<DenseMatrix> {
    sym_power(a, 0.5)
}

/// Inverse of the symmetric positive definite square root.
pub fn spd_inv_sqrt(a: &DenseMatrix) -> Result<DenseMatrix> {
    sym_power(a, -0.5)
}

/// Largest singular value.
pub fn spectral_norm(a: &DenseMatrix) -> f64 {
    a.singular_values().max()
}

/// All finite eigenpairs of the pencil `a x = lambda b` for symmetric `a` and
/// positive semidefinite `b`, ascending.
///
/// The null space of `b` is deflated first; the returned vectors are
/// `b`-orthonormal. `a` must vanish on that null space, which holds for
/// Sobolev Gram pairs of consecutive orders.
pub fn generalized_eigen(a: &DenseMatrix, b: &DenseMatrix) -> Result<(DVector<f64>, DenseMatrix)> {
    let (bv, bw) = sym_eigen(b);
    let scale = bv.amax();
    if bv.min() < -1e-10 * scale.max(1.0) {
        return Err(Error::Indefinite {
            min_eigenvalue: bv.min(),
        });
    }
    let keep: Vec<usize> = (0..bv.len()).filter(|&i| bv[i] > 1e-11 * scale).collect();
    if keep.is_empty() {
        return Err(Error::Indefinite {
            min_eigenvalue: bv.max(),
        });
    }
    // T = W_+ diag(lambda_+)^{-1/2}
    let mut t = DenseMatrix::zeros(b.nrows(), keep.len());
    for (c, &i) in keep.iter().enumerate() {
        t.set_column(c, &(bw.column(i) / bv[i].sqrt()));
    }
    let reduced = t.transpose() * a * &t;
    let (vals, vecs) = sym_eigen(&reduced);
    Ok((vals, t * vecs))
}

/// Orthonormal basis of the null space of `a` (as columns) and the numerical
/// rank, by Gram-Schmidt with column pivoting.
///
/// Rows are scaled to unit max-norm first; directions whose residual falls
/// below `rel_tol` are treated as dependent.
pub fn null_space(a: &DenseMatrix, rel_tol: f64) -> (DenseMatrix, usize) {
    let cols = a.ncols();
    let mut rows: Vec<DVector<f64>> = Vec::new();
    for r in 0..a.nrows() {
        let row = a.row(r).transpose();
        let m = row.amax();
        if m > 0.0 {
            rows.push(row / m);
        }
    }
    let row_space = pivoted_orthonormalize(rows, rel_tol);
    let rank = row_space.len();
    let candidates: Vec<DVector<f64>> = (0..cols)
        .map(|k| {
            let mut e = DVector::zeros(cols);
            e[k] = 1.0;
            for q in &row_space {
                let c = q.dot(&e);
                e -= q * c;
            }
            e
        })
        .collect();
    let mut basis = pivoted_orthonormalize_against(candidates, &row_space, rel_tol);
    basis.truncate(cols - rank);
    let mut out = DenseMatrix::zeros(cols, basis.len());
    for (c, v) in basis.iter().enumerate() {
        out.set_column(c, v);
    }
    (out, rank)
}

/// Numerical rank of `a` (rows scaled to unit max-norm).
pub fn numerical_rank(a: &DenseMatrix, rel_tol: f64) -> usize {
    null_space(a, rel_tol).1
}

fn pivoted_orthonormalize(vs: Vec<DVector<f64>>, rel_tol: f64) -> Vec<DVector<f64>> {
    pivoted_orthonormalize_against(vs, &[], rel_tol)
}

fn pivoted_orthonormalize_against(
    mut vs: Vec<DVector<f64>>,
    fixed: &[DVector<f64>],
    rel_tol: f64,
) -> Vec<DVector<f64>> {
    let reference: Vec<f64> = vs.iter().map(|v| v.norm()).collect();
    let mut alive: Vec<usize> = (0..vs.len()).collect();
    let mut out: Vec<DVector<f64>> = Vec::new();
    loop {
        let best = alive
            .iter()
            .copied()
            .filter(|&i| reference[i] > 0.0)
            .map(|i| (i, vs[i].norm() / reference[i]))
            .max_by(|x, y| x.1.total_cmp(&y.1));
        let Some((i, rel)) = best else { break };
        if rel <= rel_tol {
            break;
        }
        let mut q = vs[i].clone();
        // second pass keeps orthogonality at the level of rounding
        for _ in 0..2 {
            for f in fixed.iter().chain(out.iter()) {
                let c = f.dot(&q);
                q -= f * c;
            }
        }
        let nrm = q.norm();
        if nrm <= rel_tol * reference[i] {
            alive.retain(|&k| k != i);
            continue;
        }
        q /= nrm;
        alive.retain(|&k| k != i);
        for &k in &alive {
            let c = q.dot(&vs[k]);
            vs[k] -= &q * c;
        }
        out.push(q);
    }
    out
}
