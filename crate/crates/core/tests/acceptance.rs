//! One line per acceptance criterion; exits nonzero if any criterion fails.

use maxsplines::analysis::{
    battery_1d, battery_2d, composed_approximation, counterexample_ratio, h1_seminorm_error,
    l2_error, l2_project, mean_matched_lift, orthogonal_witness, rayleigh_max,
    rayleigh_max_constrained, smooth_witness, tensor2d_error, two_grid_error_direct, CoefVector,
    Function2d,
};
use maxsplines::bspline_core::{gauss_rule, integrate_piecewise};
use maxsplines::linalg::{null_space, DenseMatrix};
use maxsplines::operators::{
    gradient_circulant, gram_matrix, mass_circulant, mass_circulant_folded, prolongation,
    stiffness_circulant, stiffness_circulant_folded, Circulant,
};
use maxsplines::spaces::{
    boundary_constraint_rows, boundary_derivative, constrained_reduced_basis, table_dimension, End,
};
use maxsplines::symbols::{
    fourier_matrix, gradient_symbol, inverse_fourier_matrix, mass_symbol, prolongation_symbol, psi,
    stiffness_symbol, two_grid_constant, two_grid_constant_with, EConvention, MassDegree,
    SymbolSeq,
};
use maxsplines::{SpaceKind, SpaceSpec};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::sync::Arc;
use std::time::Instant;

const TWO_SQRT3: f64 = 3.4641016151377544;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Independent high-order quadrature of `∫_0^1 g^2` on 64 elements.
fn norm_unit(g: impl Fn(f64) -> f64) -> f64 {
    let rule = gauss_rule(20).unwrap();
    integrate_piecewise(|x| g(x).powi(2), 0.0, 1.0, 64, &rule).sqrt()
}

fn two_grid() -> Outcome {
    let mut worst_q: f64 = 0.0;
    let mut all_ok = true;
    for conv in [EConvention::Paper, EConvention::Matrix] {
        for p in 1..=8 {
            for n in [4, 8, 16] {
                let q = two_grid_constant(p, n, conv).unwrap().q;
                worst_q = worst_q.max(q);
                all_ok &= q <= FRAC_1_SQRT_2 + 1e-12;
            }
        }
    }
    let mut worst_diff: f64 = 0.0;
    for mass in [MassDegree::Lower, MassDegree::Same] {
        for p in 1..=5 {
            for n in [2, 4, 8, 16] {
                let d = two_grid_error_direct(p, n, mass).unwrap();
                let s = two_grid_constant_with(p, n, EConvention::Matrix, mass)
                    .unwrap()
                    .q;
                worst_diff = worst_diff.max((d - s).abs());
            }
        }
    }
    outcome(
        all_ok && worst_diff <= 1e-8,
        format!("max q = {worst_q:.17} (bound {FRAC_1_SQRT_2:.17}), max |dense - symbol| = {worst_diff:.2e}"),
    )
}

fn psi_bound() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in 1..=12 {
        for i in 0..200 {
            let c = i as f64 / 200.0;
            for j in 0..200 {
                let xi = (j + 1) as f64 / 200.0;
                worst = worst
                    .max(psi(p, c, xi).unwrap())
                    .max(psi(p, -c, 1.0 / xi).unwrap());
            }
        }
    }
    let mut rho0_dev: f64 = 0.0;
    for p in 1..=8 {
        for n in [4, 8, 16] {
            let r = two_grid_constant(p, n, EConvention::Paper).unwrap();
            rho0_dev = rho0_dev.max((r.frequencies[0].rho - 0.25).abs());
        }
    }
    outcome(
        worst <= 0.5 && rho0_dev <= 1e-13,
        format!("max sampled Psi = {worst:.17}, max |rho0 - 1/4| = {rho0_dev:.2e}"),
    )
}

fn inverse() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut lowest_sharp = f64::INFINITY;
    let mut constrained = Vec::new();
    for p in 1..=8 {
        for n in [8usize, 16, 32] {
            let h = 1.0 / n as f64;
            let v = if p < n {
                h * rayleigh_max(&SpaceSpec::unit(p, n, SpaceKind::Reduced).unwrap(), 1)
                    .unwrap()
                    .value
            } else {
                let v = h * rayleigh_max_constrained(p, n).unwrap();
                constrained.push(format!("(p={p},n={n}): {v:.6}"));
                v
            };
            worst = worst.max(v);
            if 2.0 * h * (p as f64) < 1.0 {
                lowest_sharp = lowest_sharp.min(v);
            }
        }
    }
    let ok = worst <= TWO_SQRT3 + 1e-9 && lowest_sharp >= 1.0 / (2.0 * SQRT_2) - 1e-9;
    outcome(
        ok,
        format!(
            "max h*sqrt(lambda) = {worst:.12} (<= {TWO_SQRT3:.12}), min where 2hp<1 = {lowest_sharp:.6} (>= {:.6}); hp >= 1 cells on the constraint-defined space: {}",
            1.0 / (2.0 * SQRT_2),
            constrained.join(", ")
        ),
    )
}

fn counterexample() -> Outcome {
    let mut rel: f64 = 0.0;
    let mut increasing = true;
    let mut exceeds = true;
    let mut prev = 0.0;
    for p in 1..=10 {
        let c = counterexample_ratio(p, 0.1).unwrap();
        rel = rel.max((c.formula - c.quadrature).abs() / c.formula);
        let scaled = c.formula * c.h;
        increasing &= scaled > prev;
        prev = scaled;
        if p >= 3 {
            exceeds &= scaled > TWO_SQRT3;
        }
    }
    let at3 = counterexample_ratio(3, 0.1).unwrap().formula * 0.1;
    outcome(
        rel <= 1e-10 && increasing && exceeds,
        format!("max relative formula/quadrature gap = {rel:.2e}, ratio*h at p=3 = {at3:.6} > {TWO_SQRT3:.6}"),
    )
}

fn approximation() -> Outcome {
    let mut worst: f64 = 0.0;
    for g in battery_1d() {
        let semi = norm_unit(&*g.df);
        for p in 1..=6 {
            for n in [8usize, 16, 32] {
                let spec = SpaceSpec::unit(p, n, SpaceKind::Reduced).unwrap();
                let err = l2_error(&*g.f, &l2_project(&*g.f, &spec).unwrap()).unwrap();
                worst = worst.max(err / (SQRT_2 * spec.h() * semi));
            }
        }
    }
    let mut chain: f64 = 0.0;
    let mut residual: f64 = 0.0;
    for p in 1..=6 {
        for n in [8usize, 16, 32] {
            let w = orthogonal_witness(p, n).unwrap();
            let h = 1.0 / n as f64;
            let norm = w.coefs.seminorm(0).unwrap();
            let semi = w.coefs.seminorm(1).unwrap();
            chain = chain.max(h * semi / (4.0 * 3f64.sqrt()) / norm);
            residual = residual.max(w.residual);
        }
    }
    let mut dual: f64 = 0.0;
    for p in 1..=6 {
        for n in [16usize, 32] {
            if let Ok(w) = smooth_witness(p, n) {
                let h = 1.0 / n as f64;
                dual = dual.max(
                    w.coefs.seminorm(0).unwrap()
                        / (SQRT_2 * 2.0 * h * w.coefs.seminorm(1).unwrap()),
                );
                residual = residual.max(w.residual);
            }
        }
    }
    outcome(
        worst <= 1.0 + 1e-9 && chain <= 1.0 + 1e-9 && dual <= 1.0 + 1e-9 && residual <= 1e-11,
        format!(
            "max error/bound = {worst:.4}; rough witness (h|w|/(4 sqrt 3))/||w|| max = {chain:.12}, smooth witness ||w||/(2 sqrt 2 h|w|) max = {dual:.4}, orthogonality residual {residual:.1e}"
        ),
    )
}

fn mass_nesting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for p in 1..=8 {
        for n in [8usize, 16, 32] {
            let h = 2.0 / n as f64;
            let hi = mass_circulant_folded(p, h, n).unwrap().to_dense();
            let lo = mass_circulant_folded(p - 1, h, n).unwrap().to_dense();
            for _ in 0..100 {
                let u = nalgebra::DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
                worst = worst.max(u.dot(&(&hi * &u)) / u.dot(&(&lo * &u)));
            }
        }
    }
    outcome(
        worst <= 1.0 + 1e-12,
        format!("max u'M_p u / u'M_(p-1) u = {worst:.15}"),
    )
}

fn gram_closed_forms() -> Outcome {
    let (mut dm, mut dk): (f64, f64) = (0.0, 0.0);
    for p in 1..=8 {
        let spec = SpaceSpec::new(p, 32, -1.0, 1.0, SpaceKind::Periodic).unwrap();
        let h = spec.h();
        dm = dm.max(
            (gram_matrix(&spec, 0, false).unwrap() - mass_circulant(p, h, 32).unwrap().to_dense())
                .amax(),
        );
        dk = dk.max(
            (gram_matrix(&spec, 1, true).unwrap()
                - stiffness_circulant(p, h, 32).unwrap().to_dense())
            .amax(),
        );
    }
    outcome(
        dm <= 1e-12 && dk <= 1e-11,
        format!("max |M - Gram| = {dm:.2e}, max |K - H1circ Gram| = {dk:.2e}"),
    )
}

fn complex(m: &DenseMatrix) -> DMatrix<Complex64> {
    m.map(|v| Complex64::new(v, 0.0))
}

fn diag_residual(c: &Circulant, s: &SymbolSeq) -> f64 {
    let n = c.n;
    let d = inverse_fourier_matrix(n) * complex(&c.to_dense()) * fourier_matrix(n);
    let target = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&s.values));
    (d - target).camax()
}

fn symbols() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [2usize, 3, 4, 7, 8, 16, 32] {
        let h = 2.0 / n as f64;
        for p in 1..=5 {
            worst = worst.max(diag_residual(
                &mass_circulant_folded(p, h, n).unwrap(),
                &mass_symbol(p, h, n),
            ));
            worst = worst.max(diag_residual(
                &stiffness_circulant_folded(p, h, n).unwrap(),
                &stiffness_symbol(p, h, n, EConvention::Matrix).unwrap(),
            ));
        }
        worst = worst.max(diag_residual(
            &gradient_circulant(h, n).unwrap(),
            &gradient_symbol(h, n),
        ));
    }
    let mut prol: f64 = 0.0;
    for n in [1usize, 2, 4, 8, 16] {
        for p in 0..=5 {
            let pm = complex(&prolongation(p, n).unwrap());
            let ps = prolongation_symbol(p, n).to_dense();
            prol =
                prol.max((inverse_fourier_matrix(2 * n) * &pm * fourier_matrix(n) - &ps).camax());
            let adj = inverse_fourier_matrix(n) * pm.transpose() * fourier_matrix(2 * n);
            prol = prol.max((adj - ps.adjoint() * Complex64::new(2.0, 0.0)).camax());
        }
    }
    outcome(
        worst <= 1e-10 && prol <= 1e-10,
        format!("max diagonalization residual = {worst:.2e}, prolongation relations {prol:.2e}"),
    )
}

fn galerkin() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in 1..=6 {
        for n in 2..=32usize {
            let h = 2.0 / n as f64;
            let kf = stiffness_circulant_folded(p, h / 2.0, 2 * n)
                .unwrap()
                .to_dense();
            let kc = stiffness_circulant_folded(p, h, n).unwrap().to_dense();
            let pm = prolongation(p, n).unwrap();
            worst = worst.max((pm.transpose() * kf * &pm - kc).amax());
        }
    }
    outcome(
        worst <= 1e-11,
        format!("max |P'K_(h/2)P - K_h| = {worst:.2e} over p <= 6, 2 <= n <= 32"),
    )
}

fn lift() -> Outcome {
    let u = |x: f64| (2.0 * PI * x).cos();
    let du = |x: f64| -2.0 * PI * (2.0 * PI * x).sin();
    let d2u = |x: f64| -4.0 * PI * PI * (2.0 * PI * x).cos();
    let h2 = norm_unit(d2u);
    let (mut w1, mut w0): (f64, f64) = (0.0, 0.0);
    for p in 2..=5 {
        for n in [8usize, 16, 32] {
            let h = 1.0 / n as f64;
            let slope =
                l2_project(du, &SpaceSpec::unit(p - 1, n, SpaceKind::Reduced).unwrap()).unwrap();
            let w = mean_matched_lift(&slope, 0.0).unwrap();
            w1 = w1.max(h1_seminorm_error(du, &w).unwrap() / (SQRT_2 * h * h2));
            let (_, approx) = composed_approximation(u, du, p, n, 0.0, 1.0).unwrap();
            w0 = w0.max(norm_unit(|x| u(x) - approx(x)) / (2.0 * h * h * h2));
        }
    }
    outcome(
        w1 <= 1.0 + 1e-9 && w0 <= 1.0 + 1e-9,
        format!("max |u - lift|_H1 / bound = {w1:.4}, max composed L2 error / bound = {w0:.4}"),
    )
}

fn tensor() -> Outcome {
    let (mut worst, mut aniso): (f64, f64) = (0.0, 0.0);
    for f in battery_2d() {
        for p in 1..=3 {
            for n in [8usize, 16] {
                let r = tensor2d_error(&f, &SpaceSpec::unit(p, n, SpaceKind::Reduced).unwrap())
                    .unwrap();
                worst = worst.max(r.error / r.isotropic_bound);
                aniso = aniso.max(r.error / r.anisotropic_bound);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut sep: f64 = 0.0;
    for p in 1..=3 {
        let spec = SpaceSpec::unit(p, 8, SpaceKind::Reduced).unwrap();
        let a = CoefVector::new(
            spec.clone(),
            (0..spec.dimension())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect(),
        )
        .unwrap();
        let b = CoefVector::new(
            spec.clone(),
            (0..spec.dimension())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect(),
        )
        .unwrap();
        let (a1, b1, a2, b2, a3, b3) = (a.clone(), b.clone(), a.clone(), b.clone(), a, b);
        let f = Function2d {
            name: "separable".into(),
            f: Arc::new(move |x, y| a1.eval(x, 0) * b1.eval(y, 0)),
            dx: Arc::new(move |x, y| a2.eval(x, 1) * b2.eval(y, 0)),
            dy: Arc::new(move |x, y| a3.eval(x, 0) * b3.eval(y, 1)),
        };
        sep = sep.max(tensor2d_error(&f, &spec).unwrap().error);
    }
    outcome(
        worst <= 1.0 + 1e-9 && aniso <= 1.0 + 1e-9 && sep <= 1e-10,
        format!("max error / 2h|u|_H1 = {worst:.4}, anisotropic ratio {aniso:.4}, separable member error = {sep:.2e}"),
    )
}

/// Dimension of the periodic space from its defining constraints.
fn periodic_constraint_dim(p: usize, n: usize) -> usize {
    let orders: Vec<usize> = (0..p).collect();
    let rows = boundary_constraint_rows(p, n, &orders, &orders);
    let diff = rows.rows(0, p) - rows.rows(p, p);
    null_space(&diff.into_owned(), 1e-9).0.ncols()
}

fn dimensions() -> Outcome {
    let mut mismatches = Vec::new();
    for p in 1..=10 {
        for n in [8usize, 16, 32] {
            for kind in [
                SpaceKind::Full,
                SpaceKind::Periodic,
                SpaceKind::Reduced,
                SpaceKind::ReducedQ(2),
                SpaceKind::ReducedQ(3),
            ] {
                let want = table_dimension(kind, p, n);
                let got = match (SpaceSpec::unit(p, n, kind), kind) {
                    (Ok(s), _) => s.dimension(),
                    (Err(_), SpaceKind::Periodic) => periodic_constraint_dim(p, n),
                    (Err(_), SpaceKind::Reduced) => constrained_reduced_basis(p, n, 1).ncols(),
                    (Err(_), SpaceKind::ReducedQ(q)) => constrained_reduced_basis(p, n, q).ncols(),
                    (Err(e), _) => panic!("{e}"),
                };
                let closed = match kind {
                    SpaceKind::Full => n + p,
                    SpaceKind::Periodic => n,
                    SpaceKind::Reduced => {
                        if p % 2 == 0 {
                            n
                        } else {
                            n + 1
                        }
                    }
                    _ => want,
                };
                if got != want || want != closed {
                    mismatches.push(format!("{kind:?} p={p} n={n}: {got} vs {want}"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for p in 1..=10 {
        for n in [16usize, 32] {
            let spec = SpaceSpec::unit(p, n, SpaceKind::Reduced).unwrap();
            let c: Vec<f64> = (0..spec.dimension())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            for l in (1..p).step_by(2) {
                for end in [End::Left, End::Right] {
                    let v =
                        boundary_derivative(&spec, &c, l, end).unwrap() * spec.h().powi(l as i32);
                    worst = worst.max(v.abs());
                }
            }
        }
    }
    outcome(
        mismatches.is_empty() && worst <= 1e-11,
        format!(
            "{} dimension mismatches {:?}; max h^l |odd boundary derivative| = {worst:.2e}",
            mismatches.len(),
            mismatches
        ),
    )
}

fn main() {
    let start = Instant::now();
    let criteria: [Criterion; 12] = [
        ("two-grid constant", two_grid),
        ("Psi bound and zero-frequency block", psi_bound),
        ("inverse inequality and sharpness", inverse),
        ("counterexample on the full space", counterexample),
        ("approximation constant and witness", approximation),
        ("mass nesting", mass_nesting),
        ("closed-form vs quadrature Gram", gram_closed_forms),
        ("symbol diagonalization", symbols),
        ("Galerkin identity", galerkin),
        ("Sobolev lift and composition", lift),
        ("tensor product", tensor),
        ("dimensions and boundary conditions", dimensions),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
