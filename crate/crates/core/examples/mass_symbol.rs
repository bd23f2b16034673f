//! Mass and stiffness symbols, the polynomial form of the mass symbol, and a
//! check that the Fourier matrix diagonalizes the assembled circulants.

use maxsplines::operators::{mass_circulant, stiffness_circulant};
use maxsplines::symbols::{
    fourier_matrix, g_eval, g_poly_coeffs, inverse_fourier_matrix, mass_symbol, stiffness_symbol,
    theta, EConvention,
};
use num_complex::Complex64;

fn main() -> maxsplines::Result<()> {
    let (p, n) = (3, 16);
    let h = 2.0 / n as f64;
    let m = mass_symbol(p, h, n);
    let k = stiffness_symbol(p, h, n, EConvention::Matrix)?;
    let g = g_poly_coeffs(p);
    println!("g_{p} coefficients: {g:?}");
    for j in 0..n {
        let c = 1.0 + theta(j, n).cos();
        println!(
            "j={j:>2}  m={:.15}  h*g={:.15}  k={:.12}",
            m.values[j].re,
            h * g_eval(&g, c),
            k.values[j].re
        );
    }
    let f = fourier_matrix(n);
    let fi = inverse_fourier_matrix(n);
    for (name, c, s) in [
        ("mass", mass_circulant(p, h, n)?, &m),
        ("stiffness", stiffness_circulant(p, h, n)?, &k),
    ] {
        let d = &fi * c.to_dense().map(|v| Complex64::new(v, 0.0)) * &f;
        let off = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                (d[(i, j)]
                    - if i == j {
                        s.values[i]
                    } else {
                        Complex64::new(0.0, 0.0)
                    })
                .norm()
            })
            .fold(0.0, f64::max);
        println!("{name}: max |F^-1 C F - diag| = {off:.2e}");
    }
    Ok(())
}
