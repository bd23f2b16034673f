//! Prolongation between the periodic spaces on `n` and `2n` elements and the
//! Galerkin identity `P^T K_fine P = K_coarse`.

use maxsplines::operators::{prolongation, stiffness_circulant_folded};

fn main() -> maxsplines::Result<()> {
    let p = 3;
    let pm = prolongation(p, 4)?;
    println!("P (p = {p}, 8 x 4):\n{pm}");
    for n in [4usize, 8, 16, 32] {
        let h = 2.0 / n as f64;
        let kf = stiffness_circulant_folded(p, h / 2.0, 2 * n)?.to_dense();
        let kc = stiffness_circulant_folded(p, h, n)?.to_dense();
        let pm = prolongation(p, n)?;
        println!(
            "n={n:>2}  max |P^T K P - K| = {:.2e}",
            (pm.transpose() * kf * &pm - kc).amax()
        );
    }
    Ok(())
}
