//! Splines orthogonal to a coarser space: their `H1/L2` ratio is pinned
//! between the inverse and approximation constants.

use maxsplines::analysis::{orthogonal_witness, smooth_witness};

fn main() -> maxsplines::Result<()> {
    for p in 1..=5 {
        let n = 16;
        let rough = orthogonal_witness(p, n)?;
        let smooth = smooth_witness(p, n)?;
        println!(
            "p={p}  roughest h|w|_H1/||w|| = {:.4} (<= 4 sqrt 3 = {:.4})   smoothest h|w|_H1/||w|| = {:.4} (>= {:.4})",
            rough.h1_seminorm / n as f64,
            4.0 * 3f64.sqrt(),
            smooth.h1_seminorm / n as f64,
            1.0 / (2.0 * 2f64.sqrt())
        );
    }
    Ok(())
}
