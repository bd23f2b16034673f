//! Two-grid constant per degree from the frequency blocks, next to the dense
//! matrix computation.
//!
//! cargo run --example two_grid_constant -- 16

use maxsplines::analysis::two_grid_error_direct;
use maxsplines::symbols::{two_grid_constant, EConvention, MassDegree};

fn main() -> maxsplines::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    println!("coarse elements n = {n}, h = {}", 2.0 / n as f64);
    println!(
        "{:>2} {:>20} {:>20} {:>12}",
        "p", "q (blocks)", "q (dense)", "worst l"
    );
    for p in 1..=8 {
        let r = two_grid_constant(p, n, EConvention::Paper)?;
        let worst = r
            .frequencies
            .iter()
            .max_by(|a, b| a.rho.total_cmp(&b.rho))
            .map(|f| f.block.l)
            .unwrap_or(0);
        let dense = if n <= 32 {
            two_grid_error_direct(p, n, MassDegree::Lower)?
        } else {
            f64::NAN
        };
        println!("{p:>2} {:>20.17} {:>20.17} {worst:>12}", r.q, dense);
    }
    println!("bound 1/sqrt(2) = {:.17}", std::f64::consts::FRAC_1_SQRT_2);
    Ok(())
}
