//! The boundary spline `(1 - x/h)^p` whose `H1/L2` ratio outgrows any
//! degree-independent bound.

use maxsplines::analysis::counterexample_ratio;

fn main() -> maxsplines::Result<()> {
    let h = 0.1;
    for p in 1..=10 {
        let c = counterexample_ratio(p, h)?;
        println!(
            "p={p:>2}  ratio*h={:.12}  quadrature*h={:.12}",
            c.formula * h,
            c.quadrature * h
        );
    }
    Ok(())
}
