//! Largest `h |u|_{H1} / ||u||_{L2}` on the reduced space versus the full
//! space: bounded on the former, growing like the degree on the latter.

use maxsplines::analysis::rayleigh_max;
use maxsplines::{SpaceKind, SpaceSpec};

fn main() -> maxsplines::Result<()> {
    let n = 32;
    println!("{:>2} {:>14} {:>14}", "p", "reduced", "full");
    for p in 1..=10 {
        let reduced = SpaceSpec::unit(p, n, SpaceKind::Reduced)?;
        let full = SpaceSpec::unit(p, n, SpaceKind::Full)?;
        let a = reduced.h() * rayleigh_max(&reduced, 1)?.value;
        let b = full.h() * rayleigh_max(&full, 1)?.value;
        println!("{p:>2} {a:>14.10} {b:>14.10}");
    }
    println!("2 sqrt(3) = {:.10}", 2.0 * 3f64.sqrt());
    Ok(())
}
