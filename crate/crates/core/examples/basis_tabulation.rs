//! Tabulates the reduced basis and prints which full B-splines each basis
//! function combines.

use maxsplines::spaces::tabulate_basis;
use maxsplines::{SpaceKind, SpaceSpec};

fn main() -> maxsplines::Result<()> {
    for p in [2, 3] {
        let spec = SpaceSpec::unit(p, 6, SpaceKind::Reduced)?;
        println!("degree {p}, dimension {}", spec.dimension());
        for k in 0..spec.dimension() {
            let parts: Vec<String> = spec
                .combination(k)
                .iter()
                .map(|(m, _)| format!("phi({m})"))
                .collect();
            println!("  b({}) = {}", spec.index_at(k), parts.join(" + "));
        }
    }
    let spec = SpaceSpec::unit(2, 4, SpaceKind::Reduced)?;
    println!("index,x,value");
    for r in tabulate_basis(&spec, 5) {
        println!("{},{},{}", r.index, r.x, r.value);
    }
    Ok(())
}
