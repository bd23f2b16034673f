//! Best L2 approximation on the unit square in the tensor product of the
//! reduced space with itself.

use maxsplines::analysis::{battery_2d, tensor2d_error};
use maxsplines::{SpaceKind, SpaceSpec};

fn main() -> maxsplines::Result<()> {
    for f in battery_2d() {
        for p in 1..=3 {
            for n in [8, 16] {
                let r = tensor2d_error(&f, &SpaceSpec::unit(p, n, SpaceKind::Reduced)?)?;
                println!(
                    "{:<22} p={p} n={n:>2}  error={:.3e}  2h|u|={:.3e}  split={:.3e}",
                    f.name, r.error, r.isotropic_bound, r.anisotropic_bound
                );
            }
        }
    }
    Ok(())
}
