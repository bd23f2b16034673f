//! Best L2 approximation errors on the reduced space against `sqrt(2) h |u|_{H1}`.

use maxsplines::analysis::{battery_1d, l2_error, l2_project, sampling::PointSet};
use maxsplines::{SpaceKind, SpaceSpec};

fn main() -> maxsplines::Result<()> {
    for g in battery_1d() {
        println!("{}", g.name);
        for p in [1, 3, 5] {
            for n in [8, 16, 32] {
                let spec = SpaceSpec::unit(p, n, SpaceKind::Reduced)?;
                let err = l2_error(&*g.f, &l2_project(&*g.f, &spec)?)?;
                let semi = PointSet::for_space(&spec, 12)?
                    .integrate(|x| (g.df)(x).powi(2))
                    .sqrt();
                let bound = 2f64.sqrt() * spec.h() * semi;
                println!(
                    "  p={p} n={n:>2}  error={err:.3e}  bound={bound:.3e}  ratio={:.4}",
                    err / bound
                );
            }
        }
    }
    Ok(())
}
