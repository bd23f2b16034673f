//! Fixed smooth test functions with their derivatives.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{E, PI};
use std::sync::Arc;

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type Bivariate = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A function on the real line with its first two derivatives.
#[derive(Clone)]
pub struct Function1d {
    pub name: String,
    pub f: Scalar,
    pub df: Scalar,
    pub d2f: Scalar,
}

impl Function1d {
    pub fn new<F, G, H>(name: &str, f: F, df: G, d2f: H) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        H: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Function1d {
            name: name.to_string(),
            f: Arc::new(f),
            df: Arc::new(df),
            d2f: Arc::new(d2f),
        }
    }
}

impl std::fmt::Debug for Function1d {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Function1d")
            .field("name", &self.name)
            .finish()
    }
}

/// A function of two variables with its two first partials.
#[derive(Clone)]
pub struct Function2d {
    pub name: String,
    pub f: Bivariate,
    pub dx: Bivariate,
    pub dy: Bivariate,
}

impl std::fmt::Debug for Function2d {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Function2d")
            .field("name", &self.name)
            .finish()
    }
}

/// Seed of the random trigonometric polynomial.
pub const TRIG_SEED: u64 = 20_241_016;

/// cos(pi x), cos(2 pi x), x(1-x), exp(x) with zero mean on (0,1), and a
/// seeded random trigonometric polynomial.
pub fn battery_1d() -> Vec<Function1d> {
    let mut rng = ChaCha8Rng::seed_from_u64(TRIG_SEED);
    let terms: Vec<(f64, f64, f64)> = (1..=4)
        .map(|k| {
            (
                k as f64 * PI,
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
        })
        .collect();
    let (t1, t2, t3) = (terms.clone(), terms.clone(), terms);
    vec![
        Function1d::new(
            "cos(pi x)",
            |x| (PI * x).cos(),
            |x| -PI * (PI * x).sin(),
            |x| -PI * PI * (PI * x).cos(),
        ),
        Function1d::new(
            "cos(2 pi x)",
            |x| (2.0 * PI * x).cos(),
            |x| -2.0 * PI * (2.0 * PI * x).sin(),
            |x| -4.0 * PI * PI * (2.0 * PI * x).cos(),
        ),
        Function1d::new("x(1-x)", |x| x * (1.0 - x), |x| 1.0 - 2.0 * x, |_| -2.0),
        Function1d::new(
            "exp(x) - (e - 1)",
            |x| x.exp() - (E - 1.0),
            |x| x.exp(),
            |x| x.exp(),
        ),
        Function1d::new(
            "random trigonometric",
            move |x| {
                t1.iter()
                    .map(|(w, a, b)| a * (w * x).cos() + b * (w * x).sin())
                    .sum()
            },
            move |x| {
                t2.iter()
                    .map(|(w, a, b)| w * (-a * (w * x).sin() + b * (w * x).cos()))
                    .sum()
            },
            move |x| {
                t3.iter()
                    .map(|(w, a, b)| -w * w * (a * (w * x).cos() + b * (w * x).sin()))
                    .sum()
            },
        ),
    ]
}

/// Bivariate functions on the unit square.
pub fn battery_2d() -> Vec<Function2d> {
    vec![
        Function2d {
            name: "cos(pi x) cos(pi y)".into(),
            f: Arc::new(|x, y| (PI * x).cos() * (PI * y).cos()),
            dx: Arc::new(|x, y| -PI * (PI * x).sin() * (PI * y).cos()),
            dy: Arc::new(|x, y| -PI * (PI * x).cos() * (PI * y).sin()),
        },
        Function2d {
            name: "exp(x + y)".into(),
            f: Arc::new(|x, y| (x + y).exp()),
            dx: Arc::new(|x, y| (x + y).exp()),
            dy: Arc::new(|x, y| (x + y).exp()),
        },
        Function2d {
            name: "x(1-x) cos(2 pi y)".into(),
            f: Arc::new(|x, y| x * (1.0 - x) * (2.0 * PI * y).cos()),
            dx: Arc::new(|x, y| (1.0 - 2.0 * x) * (2.0 * PI * y).cos()),
            dy: Arc::new(|x, y| -2.0 * PI * x * (1.0 - x) * (2.0 * PI * y).sin()),
        },
    ]
}
