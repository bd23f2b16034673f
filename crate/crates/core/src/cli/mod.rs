//! Command-line front end: `verify`, `scan` and `export`.
//!
//! Exit codes: 0 success, 1 a checked bound failed, 2 usage or configuration
//! error.

mod export;
mod output;
mod scan;
mod verify;

pub use export::{cmd_export, symbol_dump, SymbolDump, SymbolLists, Target};
pub use output::{emit, Cell, Format, Table};
pub use scan::{cmd_scan, Quantity};
pub use verify::{cmd_verify, psi_sample_max, summarize, verification_reports};

use crate::error::{Error, Result};
use crate::spaces::SpaceKind;
use crate::symbols::EConvention;
use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable holding the default tolerance specification.
pub const TOL_ENV: &str = "MAXSPLINES_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "maxsplines",
    version,
    about = "Uniform maximum-smoothness splines: operators, symbols and estimate checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every estimate check and print a report table.
    Verify(CommonArgs),
    /// Tabulate one quantity over a (p, n) grid.
    Scan(CommonArgs),
    /// Write an operator, symbol set or basis tabulation.
    Export(CommonArgs),
}

#[derive(Debug, Args, Clone, Default)]
pub struct CommonArgs {
    /// Degree or degree range such as `3` or `1..10`.
    #[arg(long)]
    pub p: Option<String>,
    /// Largest degree, the range starting at 1.
    #[arg(long)]
    pub p_max: Option<usize>,
    /// Comma-separated element counts.
    #[arg(long)]
    pub n_set: Option<String>,
    /// Element count for single-space exports.
    #[arg(long)]
    pub n: Option<usize>,
    /// Grid size (counterexample scans).
    #[arg(long)]
    pub h: Option<f64>,
    /// Interval endpoints `a,b`.
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    /// full, periodic, reduced or reduced-q<q>.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long, value_enum)]
    pub quantity: Option<Quantity>,
    #[arg(long, value_enum)]
    pub target: Option<Target>,
    /// paper or matrix.
    #[arg(long)]
    pub e_convention: Option<String>,
    /// `value` for all checks or `quantity=value`; repeatable.
    #[arg(long)]
    pub tol: Vec<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Samples per basis function for basis exports.
    #[arg(long)]
    pub samples: Option<usize>,
}

/// Per-quantity relative tolerances with a fallback.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub default: Option<f64>,
    pub per_quantity: BTreeMap<String, f64>,
}

impl Tolerances {
    pub fn none() -> Self {
        Tolerances {
            default: None,
            per_quantity: BTreeMap::new(),
        }
    }

    /// Parses entries like `1e-9` or `twogrid=0`, comma separated.
    pub fn parse_into(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = match item.split_once('=') {
                Some((k, v)) => (Some(k.trim()), v.trim()),
                None => (None, item),
            };
            let v: f64 = value.parse().map_err(|_| {
                Error::InvalidArgument(format!("tolerance '{value}' is not a number"))
            })?;
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "tolerance must be finite and >= 0, got {v}"
                )));
            }
            match key {
                Some(k) => {
                    self.per_quantity.insert(k.to_string(), v);
                }
                None => self.default = Some(v),
            }
        }
        Ok(())
    }

    /// Tolerance for `quantity`, falling back to the override default and
    /// then to `builtin`.
    pub fn get(&self, quantity: &str, builtin: f64) -> f64 {
        self.per_quantity
            .get(quantity)
            .copied()
            .or(self.default)
            .unwrap_or(builtin)
    }
}

/// Validated settings shared by the subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub p_range: Option<Vec<usize>>,
    pub n_set: Option<Vec<usize>>,
    pub n: Option<usize>,
    pub h: Option<f64>,
    pub domain: Option<(f64, f64)>,
    pub kind: Option<SpaceKind>,
    pub convention: EConvention,
    pub tolerances: Tolerances,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub quantity: Option<Quantity>,
    pub target: Option<Target>,
    pub samples: usize,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs, env_tol: Option<&str>) -> Result<Self> {
        let p_range = match (&args.p, args.p_max) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidArgument("use either --p or --p-max".into()))
            }
            (Some(s), None) => Some(parse_range(s)?),
            (None, Some(m)) => {
                if m == 0 {
                    return Err(Error::InvalidArgument("--p-max must be >= 1".into()));
                }
                Some((1..=m).collect())
            }
            (None, None) => None,
        };
        let n_set = args.n_set.as_deref().map(parse_list).transpose()?;
        if let Some(h) = args.h {
            if !(h > 0.0 && h < 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "--h must lie in (0, 1), got {h}"
                )));
            }
        }
        let domain = args.domain.as_deref().map(parse_domain).transpose()?;
        let kind = args.kind.as_deref().map(parse_kind).transpose()?;
        let convention = args.e_convention.as_deref().unwrap_or("paper").parse()?;
        let mut tolerances = Tolerances::none();
        if let Some(env) = env_tol {
            tolerances.parse_into(env)?;
        }
        for t in &args.tol {
            tolerances.parse_into(t)?;
        }
        if args.n == Some(0) {
            return Err(Error::InvalidArgument("--n must be >= 1".into()));
        }
        Ok(RunConfig {
            p_range,
            n_set,
            n: args.n,
            h: args.h,
            domain,
            kind,
            convention,
            tolerances,
            out: args.out.clone(),
            format: args.format.unwrap_or(Format::Csv),
            quantity: args.quantity,
            target: args.target,
            samples: args.samples.unwrap_or(101),
        })
    }
}

/// `3`, `1..10` (inclusive) or `1..=10`.
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("invalid degree range '{s}'"));
    let s = s.trim();
    let v: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.trim_start_matches('=');
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        (lo..=hi).collect()
    } else {
        vec![s.parse().map_err(|_| bad())?]
    };
    if v.is_empty() {
        return Err(bad());
    }
    Ok(v)
}

/// Non-empty list of positive integers.
pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    let v = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("invalid element count '{t}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.is_empty() {
        return Err(Error::InvalidArgument(
            "the element-count set is empty".into(),
        ));
    }
    if v.contains(&0) {
        return Err(Error::InvalidArgument("element counts must be >= 1".into()));
    }
    Ok(v)
}

fn parse_domain(s: &str) -> Result<(f64, f64)> {
    let bad = || Error::InvalidArgument(format!("invalid domain '{s}', expected a,b"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn parse_kind(s: &str) -> Result<SpaceKind> {
    match s {
        "full" => Ok(SpaceKind::Full),
        "periodic" => Ok(SpaceKind::Periodic),
        "reduced" => Ok(SpaceKind::Reduced),
        _ => s
            .strip_prefix("reduced-q")
            .and_then(|q| q.parse::<usize>().ok())
            .filter(|q| *q >= 1)
            .map(SpaceKind::ReducedQ)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown space kind '{s}'"))),
    }
}

/// Parses arguments and runs the selected command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let env_tol = std::env::var(TOL_ENV).ok();
    let (args, cmd): (&CommonArgs, fn(&RunConfig) -> Result<i32>) = match &cli.command {
        Command::Verify(a) => (a, cmd_verify),
        Command::Scan(a) => (a, cmd_scan),
        Command::Export(a) => (a, cmd_export),
    };
    let result = RunConfig::from_args(args, env_tol.as_deref()).and_then(|cfg| cmd(&cfg));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
