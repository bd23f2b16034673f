use super::output::{emit, write_json, Format, Table};
use super::{RunConfig, EXIT_OK};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::operators::{
    mass_circulant_folded, prolongation, stiffness_circulant_folded, write_dense_csv, Circulant,
};
use crate::spaces::{tabulate_basis, SpaceKind, SpaceSpec};
use crate::symbols::{mass_symbol, stiffness_symbol, two_grid_constant, EConvention};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    Mass,
    Stiffness,
    Prolongation,
    Symbols,
    Basis,
}

/// Schema of the symbol export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolDump {
    pub p: usize,
    pub n: usize,
    pub h: f64,
    pub convention: EConvention,
    pub symbols: SymbolLists,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolLists {
    pub mass: Vec<f64>,
    pub stiffness: Vec<f64>,
    pub rho_per_frequency: Vec<f64>,
}

/// Symbols of the periodic space of degree `p` on `n` elements of `(-1, 1)`
/// and the per-frequency two-grid spectral radii with this grid as the
/// coarse one.
pub fn symbol_dump(p: usize, n: usize, convention: EConvention) -> Result<SymbolDump> {
    let h = 2.0 / n as f64;
    let tg = two_grid_constant(p, n, convention)?;
    Ok(SymbolDump {
        p,
        n,
        h,
        convention,
        symbols: SymbolLists {
            mass: mass_symbol(p, h, n).real_parts(),
            stiffness: stiffness_symbol(p, h, n, convention)?.real_parts(),
            rho_per_frequency: tg.frequencies.iter().map(|f| f.rho).collect(),
        },
        q: tg.q,
    })
}

#[derive(Serialize)]
struct DenseJson<'a> {
    rows: usize,
    cols: usize,
    data: &'a [f64],
}

fn write_dense(m: &DenseMatrix, format: Format, w: &mut dyn std::io::Write) -> Result<()> {
    match format {
        Format::Csv => write_dense_csv(m, w),
        Format::Json => {
            let row_major: Vec<f64> = m.transpose().iter().copied().collect();
            write_json(
                &DenseJson {
                    rows: m.nrows(),
                    cols: m.ncols(),
                    data: &row_major,
                },
                w,
            )
        }
    }
}

fn write_circulant(c: &Circulant, format: Format, w: &mut dyn std::io::Write) -> Result<()> {
    match format {
        Format::Csv => write_dense_csv(&c.to_dense(), w),
        Format::Json => write_json(c, w),
    }
}

fn single_degree(cfg: &RunConfig) -> Result<usize> {
    match cfg.p_range.as_deref() {
        Some([p]) => Ok(*p),
        Some(_) => Err(Error::InvalidArgument(
            "export needs a single degree --p".into(),
        )),
        None => Ok(2),
    }
}

pub fn cmd_export(cfg: &RunConfig) -> Result<i32> {
    let target = cfg
        .target
        .ok_or_else(|| Error::InvalidArgument("export needs --target".into()))?;
    let p = single_degree(cfg)?;
    let n = cfg.n.unwrap_or(8);
    let out = cfg.out.as_deref();
    match target {
        Target::Mass | Target::Stiffness => {
            let (a, b) = cfg.domain.unwrap_or((0.0, 1.0));
            let h = (b - a) / n as f64;
            let c = if target == Target::Mass {
                mass_circulant_folded(p, h, n)?
            } else {
                stiffness_circulant_folded(p, h, n)?
            };
            emit(out, |w| write_circulant(&c, cfg.format, w))?;
        }
        Target::Prolongation => {
            let m = prolongation(p, n)?;
            emit(out, |w| write_dense(&m, cfg.format, w))?;
        }
        Target::Symbols => {
            let dump = symbol_dump(p, n, cfg.convention)?;
            emit(out, |w| match cfg.format {
                Format::Json => write_json(&dump, w),
                Format::Csv => {
                    let mut t = Table::new(&["j", "mass", "stiffness", "rho"]);
                    for j in 0..n {
                        t.push(vec![
                            j.into(),
                            dump.symbols.mass[j].into(),
                            dump.symbols.stiffness[j].into(),
                            dump.symbols.rho_per_frequency[j].into(),
                        ]);
                    }
                    t.write(Format::Csv, w)
                }
            })?;
        }
        Target::Basis => {
            let (a, b) = cfg.domain.unwrap_or((0.0, 1.0));
            let spec = SpaceSpec::new(p, n, a, b, cfg.kind.unwrap_or(SpaceKind::Reduced))?;
            let mut t = Table::new(&["index", "x", "value"]);
            for r in tabulate_basis(&spec, cfg.samples) {
                t.push(vec![r.index.into(), r.x.into(), r.value.into()]);
            }
            emit(out, |w| t.write(cfg.format, w))?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_dump_round_trips() {
        let d = symbol_dump(3, 8, EConvention::Paper).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        let back: SymbolDump = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        assert!(text.contains("\"convention\":\"paper\""));
        assert_eq!(d.symbols.rho_per_frequency.len(), 8);
    }
}
