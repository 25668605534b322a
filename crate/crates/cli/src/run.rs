//! Subcommand dispatch. Every command renders into a byte buffer so output
//! is written in one piece.

use std::io::Write;

use ideal_duality::density::{
    counting_report, density_series, mobius_sum_series, q_sum_series, theorem5_sums, SeriesWeight,
};
use ideal_duality::duality::{batch_verify, classical_sweep, BatchSummary, PrimeFunction};
use ideal_duality::numeric::fmt_sig;
use ideal_duality::report::{
    write_counts_csv, write_qsum_csv, write_series_csv, write_smooth_csv, write_theorem5_csv, SIG_DIGITS,
};
use ideal_duality::smooth::{dickman_rho, hildebrand_compare, psi_smooth};
use ideal_duality::PrimeIdealSelector;
use serde::Serialize;

use crate::config::{Command, Format, RunConfig, FULL_RANGE};

pub struct Output {
    pub bytes: Vec<u8>,
    pub violations: bool,
}

type Run<T> = Result<T, String>;

fn lib(e: ideal_duality::Error) -> String {
    e.to_string()
}

fn json(value: &impl Serialize) -> Run<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value).map_err(|e| e.to_string())?;
    out.push(b'\n');
    Ok(out)
}

fn csv(f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Run<Vec<u8>> {
    let mut out = Vec::new();
    f(&mut out).map_err(|e| e.to_string())?;
    Ok(out)
}

fn selector(cfg: &RunConfig) -> Run<PrimeIdealSelector> {
    PrimeIdealSelector::from_spec(&cfg.selector, cfg.ctx, cfg.class).map_err(lib)
}

/// Runs `cfg` on a pool of `cfg.threads` workers.
pub fn execute(cfg: &RunConfig) -> Run<Output> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| e.to_string())?;
    pool.install(|| dispatch(cfg))
}

fn plain(bytes: Vec<u8>) -> Output {
    Output {
        bytes,
        violations: false,
    }
}

fn dispatch(cfg: &RunConfig) -> Run<Output> {
    match cfg.command {
        Command::VerifyDuality => verify(cfg),
        Command::Classical => {
            let f = PrimeFunction::random(cfg.seed, cfg.xmax);
            let s = classical_sweep(cfg.xmax, cfg.kmax, &f).map_err(lib)?;
            let bytes = match cfg.format {
                Format::Json => json(&s)?,
                Format::Csv => csv(|w| {
                    writeln!(w, "n,k,identity,lhs,rhs")?;
                    for v in &s.violations {
                        writeln!(w, "{},{},{},{},{}", v.n, v.k, v.identity, v.lhs, v.rhs)?;
                    }
                    Ok(())
                })?,
            };
            Ok(Output {
                bytes,
                violations: !s.violations.is_empty(),
            })
        }
        Command::Density => {
            let s = density_series(&cfg.ctx, &selector(cfg)?, cfg.weight, cfg.xmax, &cfg.checkpoints).map_err(lib)?;
            Ok(plain(match cfg.format {
                Format::Json => json(&s)?,
                Format::Csv => csv(|w| write_series_csv(w, &s))?,
            }))
        }
        Command::Qsum => {
            let r = q_sum_series(&cfg.ctx, &selector(cfg)?, cfg.k, cfg.xmax, &cfg.checkpoints).map_err(lib)?;
            Ok(plain(match cfg.format {
                Format::Json => json(&r)?,
                Format::Csv => csv(|w| write_qsum_csv(w, &r))?,
            }))
        }
        Command::Counts => {
            let r = counting_report(&cfg.ctx, cfg.xmax, &cfg.checkpoints).map_err(lib)?;
            Ok(plain(match cfg.format {
                Format::Json => json(&r)?,
                Format::Csv => csv(|w| write_counts_csv(w, &r))?,
            }))
        }
        Command::Smooth => {
            let field = cfg.ctx.field();
            let rows = match cfg.y {
                Some(y) => vec![psi_smooth(field, cfg.xmax, y).map_err(lib)?],
                None => hildebrand_compare(field, cfg.xmax, &cfg.beta).map_err(lib)?,
            };
            Ok(plain(match cfg.format {
                Format::Json => json(&rows)?,
                Format::Csv => csv(|w| write_smooth_csv(w, &rows))?,
            }))
        }
        Command::Dickman => {
            #[derive(Serialize)]
            struct Point {
                beta: f64,
                rho: f64,
            }
            let points = cfg
                .beta
                .iter()
                .map(|&beta| dickman_rho(beta).map(|rho| Point { beta, rho }))
                .collect::<Result<Vec<_>, _>>()
                .map_err(lib)?;
            Ok(plain(match cfg.format {
                Format::Json => json(&points)?,
                Format::Csv => csv(|w| {
                    for p in &points {
                        writeln!(w, "{}", fmt_sig(p.rho, SIG_DIGITS))?;
                    }
                    Ok(())
                })?,
            }))
        }
        Command::MobiusSums if cfg.selector == FULL_RANGE => {
            let normalized = match cfg.weight {
                SeriesWeight::MobiusOverNorm => true,
                SeriesWeight::MobiusUnweighted => false,
                w => {
                    return Err(format!(
                        "--selector none takes weight mobius or mobius-count, not {}",
                        w.short_name()
                    ))
                }
            };
            let s = mobius_sum_series(cfg.ctx.field(), cfg.xmax, normalized, &cfg.checkpoints).map_err(lib)?;
            Ok(plain(match cfg.format {
                Format::Json => json(&s)?,
                Format::Csv => csv(|w| write_series_csv(w, &s))?,
            }))
        }
        Command::MobiusSums => {
            let pts = theorem5_sums(&cfg.ctx, &selector(cfg)?, cfg.xmax, &cfg.checkpoints).map_err(lib)?;
            Ok(plain(match cfg.format {
                Format::Json => json(&pts)?,
                Format::Csv => csv(|w| write_theorem5_csv(w, &pts))?,
            }))
        }
    }
}

/// With the class selector and no `--class`, every class is swept and the
/// summaries are merged.
fn verify(cfg: &RunConfig) -> Run<Output> {
    let selectors = if cfg.selector == "class" && cfg.class.is_none() {
        cfg.ctx
            .class_ids()
            .into_iter()
            .map(|c| PrimeIdealSelector::class(cfg.ctx, c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(lib)?
    } else {
        vec![selector(cfg)?]
    };
    let mut summary = BatchSummary::default();
    for sel in &selectors {
        summary.merge(batch_verify(&cfg.ctx, cfg.xmax, cfg.kmax, sel).map_err(lib)?);
    }
    summary.violations.sort();
    let bytes = match cfg.format {
        Format::Json => json(&summary)?,
        Format::Csv => csv(|w| {
            writeln!(w, "norm,ideal,k,lhs,rhs")?;
            for v in &summary.violations {
                writeln!(w, "{},{},{},{},{}", v.norm, v.ideal, v.k, v.lhs, v.rhs)?;
            }
            Ok(())
        })?,
    };
    Ok(Output {
        bytes,
        violations: !summary.violations.is_empty(),
    })
}
