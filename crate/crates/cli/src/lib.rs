//! `toricdyn`: dynamical degrees, pullback matrices, Cremona degrees, and
//! degree growth of dominant monomial maps, computed through exact
//! intersection theory on toric varieties.

pub mod batch;
pub mod checks;
pub mod errors;
pub mod output;
pub mod svg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use toricdyn_core::dynamics::{
    attach_degree_growth, cremona_degrees, default_growth_lmax, degree_growth_pn,
    dynamical_degrees_with_lmax, pullback_matrix_closed, MonomialMap, P1nPipeline,
};
use toricdyn_core::fan::{common_refinement, fan_p1n, fan_pn, smooth_subdivide};
use toricdyn_core::io;
use toricdyn_core::weight::{
    cup_at_zero, pick_generic_vector, pullback_along_morphism, verify_weight,
};

use batch::{BatchSpec, CheckKind};
use errors::CliError;
use output::{emit, read_file};

#[derive(Parser)]
#[command(name = "toricdyn", version, about = "Monomial map dynamics on toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Pipeline,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Dynamical degrees, entropy, and norm-growth sequences of a map
    Degrees {
        /// Matrix file (JSON rows of integers/strings, or plain text)
        #[arg(long)]
        matrix: PathBuf,
        /// Length of the norm-growth sequences
        #[arg(long, default_value_t = 30)]
        lmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Show entropy in bits in the table view
        #[arg(long)]
        log2: bool,
        /// Also compute the P^n degree-growth table
        #[arg(long)]
        pn_growth: bool,
        /// Iterate count for the degree-growth table (default 8 for n = 2,
        /// 5 for larger ranks)
        #[arg(long)]
        pn_lmax: Option<usize>,
    },
    /// The matrix of f* on A^k((P^1)^n)
    Pullback {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        /// closed form, fan/weight pipeline, or both (cross-checked)
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Degrees of the Cremona involution on P^n via the full pipeline
    Cremona {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree growth deg_k(f^l) on P^n with a power-law fit
    Growth {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        /// Defaults to 8 for n = 2 and 5 for larger ranks
        #[arg(long)]
        lmax: Option<usize>,
        /// Write an SVG plot of the degree sequence
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Emit or validate fan files
    Fan {
        #[command(subcommand)]
        action: FanAction,
    },
    /// Verify, pull back, or cup Minkowski weights
    Weight {
        #[command(subcommand)]
        action: WeightAction,
    },
    /// Run a seeded random-matrix corpus against a check
    Batch {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long)]
        n: usize,
        /// Entries are sampled from [-bound, bound]
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        check: CheckKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FanAction {
    /// Write a standard fan as JSON
    Emit {
        /// p1n for (P^1)^n, pn for P^n
        #[arg(long)]
        kind: StandardKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the fan axioms of a fan file
    Validate { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StandardKind {
    P1n,
    Pn,
}

#[derive(Subcommand)]
enum WeightAction {
    /// Check the balancing relation of a weight
    Verify {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        weight: PathBuf,
    },
    /// Pull a weight back along a monomial map
    Pullback {
        #[arg(long)]
        matrix: PathBuf,
        /// Fan of the weight (the target)
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        weight: PathBuf,
        /// Source fan; defaults to a fresh compatible refinement
        #[arg(long)]
        src: Option<PathBuf>,
        /// Stellar-subdivide the refinement until every cone is smooth
        /// (supported for rank <= 3)
        #[arg(long)]
        smooth: bool,
        /// Also write the source fan used
        #[arg(long)]
        emit_fan: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cup two complementary weights at the zero cone
    Cup {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        w1: PathBuf,
        #[arg(long)]
        w2: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    init_thread_pool();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_stderr_json());
            ExitCode::from(e.exit_code())
        }
    }
}

/// TORICDYN_THREADS caps the rayon pool.
fn init_thread_pool() {
    if let Ok(threads) = std::env::var("TORICDYN_THREADS") {
        if let Ok(t) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build_global();
        }
    }
}

fn load_map(path: &std::path::Path) -> Result<MonomialMap, CliError> {
    let content = read_file(path)?;
    let psi = io::matrix_from_str(&content)?;
    Ok(MonomialMap::new(psi)?)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Degrees {
            matrix,
            lmax,
            out,
            format,
            log2,
            pn_growth,
            pn_lmax,
        } => {
            let map = load_map(&matrix)?;
            let mut report = dynamical_degrees_with_lmax(&map, lmax)?;
            if pn_growth {
                attach_degree_growth(&mut report, &map, pn_lmax)?;
            }
            let content = match format {
                Format::Json => output::degree_report_json(&report, log2).to_string(),
                Format::Table => output::degree_report_table(&report, log2),
            };
            emit(out.as_deref(), &content)
        }
        Command::Pullback {
            matrix,
            k,
            method,
            seed,
            out,
            format,
        } => {
            let map = load_map(&matrix)?;
            let result = match method {
                Method::Closed => pullback_matrix_closed(&map, k)?,
                Method::Pipeline => P1nPipeline::new(&map, seed)?.pullback_matrix(k)?,
                Method::Both => {
                    let closed = pullback_matrix_closed(&map, k)?;
                    let pipeline = P1nPipeline::new(&map, seed)?.pullback_matrix(k)?;
                    if closed.matrix != pipeline.matrix {
                        return Err(CliError::invariant(
                            "ORACLE_MISMATCH",
                            format!("pipeline disagrees with the closed form at k = {k}"),
                            serde_json::json!({
                                "closed": output::pullback_matrix_json(&closed),
                                "pipeline": output::pullback_matrix_json(&pipeline),
                            }),
                        ));
                    }
                    closed
                }
            };
            let content = match format {
                Format::Json => output::pullback_matrix_json(&result).to_string(),
                Format::Table => {
                    let mut s = String::new();
                    for r in 0..result.size() {
                        let row: Vec<String> = (0..result.size())
                            .map(|c| result.matrix.at(r, c).to_string())
                            .collect();
                        s.push_str(&row.join(" "));
                        s.push('\n');
                    }
                    s
                }
            };
            emit(out.as_deref(), &content)
        }
        Command::Cremona { n, format, out } => {
            if n < 1 {
                return Err(CliError::input("INPUT", "n must be at least 1"));
            }
            let degrees = cremona_degrees(n)?;
            let content = match format {
                Format::Table => output::int_strings(&degrees).join(" "),
                Format::Json => serde_json::json!({
                    "n": n,
                    "degrees": output::int_strings(&degrees),
                })
                .to_string(),
            };
            emit(out.as_deref(), &content)
        }
        Command::Growth {
            matrix,
            k,
            lmax,
            plot,
            out,
            format,
        } => {
            let map = load_map(&matrix)?;
            let lmax = lmax.unwrap_or_else(|| default_growth_lmax(map.rank()));
            let fit = degree_growth_pn(&map, k, lmax)?;
            if let Some(path) = plot {
                let svg = svg::growth_plot(&fit.values, fit.k);
                std::fs::write(&path, svg).map_err(|e| {
                    CliError::input("INPUT", format!("cannot write {}: {e}", path.display()))
                })?;
            }
            let content = match format {
                Format::Json => output::growth_fit_json(&fit).to_string(),
                Format::Table => output::growth_fit_table(&fit),
            };
            emit(out.as_deref(), &content)
        }
        Command::Fan { action } => match action {
            FanAction::Emit { kind, n, out } => {
                if n < 1 {
                    return Err(CliError::input("INPUT", "n must be at least 1"));
                }
                let fan = match kind {
                    StandardKind::P1n => fan_p1n(n)?,
                    StandardKind::Pn => fan_pn(n)?,
                };
                emit(out.as_deref(), &io::fan_to_json(&fan)?.to_string())
            }
            FanAction::Validate { file } => {
                let fan = io::fan_from_json(&read_file(&file)?)?;
                let report = fan.validate();
                let json = serde_json::json!({
                    "cones": fan.len(),
                    "complete": fan.is_complete(),
                    "ok": report.ok(),
                    "violations": report.violations,
                });
                if report.ok() {
                    emit(None, &json.to_string())
                } else {
                    Err(CliError::invariant(
                        "FAN_INVALID",
                        "fan axioms violated",
                        json,
                    ))
                }
            }
        },
        Command::Weight { action } => match action {
            WeightAction::Verify { fan, weight } => {
                let fan = Arc::new(io::fan_from_json(&read_file(&fan)?)?);
                let w = io::weight_from_json(&read_file(&weight)?, &fan)?;
                let report = verify_weight(&w)?;
                let json = serde_json::json!({
                    "codim": w.codim(),
                    "ok": report.ok(),
                    "violations": report.violations.iter().map(|v| serde_json::json!({
                        "tau": v.tau.iter()
                            .map(|g| g.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                        "u": v.u.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "sum": v.sum.to_string(),
                    })).collect::<Vec<_>>(),
                });
                if report.ok() {
                    emit(None, &json.to_string())
                } else {
                    Err(CliError::invariant(
                        "UNBALANCED_WEIGHT",
                        "balancing relation violated",
                        json,
                    ))
                }
            }
            WeightAction::Pullback {
                matrix,
                fan,
                weight,
                src,
                smooth,
                emit_fan,
                out,
            } => {
                let psi = io::matrix_from_str(&read_file(&matrix)?)?;
                let dst = Arc::new(io::fan_from_json(&read_file(&fan)?)?);
                let w = io::weight_from_json(&read_file(&weight)?, &dst)?;
                let source = match src {
                    Some(path) => Arc::new(io::fan_from_json(&read_file(&path)?)?),
                    None => {
                        let refined = common_refinement(&dst, &psi)?;
                        Arc::new(if smooth {
                            smooth_subdivide(&refined)?
                        } else {
                            refined
                        })
                    }
                };
                let pulled = pullback_along_morphism(&psi, &source, &w)?;
                if let Some(path) = emit_fan {
                    std::fs::write(&path, io::fan_to_json(&source)?.to_string()).map_err(|e| {
                        CliError::input("INPUT", format!("cannot write {}: {e}", path.display()))
                    })?;
                }
                emit(out.as_deref(), &io::weight_to_json(&pulled)?.to_string())
            }
            WeightAction::Cup { fan, w1, w2, seed } => {
                let fan = Arc::new(io::fan_from_json(&read_file(&fan)?)?);
                let a = io::weight_from_json(&read_file(&w1)?, &fan)?;
                let b = io::weight_from_json(&read_file(&w2)?, &fan)?;
                let v = pick_generic_vector(&[&fan], seed)?;
                let value = cup_at_zero(&a, &b, &v)?;
                emit(
                    None,
                    &serde_json::json!({
                        "value": value.to_string(),
                        "seed": seed,
                        "attempts": v.attempts,
                    })
                    .to_string(),
                )
            }
        },
        Command::Batch {
            count,
            n,
            bound,
            seed,
            check,
            out,
        } => {
            let spec = BatchSpec {
                count,
                n,
                bound,
                seed,
                check,
            };
            let outcome = batch::run_batch(&spec)?;
            let json = outcome.to_json(&spec);
            emit(out.as_deref(), &json.to_string())?;
            if outcome.failed > 0 {
                return Err(CliError::invariant(
                    "BATCH_FAILURE",
                    format!("{} of {} items failed", outcome.failed, spec.count),
                    json,
                ));
            }
            Ok(())
        }
    }
}
