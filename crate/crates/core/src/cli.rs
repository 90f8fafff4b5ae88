//! Command-line front end.
//!
//! Structured results go to stdout as JSON (CSV for `table`). Exit status
//! is 0 on success, 1 when a verification fails or a repair is impossible,
//! and 2 on usage or domain errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::bounds::{self, Theorem};
use crate::code::{LinearCode, DEFAULT_SEARCH_CAP};
use crate::coords::CoordSet;
use crate::error::{usage, Error, Result};
use crate::field::FieldSpec;
use crate::io;
use crate::regset::{default_size_cap, verify_locality, PhiSearch};
use crate::repair::{plan_repair, ErasurePattern};
use crate::square::{grid_relations_hold, SquareCode};

/// Environment variable overriding the exhaustive-search length cap.
pub const SEARCH_CAP_ENV: &str = "LOCREP_SEARCH_CAP";

#[derive(Debug, Parser)]
#[command(name = "locrep", version, about = "Locally repairable codes: construction, Φ/ρ, distance bounds, repair")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct a code and write it in the code-file format.
    Build {
        #[arg(long)]
        family: String,
        #[arg(long)]
        r: usize,
        #[arg(long = "M")]
        dimension: usize,
        /// Field degree; defaults to r².
        #[arg(long)]
        m: Option<u32>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Exact minimum distance by exhaustive subset search.
    Distance { code: PathBuf },
    /// Φ(0..=x_max), ρ and witness sequences.
    Phi {
        code: PathBuf,
        #[arg(long = "x-max")]
        x_max: usize,
        /// Largest regenerating set considered; defaults to r+1 for codes
        /// declaring locality r, otherwise n.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// ρ = max{x : Φ(x) - x < M/α}.
    Rho {
        code: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Evaluate a closed-form distance bound.
    Bounds {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "M")]
        dimension: usize,
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        /// ρ for the general bound.
        #[arg(long)]
        rho: Option<usize>,
    },
    /// Check locality with repair tolerance, or square-code optimality.
    Verify {
        code: PathBuf,
        #[arg(long, requires = "delta", conflicts_with = "optimal_square")]
        locality: Option<usize>,
        #[arg(long, requires = "locality")]
        delta: Option<usize>,
        #[arg(long = "optimal-square")]
        optimal_square: bool,
    },
    /// Plan local repair of an erasure pattern.
    Repair {
        code: PathBuf,
        /// Comma-separated 1-based coordinates.
        #[arg(long, value_delimiter = ',')]
        erase: Vec<usize>,
        #[arg(long)]
        cap: usize,
    },
    /// Square vs disjoint-repair bound for M = r+1 ..= r², as CSV.
    Table {
        #[arg(long)]
        r: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Runs one invocation, reading the search cap from the environment.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cap = match std::env::var(SEARCH_CAP_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(c) => c,
            Err(_) => {
                return error_outcome(Error::Usage(format!(
                    "{SEARCH_CAP_ENV} must be a nonnegative integer, got {v:?}"
                )))
            }
        },
        Err(_) => DEFAULT_SEARCH_CAP,
    };
    run_with_search_cap(argv, cap)
}

/// Runs one invocation with an explicit search cap.
pub fn run_with_search_cap<I, T>(argv: I, search_cap: usize) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let status = if e.use_stderr() { 2 } else { 0 };
            return if status == 0 {
                Outcome::ok(rendered)
            } else {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    match dispatch(cli.command, search_cap) {
        Ok(out) => out,
        Err(e) => error_outcome(e),
    }
}

fn error_outcome(e: Error) -> Outcome {
    let status = match e {
        Error::Unrepairable { .. } | Error::Invariant(_) => 1,
        _ => 2,
    };
    Outcome {
        status,
        stdout: String::new(),
        stderr: format!("locrep: {e}\n"),
    }
}

fn line(v: serde_json::Value) -> String {
    format!("{v}\n")
}

fn check_search_cap(code: &LinearCode, cap: usize) -> Result<()> {
    if code.len() > cap {
        return Err(Error::TooLarge {
            what: "code length for exhaustive search",
            actual: code.len(),
            limit: cap,
        });
    }
    Ok(())
}

fn dispatch(command: Command, search_cap: usize) -> Result<Outcome> {
    match command {
        Command::Build {
            family,
            r,
            dimension,
            m,
            output,
        } => {
            if family != "square" {
                return usage(format!("unknown code family {family:?}; supported: square"));
            }
            let field = m.map(FieldSpec::with_degree).transpose()?;
            let sc = SquareCode::build(r, dimension, field)?;
            let text = io::code_to_json(sc.code());
            match output {
                Some(path) => {
                    std::fs::write(path, text)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Distance { code } => {
            let code = io::read_code(code)?;
            let d = code.min_distance_capped(search_cap)?;
            Ok(Outcome::ok(line(json!({ "d": d }))))
        }
        Command::Phi { code, x_max, cap } => {
            let code = io::read_code(code)?;
            check_search_cap(&code, search_cap)?;
            let cap = cap.unwrap_or_else(|| default_size_cap(&code));
            let profile = PhiSearch::with_cap(&code, cap).profile(x_max)?;
            Ok(Outcome::ok(io::profile_to_json(&profile)))
        }
        Command::Rho { code, cap } => {
            let code = io::read_code(code)?;
            check_search_cap(&code, search_cap)?;
            let cap = cap.unwrap_or_else(|| default_size_cap(&code));
            let profile = PhiSearch::with_cap(&code, cap).profile(0)?;
            Ok(Outcome::ok(line(json!({ "rho": profile.rho, "size_cap": cap }))))
        }
        Command::Bounds {
            theorem,
            n,
            dimension,
            alpha,
            r,
            delta,
            rho,
        } => {
            let theorem: Theorem = theorem.parse()?;
            let need = |v: Option<usize>, flag: &str| {
                v.ok_or_else(|| {
                    Error::Usage(format!("theorem {} needs --{flag}", theorem.name()))
                })
            };
            let report = match theorem {
                Theorem::General => bounds::bound_general(n, dimension, alpha, need(rho, "rho")?)?,
                Theorem::LocalityR => bounds::bound_locality_r(n, dimension, alpha, need(r, "r")?)?,
                Theorem::Lrc => {
                    bounds::bound_lrc(n, dimension, alpha, need(r, "r")?, need(delta, "delta")?)?
                }
                Theorem::Rdc => {
                    if alpha != 1 {
                        return usage("the rdc bound is for scalar codes (alpha = 1)");
                    }
                    bounds::bound_rdc(n, dimension, need(r, "r")?, need(delta, "delta")?)?
                }
                Theorem::Square => bounds::bound_square(n, dimension, need(r, "r")?)?,
            };
            Ok(Outcome::ok(line(serde_json::to_value(report)?)))
        }
        Command::Verify {
            code,
            locality,
            delta,
            optimal_square,
        } => {
            let code = io::read_code(code)?;
            let (holds, payload) = if optimal_square {
                let r = square_side(&code)?;
                if !grid_relations_hold(&code, r) {
                    return usage("code does not satisfy the square-grid relations");
                }
                let d = code.min_distance_capped(search_cap)?;
                let bound = bounds::bound_square(code.len(), code.dimension(), r)?;
                let holds = d as i64 == bound.value;
                (
                    holds,
                    json!({ "d": d, "designed": bound.value, "s": bound.intermediate.s, "optimal": holds }),
                )
            } else {
                let (Some(r), Some(delta)) = (locality, delta) else {
                    return usage("verify needs --locality R --delta D or --optimal-square");
                };
                let holds = verify_locality(&code, r, delta)?;
                (holds, json!({ "locality": r, "delta": delta, "holds": holds }))
            };
            Ok(Outcome {
                status: if holds { 0 } else { 1 },
                stdout: line(payload),
                stderr: String::new(),
            })
        }
        Command::Repair { code, erase, cap } => {
            let code = io::read_code(code)?;
            let failed = CoordSet::from_labels(&erase, code.len())?;
            let pattern = ErasurePattern::new(failed, code.len())?;
            let plan = plan_repair(&code, &pattern, cap)?;
            Ok(Outcome::ok(io::plan_to_json(&plan)))
        }
        Command::Table { r, output } => {
            let csv = bounds::table_csv(&bounds::compare_table(r)?);
            match output {
                Some(path) => {
                    std::fs::write(path, csv)?;
                    Ok(Outcome::ok(String::new()))
                }
                None => Ok(Outcome::ok(csv)),
            }
        }
    }
}

/// `r` for a square code: from metadata when present, else from `n = (r+1)²`.
fn square_side(code: &LinearCode) -> Result<usize> {
    if let Some(meta) = code.metadata() {
        if meta.family == "square" {
            return Ok(meta.r);
        }
    }
    let n = code.len();
    let side = (1..=n).find(|s| s * s >= n).unwrap_or(0);
    if side * side != n || side < 3 {
        return usage(format!("length {n} is not (r+1)^2 for any r >= 2"));
    }
    Ok(side - 1)
}
