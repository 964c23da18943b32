//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed check or non-knot input, 2 usage or input
//! error. Errors go to stderr as a single JSON object.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, GridError};
use crate::grid::GridDiagram;
use crate::homology::HomologyOptions;
use crate::invariants::{divide_v_factor, full_report_with, KnotReport};
use crate::oracle::{dense_oracle, OracleResult, ORACLE_MAX_N};
use crate::{library, moves, verify_d_squared};

/// Largest grid the move check lets stabilizations reach.
const MOVE_CAP_N: usize = 9;

#[derive(Debug, Parser)]
#[command(
    name = "gridfloer",
    version,
    about = "Knot Floer homology from grid diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute homology and knot invariants for a grid.
    Compute {
        #[command(flatten)]
        input: GridInput,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        workers: Workers,
    },
    /// Run consistency checks on a grid.
    Verify {
        #[command(flatten)]
        input: GridInput,
        /// Comma-separated subset of: dsq, symmetry, moves, oracle, vfactor.
        #[arg(long, value_delimiter = ',', required = true)]
        checks: Vec<Check>,
        /// Number of random move sequences for the `moves` check.
        #[arg(long, default_value_t = 20)]
        moves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        workers: Workers,
    },
    /// List the built-in grids, or print one.
    Library { name: Option<String> },
    /// Run the dense full-complex baseline (grids up to 6x6).
    Oracle {
        #[command(flatten)]
        input: GridInput,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GridInput {
    /// Grid file in the text grid format.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    /// Name of a built-in grid.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct Workers {
    /// Worker threads (defaults to available parallelism).
    #[arg(long, env = "GRIDFLOER_WORKERS")]
    pub workers: Option<usize>,
}

impl Workers {
    fn options(&self) -> HomologyOptions {
        match self.workers {
            Some(k) => HomologyOptions::with_workers(k),
            None => HomologyOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Dsq,
    Symmetry,
    Moves,
    Oracle,
    Vfactor,
}

/// Outcome of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: Check,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

enum Failure {
    Usage(String),
    Input(GridError),
    Pipeline(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Grid(g) => Failure::Input(g),
            other => Failure::Pipeline(other),
        }
    }
}

impl From<GridError> for Failure {
    fn from(e: GridError) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "{}", json!({"error": "usage", "message": first}));
            return 2;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(failure) => {
            let (kind, message, code) = match failure {
                Failure::Usage(m) => ("usage".to_string(), m, 2),
                Failure::Input(e) => (input_kind(&e).to_string(), e.to_string(), 2),
                Failure::Io(e) => ("io".to_string(), e.to_string(), 2),
                Failure::Pipeline(e) => (pipeline_kind(&e).to_string(), e.to_string(), 1),
            };
            let _ = writeln!(err, "{}", json!({"error": kind, "message": message}));
            code
        }
    }
}

fn input_kind(e: &GridError) -> &'static str {
    match e {
        GridError::Parse { .. } => "parse",
        GridError::UnknownName(_) => "unknown_name",
        GridError::DegenerateSize(_) => "degenerate_size",
        GridError::NotAPermutation { .. } => "not_a_permutation",
        GridError::OverlappingMarker { .. } => "overlapping_marker",
        GridError::NotCommutable { .. } => "not_commutable",
        GridError::NotDestabilizable { .. } => "not_destabilizable",
    }
}

fn pipeline_kind(e: &Error) -> &'static str {
    match e {
        Error::Grid(g) => input_kind(g),
        Error::NotAKnot { .. } => "not_a_knot",
        Error::TooLarge { .. } => "too_large",
        Error::BucketGradingMismatch { .. } => "bucket_grading_mismatch",
        Error::NotDivisible { .. } => "not_divisible",
        Error::NormalizationFailed { .. } => "normalization_failed",
        Error::EmptyHomology => "empty_homology",
    }
}

fn load(input: &GridInput) -> Result<GridDiagram, Failure> {
    match (&input.grid, &input.builtin) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            Ok(GridDiagram::parse(&text)?)
        }
        (None, Some(name)) => Ok(library::builtin(name)?),
        _ => Err(Failure::Usage(
            "exactly one of --grid or --builtin is required".into(),
        )),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Compute {
            input,
            format,
            workers,
        } => {
            let g = load(&input)?;
            let report = full_report_with(&g, &workers.options())?;
            match format {
                Format::Json => writeln!(out, "{}", report.to_json())?,
                Format::Text => write!(out, "{}", report_text(&report))?,
            }
            Ok(0)
        }
        Command::Verify {
            input,
            checks,
            moves,
            seed,
            format,
            workers,
        } => {
            let g = load(&input)?;
            let results = run_checks(&g, &checks, moves, seed, &workers.options())?;
            let failed = results.iter().any(|r| r.status == CheckStatus::Fail);
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"grid": g, "seed": seed, "checks": results, "ok": !failed})
                )?,
                Format::Text => {
                    writeln!(out, "seed {seed}")?;
                    for r in &results {
                        let status = match r.status {
                            CheckStatus::Pass => "PASS",
                            CheckStatus::Fail => "FAIL",
                            CheckStatus::Skip => "SKIP",
                        };
                        writeln!(out, "{:<9} {status}  {}", check_name(r.name), r.detail)?;
                    }
                }
            }
            Ok(if failed { 1 } else { 0 })
        }
        Command::Library { name } => {
            match name {
                None => {
                    for name in library::names() {
                        let g = library::builtin(name)?;
                        writeln!(
                            out,
                            "{name:<10} n={:<2} {}",
                            g.size(),
                            library::description(name).unwrap_or_default()
                        )?;
                    }
                }
                Some(name) => write!(out, "{}", library::builtin(&name)?.serialize())?,
            }
            Ok(0)
        }
        Command::Oracle { input, format } => {
            let g = load(&input)?;
            if g.size() > ORACLE_MAX_N {
                return Err(Failure::Usage(format!(
                    "oracle refuses grids larger than {ORACLE_MAX_N} (got {})",
                    g.size()
                )));
            }
            let result = dense_oracle(&g)?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&result).unwrap())?,
                Format::Text => write!(out, "{}", oracle_text(&result))?,
            }
            Ok(0)
        }
    }
}

fn check_name(c: Check) -> &'static str {
    match c {
        Check::Dsq => "dsq",
        Check::Symmetry => "symmetry",
        Check::Moves => "moves",
        Check::Oracle => "oracle",
        Check::Vfactor => "vfactor",
    }
}

/// Runs the requested checks in order, stopping after the first failure.
pub fn run_checks(
    g: &GridDiagram,
    checks: &[Check],
    move_sequences: usize,
    seed: u64,
    opts: &HomologyOptions,
) -> Result<Vec<CheckResult>, Error> {
    let components = g.component_count();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    let mut report: Option<KnotReport> = None;
    let mut results = Vec::new();
    for &check in checks {
        let (status, detail) = match check {
            Check::Dsq => {
                let r = verify_d_squared(g)?;
                if r.ok() {
                    (
                        CheckStatus::Pass,
                        format!("{} states, {} arrows, d^2 = 0", r.states, r.arrows),
                    )
                } else {
                    (CheckStatus::Fail, format!("{:?}", r))
                }
            }
            Check::Vfactor => {
                let gh = crate::homology::graded_homology_with(g, opts)?;
                match divide_v_factor(&gh, g.size()) {
                    Ok(h) => (
                        CheckStatus::Pass,
                        format!(
                            "GH total {} = {} x 2^{}",
                            gh.total(),
                            h.total(),
                            g.size() - 1
                        ),
                    ),
                    Err(e) => (CheckStatus::Fail, e.to_string()),
                }
            }
            Check::Symmetry => {
                let r = cached_report(&mut report, g, opts)?;
                if r.symmetric && r.vanishing_ok {
                    (
                        CheckStatus::Pass,
                        format!("HFK symmetric, supported in |a| <= {}", r.genus),
                    )
                } else {
                    (
                        CheckStatus::Fail,
                        format!("symmetric={} vanishing={}", r.symmetric, r.vanishing_ok),
                    )
                }
            }
            Check::Oracle => {
                if g.size() > ORACLE_MAX_N {
                    (
                        CheckStatus::Skip,
                        format!("oracle limited to n <= {ORACLE_MAX_N}"),
                    )
                } else {
                    let r = cached_report(&mut report, g, opts)?.clone();
                    let o = dense_oracle(g)?;
                    let agree = o.gh_total == r.gh_tilde.total()
                        && o.hfk_by_alexander == r.hfk.alexander_totals()
                        && o.alexander == r.alexander
                        && o.genus == r.genus
                        && o.fibered == r.fibered;
                    let detail = format!(
                        "oracle GH {} HFK {} genus {} vs pipeline GH {} HFK {} genus {}",
                        o.gh_total,
                        o.hfk_total,
                        o.genus,
                        r.gh_tilde.total(),
                        r.hfk.total(),
                        r.genus
                    );
                    (
                        if agree {
                            CheckStatus::Pass
                        } else {
                            CheckStatus::Fail
                        },
                        detail,
                    )
                }
            }
            Check::Moves => {
                let base = cached_report(&mut report, g, opts)?.hfk.clone();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut failure = None;
                for i in 0..move_sequences {
                    let cap = MOVE_CAP_N.max(g.size());
                    let (moved, record) = moves::random_walk(g, &mut rng, 5, cap);
                    let hfk = full_report_with(&moved, opts)?.hfk;
                    if hfk != base {
                        failure = Some(format!("sequence {i} {record:?} gives HFK {hfk}"));
                        break;
                    }
                }
                match failure {
                    None => (
                        CheckStatus::Pass,
                        format!("{move_sequences} sequences, HFK unchanged"),
                    ),
                    Some(d) => (CheckStatus::Fail, d),
                }
            }
        };
        let stop = status == CheckStatus::Fail;
        results.push(CheckResult {
            name: check,
            status,
            detail,
        });
        if stop {
            break;
        }
    }
    Ok(results)
}

fn cached_report<'a>(
    slot: &'a mut Option<KnotReport>,
    g: &GridDiagram,
    opts: &HomologyOptions,
) -> Result<&'a KnotReport, Error> {
    if slot.is_none() {
        *slot = Some(full_report_with(g, opts)?);
    }
    Ok(slot.as_ref().unwrap())
}

/// Human-readable report.
pub fn report_text(r: &KnotReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "grid n={}  O={:?}  X={:?}",
        r.grid.size(),
        r.grid.o(),
        r.grid.x()
    );
    let _ = writeln!(s, "GH~ total {}", r.gh_tilde.total());
    let _ = writeln!(s, "HFK:");
    let _ = writeln!(s, "  {:>4} {:>4} {:>5}", "m", "a", "dim");
    for (b, d) in r.hfk.iter().rev() {
        let _ = writeln!(s, "  {:>4} {:>4} {:>5}", b.m, b.a, d);
    }
    let _ = writeln!(s, "HFK total {}", r.hfk.total());
    let _ = writeln!(s, "Alexander polynomial {}", r.alexander);
    let _ = writeln!(s, "genus {}", r.genus);
    let _ = writeln!(s, "fibered {}", r.fibered);
    let _ = writeln!(s, "symmetric {}", r.symmetric);
    let _ = writeln!(s, "time {} ms", r.timing.total_ms);
    s
}

fn oracle_text(o: &OracleResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dense oracle, n={}, {} states", o.n, o.states);
    let _ = writeln!(s, "GH~ total {}", o.gh_total);
    for (a, d) in o.hfk_by_alexander.iter().rev() {
        let _ = writeln!(s, "  HFK(a={a}) = {d}");
    }
    let _ = writeln!(s, "HFK total {}", o.hfk_total);
    let _ = writeln!(s, "Alexander polynomial {}", o.alexander);
    let _ = writeln!(s, "genus {}", o.genus);
    let _ = writeln!(s, "fibered {}", o.fibered);
    s
}
