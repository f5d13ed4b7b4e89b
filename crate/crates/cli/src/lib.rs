//! The `starconv` command surface.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error, 3 internal
//! invariant violation. Output is compact JSON unless `--text` is given.

pub mod dsl;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use starconv::euler::{
    default_directions, direction_sweep, euler_convolve_at, invertibility_check_cf, CfInvertibility,
    ConstructibleFunction,
};
use starconv::interval::{convolve_generators, TableFn};
use starconv::microlocal::{b_necessary_check, b_transform, cc, ss, NecessaryCheck};
use starconv::oracle::validate_table_with;
use starconv::{Error, Execution, Invertibility, NonInvertibleReason, Rat, Sheaf1};
use starconv_geom::region::RegionFile;
use starconv_geom::{Covector, Point, Region};

use crate::dsl::{parse, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "starconv", version, about = "Convolution calculus for constructible sheaves and functions")]
struct Cli {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression to canonical form.
    Eval {
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// Invert an object on the line.
    Invert {
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// Decide invertibility and run the B-transform test alongside.
    Check {
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// The B-transform.
    Btrans {
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// The characteristic cycle.
    Cc {
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// The singular support.
    Ss {
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// Cohomology of the stalk at a point.
    Stalk {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Compare the generator table with the stalk and section oracles.
    Table {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Constructible functions on ℚⁿ read from region files.
    Region {
        #[command(subcommand)]
        command: RegionCommand,
    },
}

#[derive(Debug, Subcommand)]
enum RegionCommand {
    /// Decide convexity, hence invertibility of the indicator.
    Check { file: PathBuf },
    /// Euler convolution of two functions at one point.
    Conv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Push forward along many directions.
    Sweep {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_coeff: i64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl From<starconv_geom::GeomError> for CliError {
    fn from(e: starconv_geom::GeomError) -> Self {
        CliError::Core(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Input(_) => EXIT_INPUT,
            CliError::Core(Error::NotInvertible(_)) => EXIT_NEGATIVE,
            CliError::Core(Error::InternalInvariantViolation(_)) => EXIT_INTERNAL,
            CliError::Core(_) => EXIT_INPUT,
        }
    }
}

/// What a command produced: an exit code and both renderings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub json: String,
    pub text: String,
}

impl Outcome {
    fn new<T: Serialize>(code: i32, value: &T, text: impl Into<String>) -> Outcome {
        Outcome { code, json: to_json(value), text: text.into() }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable output")
}

/// A yes/no answer with a machine-readable reason and, when negative, a
/// finite witness.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict<C: Serialize> {
    pub verdict: bool,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<C>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `(F ⋆ G)_0 = 0` for every `G`.
    Point(Rat),
    Interval(String),
    Intervals(Vec<String>),
}

fn witness(f: &Sheaf1, reason: NonInvertibleReason) -> Witness {
    let intervals = || f.generators().iter().map(|g| g.interval.to_string()).collect::<Vec<_>>();
    match reason {
        NonInvertibleReason::Zero => Witness::Point(Rat::ZERO),
        NonInvertibleReason::MultipleGenerators => Witness::Intervals(intervals()),
        NonInvertibleReason::Multiplicity | NonInvertibleReason::SemiOpen => Witness::Interval(intervals().remove(0)),
    }
}

#[derive(Serialize)]
struct InverseCertificate<'a> {
    inverse: &'a Sheaf1,
}

#[derive(Serialize)]
struct CheckCertificate {
    necessary_check: NecessaryCheck,
    agreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

#[derive(Serialize)]
struct StalkReport {
    at: Rat,
    stalk: starconv::GradedDims,
}

#[derive(Serialize)]
struct ConvexCertificate {
    d: usize,
    hull: Vec<Point>,
    inverse: RegionFile,
}

#[derive(Serialize)]
struct NonconvexCertificate {
    x: Point,
    y: Point,
    outside: Point,
    direction: Vec<i64>,
    t: Rat,
    slice_chi: i64,
}

#[derive(Serialize)]
struct ConvReport {
    at: Point,
    value: i64,
}

#[derive(Serialize)]
struct SweepRecord {
    direction: Vec<i64>,
    verdict: &'static str,
    cf1: starconv::Cf1,
}

fn ints(xi: &Covector) -> Vec<i64> {
    xi.coeffs().iter().map(|c| i64::try_from(c.numer()).expect("small primitive covector")).collect()
}

fn parse_point(s: &str) -> Result<Point, CliError> {
    let coords = s
        .split(',')
        .map(|part| {
            let t = part.trim();
            dsl::parse_rational(t).map_err(|e| CliError::Input(format!("bad coordinate '{t}' in --at: {}", e.message)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Point(coords))
}

fn read_region(path: &Path) -> Result<Region, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Region::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Runs commands against a generator table, so that a deliberately broken
/// table can exercise the internal-error path.
#[derive(Clone, Copy, Debug)]
pub struct Engine {
    table: TableFn,
    exec: Execution,
}

impl Default for Engine {
    fn default() -> Self {
        Engine { table: convolve_generators, exec: Execution::default() }
    }
}

impl Engine {
    pub fn with_table(table: TableFn) -> Engine {
        Engine { table, ..Engine::default() }
    }

    pub fn with_execution(self, exec: Execution) -> Engine {
        Engine { exec, ..self }
    }

    pub fn eval(&self, src: &str) -> Result<Sheaf1, CliError> {
        Ok(parse(src)?.eval(self.table)?)
    }

    /// Parses `args` (program name first), runs the command, and writes the
    /// result to `out` and diagnostics to `err`. Returns the exit code.
    pub fn run<I, T>(&self, args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = match Cli::try_parse_from(args) {
            Ok(cli) => cli,
            Err(e) => {
                let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
                let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
                let _ = write!(sink, "{}", e.render());
                return code;
            }
        };
        match self.execute(&cli.command) {
            Ok(o) => {
                let _ = writeln!(out, "{}", if cli.text { &o.text } else { &o.json });
                o.code
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                e.exit_code()
            }
        }
    }

    fn execute(&self, command: &Command) -> Result<Outcome, CliError> {
        match command {
            Command::Eval { expr } => {
                let f = self.eval(expr)?;
                Ok(Outcome::new(EXIT_OK, &f, f.to_string()))
            }
            Command::Invert { expr } => self.invert(&self.eval(expr)?),
            Command::Check { expr } => self.check(&self.eval(expr)?),
            Command::Btrans { expr } => {
                let b = b_transform(&self.eval(expr)?);
                Ok(Outcome::new(EXIT_OK, &b, b.to_string()))
            }
            Command::Cc { expr } => {
                let c = cc(&self.eval(expr)?);
                let text = format!("zero {} plus {} minus {}", c.zero_weight, c.plus, c.minus);
                Ok(Outcome::new(EXIT_OK, &c, text))
            }
            Command::Ss { expr } => {
                let s = ss(&self.eval(expr)?);
                let zero: Vec<String> = s.zero_section.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
                let rays: Vec<String> = s.rays.iter().map(|(x, sg)| format!("({x},{sg})")).collect();
                let text = format!("zero section {} rays {}", zero.join(" ∪ "), rays.join(" "));
                Ok(Outcome::new(EXIT_OK, &s, text))
            }
            Command::Stalk { expr, at } => {
                let t =
                    dsl::parse_rational(at.trim()).map_err(|e| CliError::Input(format!("bad --at: {}", e.message)))?;
                let stalk = self.eval(expr)?.stalk(t);
                let text = stalk.to_string();
                Ok(Outcome::new(EXIT_OK, &StalkReport { at: t, stalk }, text))
            }
            Command::Table { trials, seed } => {
                let report = validate_table_with(*trials, *seed, self.table, self.exec)?;
                let code = if report.failures.is_empty() { EXIT_OK } else { EXIT_INTERNAL };
                let mut text =
                    format!("{} trials, seed {}, {} discrepancies", report.trials, report.seed, report.failures.len());
                for f in &report.failures {
                    text.push_str(&format!(
                        "\ntrial {} ({}) {}: {:?} at {}: table {} oracle {}",
                        f.trial, f.pair, f.generators, f.probe, f.at, f.table, f.oracle
                    ));
                }
                Ok(Outcome::new(code, &report, text))
            }
            Command::Region { command } => self.region(command),
        }
    }

    fn invert(&self, f: &Sheaf1) -> Result<Outcome, CliError> {
        match f.is_invertible() {
            Invertibility::Invertible(_) => {
                let inv = f.inverse_with(self.table)?;
                let v = Verdict {
                    verdict: true,
                    reason: "invertible".into(),
                    certificate: Some(InverseCertificate { inverse: &inv }),
                };
                Ok(Outcome::new(EXIT_OK, &v, inv.to_string()))
            }
            Invertibility::NotInvertible(reason) => {
                let v =
                    Verdict { verdict: false, reason: reason.as_str().into(), certificate: Some(witness(f, reason)) };
                Ok(Outcome::new(EXIT_NEGATIVE, &v, format!("not invertible: {reason}")))
            }
        }
    }

    // Exit 3 only when an invertible object fails the self-check or the
    // necessary condition: the condition is not sufficient, so a pass on a
    // non-invertible object is no disagreement.
    fn check(&self, f: &Sheaf1) -> Result<Outcome, CliError> {
        let nc = b_necessary_check(f);
        let (invertible, reason, wit) = match f.is_invertible() {
            Invertibility::Invertible(_) => (true, "invertible".to_string(), None),
            Invertibility::NotInvertible(r) => (false, r.as_str().to_string(), Some(witness(f, r))),
        };
        if invertible {
            f.inverse_with(self.table)?;
        }
        let agreement = invertible == nc.pass;
        let code = match (invertible, nc.pass) {
            (true, true) => EXIT_OK,
            (true, false) => EXIT_INTERNAL,
            (false, _) => EXIT_NEGATIVE,
        };
        let text = format!(
            "{} ({reason}); necessary condition {}",
            if invertible { "invertible" } else { "not invertible" },
            if nc.pass { "passes" } else { "fails" }
        );
        let cert = CheckCertificate { necessary_check: nc, agreement, witness: wit };
        Ok(Outcome::new(code, &Verdict { verdict: invertible, reason, certificate: Some(cert) }, text))
    }

    fn region(&self, command: &RegionCommand) -> Result<Outcome, CliError> {
        match command {
            RegionCommand::Check { file } => {
                let r = read_region(file)?;
                match invertibility_check_cf(&r)? {
                    CfInvertibility::Invertible { inverse, hull, d } => {
                        let cert = ConvexCertificate {
                            d,
                            hull: hull.vertices().to_vec(),
                            inverse: inverse.region().to_file(),
                        };
                        let v = Verdict { verdict: true, reason: "convex".into(), certificate: Some(cert) };
                        Ok(Outcome::new(
                            EXIT_OK,
                            &v,
                            format!("convex, d = {d}; inverse is (-1)^{d} times the open reflected hull"),
                        ))
                    }
                    CfInvertibility::NotInvertible { x, y, outside, direction, t, slice_chi } => {
                        let text = format!(
                            "not convex: {outside} lies between {x} and {y}; slice {direction} = {t} has χ_c {slice_chi}"
                        );
                        let cert = NonconvexCertificate { x, y, outside, direction: ints(&direction), t, slice_chi };
                        let v = Verdict { verdict: false, reason: "nonconvex".into(), certificate: Some(cert) };
                        Ok(Outcome::new(EXIT_NEGATIVE, &v, text))
                    }
                }
            }
            RegionCommand::Conv { a, b, at } => {
                let f: ConstructibleFunction = read_region(a)?.into();
                let g: ConstructibleFunction = read_region(b)?.into();
                let t = parse_point(at)?;
                let value = euler_convolve_at(&f, &g, &t)?;
                Ok(Outcome::new(EXIT_OK, &ConvReport { at: t, value }, value.to_string()))
            }
            RegionCommand::Sweep { file, max_coeff } => {
                if *max_coeff < 1 {
                    return Err(CliError::Input("--max-coeff must be at least 1".into()));
                }
                let r = read_region(file)?;
                let entries = direction_sweep(&r, &default_directions(&r, *max_coeff), self.exec)?;
                let records: Vec<SweepRecord> = entries
                    .iter()
                    .map(|e| SweepRecord {
                        direction: ints(&e.direction),
                        verdict: if e.pass { "pass" } else { "fail" },
                        cf1: e.cf1.clone(),
                    })
                    .collect();
                let fails = records.iter().filter(|r| r.verdict == "fail").count();
                let mut text = format!("{} directions, {fails} failing", records.len());
                for r in records.iter().filter(|r| r.verdict == "fail") {
                    text.push_str(&format!("\n{:?} {}", r.direction, r.cf1));
                }
                let code = if fails == 0 { EXIT_OK } else { EXIT_NEGATIVE };
                Ok(Outcome::new(code, &records, text))
            }
        }
    }
}

/// Canonical expression for a generator list, for scripting round trips.
pub fn serialize_expr(f: &Sheaf1) -> String {
    dsl::Expr::of_sheaf(f).to_string()
}
