//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification came out false, 2 usage or
//! precondition error, 3 resource cap hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::exactalg::Scalar;
use crate::ffcount::{self, CountOptions, FfError, FqElem, FqOrbit};
use crate::hlvkernel::hlv_hh;
use crate::macdonald::MacdonaldTable;
use crate::partitions::MultiPartition;
use crate::series::{self, OrbitSpec, SeriesError, SurfaceSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Environment variable naming a directory for Macdonald table dumps.
pub const CACHE_ENV: &str = "CHARSTACK_CACHE_DIR";
const CACHE_FILE: &str = "macdonald.txt";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "charstack", version, about = "Exact E-series and mixed series of character stacks")]
struct Cli {
    /// Output format [default: json]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML file with defaults for format, iteration_cap and cache_dir
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for Macdonald table dumps (overrides the environment)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print HH_{mu,m}(z,w)
    Hlv {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        m: u32,
    },
    /// E-series of a character stack
    Eseries(SeriesArgs),
    /// Mixed series (the conjectural deformation of the E-series)
    Mixed(SeriesArgs),
    /// Check the r = 2 counterexample for the central orbit e^{pi i d/n}
    VerifyCounterexample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: i64,
    },
    /// Brute-force groupoid count over F_q
    Count(CountArgs),
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    #[arg(long, conflicts_with = "orientable", requires = "r")]
    nonorientable: bool,
    #[arg(long, requires = "g")]
    orientable: bool,
    /// Number of cross-caps
    #[arg(long)]
    r: Option<u32>,
    /// Genus
    #[arg(long)]
    g: Option<u32>,
    /// Number of punctures [default: number of components of mu, or 1]
    #[arg(long)]
    k: Option<usize>,
}

impl SurfaceArgs {
    fn surface(&self, k: usize) -> Result<SurfaceSpec, SeriesError> {
        let k = self.k.unwrap_or(k);
        match (self.nonorientable, self.orientable, self.r, self.g) {
            (_, true, _, Some(g)) => SurfaceSpec::orientable(g, k),
            (_, false, Some(r), None) => SurfaceSpec::nonorientable(r, k),
            _ => Err(SeriesError::Surface(
                "give --nonorientable --r R or --orientable --g G".into(),
            )),
        }
    }
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Multipartition, components separated by '|', e.g. "(2,1)|(1,1,1)"
    #[arg(long)]
    mu: String,
    /// Explicit orbit, repeated once per puncture: "angle:mult,..." with
    /// rational angles in [0,1), e.g. "1/4:1,3/4:1"
    #[arg(long = "orbit")]
    orbits: Vec<String>,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u32,
    /// Central orbit zeta*I [default: an element of order n]
    #[arg(long, allow_hyphen_values = true, conflicts_with = "eigenvalues")]
    zeta: Option<i64>,
    /// Split orbit "value:mult,...", e.g. "1:1,2:1"
    #[arg(long)]
    eigenvalues: Option<String>,
    /// Cap on estimated matrix products [default: 1e9]
    #[arg(long)]
    cap: Option<u64>,
    /// Skip the comparison with the E-series formula
    #[arg(long)]
    no_formula: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    format: Option<Format>,
    iteration_cap: Option<u64>,
    cache_dir: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Cap(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<FfError> for Failure {
    fn from(e: FfError) -> Self {
        match e {
            FfError::CostCap { .. } | FfError::TooLarge { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Runs the CLI with process stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI writing to the given streams; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Cap(m)) => {
            let _ = writeln!(err, "refused: {m}");
            EXIT_CAP
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "io error: {e}");
            EXIT_USAGE
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<FileConfig, Failure> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| usage(format!("bad config {}: {e}", path.display())))
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let file = load_config(cli.config.as_deref())?;
    let format = cli.format.or(file.format).unwrap_or(Format::Json);
    let cache_dir = cli
        .cache_dir
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .or(file.cache_dir);
    if let Some(dir) = &cache_dir {
        let path = dir.join(CACHE_FILE);
        if let Ok(text) = std::fs::read_to_string(&path) {
            MacdonaldTable::global()
                .restore(&text)
                .map_err(|e| usage(format!("bad cache {}: {e}", path.display())))?;
        }
    }

    let code = match cli.command {
        Command::Hlv { mu, m } => cmd_hlv(&mu, m, format, out)?,
        Command::Eseries(a) => cmd_series(false, &a, format, out)?,
        Command::Mixed(a) => cmd_series(true, &a, format, out)?,
        Command::VerifyCounterexample { n, d } => cmd_verify(n, d, format, out)?,
        Command::Count(a) => cmd_count(&a, file.iteration_cap, format, out)?,
    };

    if let Some(dir) = &cache_dir {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(CACHE_FILE), MacdonaldTable::global().dump())?;
    }
    Ok(code)
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

fn parse_mu(s: &str) -> Result<MultiPartition, Failure> {
    s.parse().map_err(|e| usage(format!("bad --mu {s:?}: {e}")))
}

#[derive(Serialize)]
struct HlvOutput {
    mu: MultiPartition,
    m: u32,
    value: String,
    polynomial: bool,
}

fn cmd_hlv(mu: &str, m: u32, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let mu = parse_mu(mu)?;
    let v = hlv_hh(&mu, m).map_err(usage)?;
    match format {
        Format::Json => emit(
            out,
            &HlvOutput {
                mu,
                m,
                value: v.to_string(),
                polynomial: v.is_polynomial(),
            },
        )?,
        Format::Latex => writeln!(out, "{}", v.to_latex())?,
        Format::Text => writeln!(out, "{v}")?,
    }
    Ok(EXIT_OK)
}

fn parse_pairs(s: &str) -> Result<Vec<(String, usize)>, Failure> {
    s.split(',')
        .map(|item| {
            let (a, m) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| usage(format!("expected value:mult in {item:?}")))?;
            let m = m
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad multiplicity in {item:?}")))?;
            Ok((a.trim().to_string(), m))
        })
        .collect()
}

fn parse_orbit(s: &str) -> Result<OrbitSpec, Failure> {
    let pairs = parse_pairs(s)?
        .into_iter()
        .map(|(a, m)| {
            a.parse::<Scalar>()
                .map(|x| (x, m))
                .map_err(|_| usage(format!("bad angle {a:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OrbitSpec::new(pairs)?)
}

fn cmd_series(mixed: bool, a: &SeriesArgs, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let mu = parse_mu(&a.mu)?;
    let surface = a.surface.surface(mu.k())?;
    let orbits = a
        .orbits
        .iter()
        .map(|s| parse_orbit(s))
        .collect::<Result<Vec<_>, _>>()?;
    let orbits = (!orbits.is_empty()).then_some(orbits.as_slice());
    let report = if mixed {
        series::mixed_series_with_orbits(&surface, &mu, orbits)?
    } else {
        series::eseries_with_orbits(&surface, &mu, orbits)?
    };
    match format {
        Format::Json => emit(out, &report)?,
        Format::Latex => writeln!(out, "{}", report.to_latex())?,
        Format::Text => write!(out, "{}", report.to_text())?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(n: usize, d: i64, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let rep = series::counterexample_report(n, d)?;
    match format {
        Format::Json => emit(out, &rep)?,
        Format::Latex => writeln!(out, "{}", rep.report.to_latex())?,
        Format::Text => {
            writeln!(out, "n = {n}, d = {d}, mixed series = {}", rep.value)?;
            writeln!(out, "(a) equals (qt^2+t)^2/(qt^2-1): {}", rep.matches_carlsson_value)?;
            writeln!(out, "(b) differs from qt^2+t: {}", rep.differs_from_conjectured)?;
            writeln!(out, "(c) t=-1 gives q-1: {}", rep.e_series_is_q_minus_1)?;
        }
    }
    Ok(if rep.verified { EXIT_OK } else { EXIT_FALSE })
}

/// Smallest residue of multiplicative order exactly `n`.
fn default_zeta(n: usize, q: u32) -> Result<i64, Failure> {
    (1..q as i64)
        .find(|&z| FqElem::new(z, q).order() as usize == n)
        .ok_or_else(|| usage(format!("F_{q} has no element of order {n}; pass --zeta")))
}

fn cmd_count(
    a: &CountArgs,
    file_cap: Option<u64>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let orbit = match (&a.eigenvalues, a.zeta) {
        (Some(e), _) => {
            let pairs = parse_pairs(e)?
                .into_iter()
                .map(|(v, m)| {
                    v.parse::<i64>()
                        .map(|x| (x, m))
                        .map_err(|_| usage(format!("bad eigenvalue {v:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            FqOrbit::split(pairs)
        }
        (None, Some(z)) => FqOrbit::central(z),
        (None, None) => FqOrbit::central(default_zeta(a.n, a.q)?),
    };
    let surface = a.surface.surface(1)?;
    let orbits = vec![orbit; surface.k];
    let opts = CountOptions {
        iteration_cap: a.cap.or(file_cap).unwrap_or(ffcount::DEFAULT_ITERATION_CAP),
    };
    let mut report = match surface.r {
        Some(r) => ffcount::count_nonorientable(r, &orbits, a.q, a.n, opts)?,
        None => ffcount::count_orientable(surface.g.unwrap(), &orbits, a.q, a.n, opts)?,
    };
    if !a.no_formula {
        let e = series::eseries(&surface, &report.mu)?;
        let v = series::eval_at_q(&e, a.q as i64)?;
        report = report.with_formula(v);
    }
    match format {
        Format::Json => emit(out, &report)?,
        Format::Latex => writeln!(out, "{}", report.groupoid_count)?,
        Format::Text => write!(out, "{}", report.to_text())?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["charstack"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn hlv_command() {
        let (code, out, _) = run_capture(&["hlv", "--mu", "(1)", "--m", "3", "--format", "text"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "z^3 - 3*z^2*w + 3*z*w^2 - w^3");
        let (code, out, _) = run_capture(&["hlv", "--mu", "(1)", "--m", "0", "--format", "text"]);
        assert_eq!((code, out.trim()), (0, "1"));
        let (code, _, err) = run_capture(&["hlv", "--mu", "(1,x)", "--m", "0"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("bad --mu"));
    }

    #[test]
    fn series_commands() {
        let (code, out, _) =
            run_capture(&["eseries", "--nonorientable", "--r", "2", "--mu", "(2)"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], "q - 1");
        let (_, out, _) = run_capture(&[
            "mixed", "--nonorientable", "--r", "1", "--k", "1", "--mu", "(1)", "--format", "text",
        ]);
        assert!(out.contains("value = (q*t^2 + t)/(q*t^2 - 1)"), "{out}");
        let (code, _, _) = run_capture(&["eseries", "--mu", "(2)"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn verify_command() {
        let (code, _, _) = run_capture(&["verify-counterexample", "--n", "2", "--d", "2"]);
        assert_eq!(code, EXIT_OK);
        let (code, _, err) = run_capture(&["verify-counterexample", "--n", "2", "--d", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("even"));
    }

    #[test]
    fn count_command() {
        let (code, out, _) = run_capture(&[
            "count", "--nonorientable", "--r", "2", "--n", "2", "--zeta", "-1", "--q", "3",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["groupoid_count"], "2");
        assert_eq!(v["match"], true);
        let (_, out, _) = run_capture(&["count", "--nonorientable", "--r", "3", "--n", "1", "--q", "7"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!((v["groupoid_count"].as_str(), v["match"].as_bool()), (Some("36"), Some(true)));
        let (code, _, _) = run_capture(&["count", "--nonorientable", "--r", "2", "--n", "3", "--q", "13", "--zeta", "3"]);
        assert_eq!(code, EXIT_CAP);
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["eseries", "--orientable", "--g", "1", "--mu", "(2)"];
        assert_eq!(run_capture(&args).1, run_capture(&args).1);
    }
}
