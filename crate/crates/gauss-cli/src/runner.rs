//! Validates a parsed command line, runs the requested computation inside
//! a sized thread pool, and writes the output document.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use gauss_core::kernel::{TruncationPolicy, WeightProfile};
use gauss_core::rational::{grid, scaled_isqrt, Composite, ReducedFraction};
use gauss_core::strategies::{
    degeneracy_profile, detect_periods, evaluate_points, ghost_analysis, integer_scan,
    integer_spectrum, period_generators, rational_search, scaling_experiment, FactorReport,
    Method, SpectrumSample, SumVariant,
};
use gauss_core::{continuous_sum, Error as CoreError};

use crate::cli::{
    Cli, Command, DegeneracyArgs, FactorArgs, FactorMethod, Format, GhostArgs, Rule,
    ScalingArgs, ScanArgs, XiRange, OUT_DIR_ENV,
};
use crate::format::{
    self, DegeneracyDoc, DegeneracyRow, FactorDoc, GhostDoc, Header, ReportDoc, ScalingDoc,
    SpectrumDoc, SpectrumRow,
};

/// Failure modes with their exit codes: configuration and I/O problems
/// exit 2, computation failures exit 3.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Compute(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Compute(_) => 3,
        }
    }
}

/// Core errors raised while validating the configuration are usage
/// errors; the same error type raised mid-computation is internal.
fn config_err(e: CoreError) -> CliError {
    CliError::Config(e.to_string())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;

    let document = pool.install(|| render(cli))?;
    write_output(cli.out.clone(), &document)
}

/// The fully rendered output bytes. Rendering is separated from writing
/// so the bytes are identical no matter where they land.
fn render(cli: &Cli) -> Result<Vec<u8>, CliError> {
    match &cli.command {
        Command::Scan(args) => run_scan(args, cli.format),
        Command::Factor(args) => run_factor(args),
        Command::Degeneracy(args) => run_degeneracy(args, cli.format),
        Command::Ghost(args) => run_ghost(args, cli.format),
        Command::Scaling(args) => run_scaling(args, cli.format),
    }
}

fn write_output(path: Option<PathBuf>, bytes: &[u8]) -> Result<(), CliError> {
    match resolve_out_path(path) {
        Some(path) => {
            let file = File::create(&path).map_err(|e| {
                CliError::Io(std::io::Error::new(
                    e.kind(),
                    format!("cannot write {}: {e}", path.display()),
                ))
            })?;
            let mut writer = BufWriter::new(file);
            writer.write_all(bytes)?;
            writer.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(bytes)?;
            lock.flush()?;
        }
    }
    Ok(())
}

/// Relative --out paths land in $GAUSS_FACTOR_OUT_DIR when set.
fn resolve_out_path(path: Option<PathBuf>) -> Option<PathBuf> {
    let path = path?;
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            if !dir.is_empty() {
                return Some(PathBuf::from(dir).join(path));
            }
        }
    }
    Some(path)
}

// -------------------------------------------------------------------
// scan
// -------------------------------------------------------------------

fn run_scan(args: &ScanArgs, fmt: Format) -> Result<Vec<u8>, CliError> {
    let n = Composite::new(args.n).map_err(config_err)?;

    let (samples, header) = if args.integer {
        let m = require_m(args)?;
        let hi = args.max.unwrap_or_else(|| args.n.isqrt());
        if hi < 2 {
            return Err(CliError::Config(format!(
                "--max {hi} leaves no integer argument to scan"
            )));
        }
        let samples = integer_spectrum(n, 2, hi, m).map_err(CliError::Compute)?;
        let mut header = Header::new("scan");
        header.n = Some(args.n);
        header.m = Some(m);
        header.variant = Some("integer".into());
        header.xi = Some(format!("1:{hi}"));
        (samples, header)
    } else if args.continuous {
        let dm = args
            .dm
            .ok_or_else(|| CliError::Config("--continuous needs a width --dm".into()))?;
        let weights = WeightProfile::gaussian(dm).map_err(config_err)?;
        let s0 = args.s0.unwrap_or(100);
        let range = args.xi.ok_or_else(|| {
            CliError::Config("--continuous scans need an explicit --xi lo:hi".into())
        })?;
        let points = grid(s0, range.lo, range.hi).map_err(config_err)?;
        let samples: Result<Vec<SpectrumSample>, CoreError> = points
            .iter()
            .map(|&xi| {
                continuous_sum(n, xi.to_f64(), &weights)
                    .map(|a| SpectrumSample::new(xi, a))
            })
            .collect();
        let samples = samples.map_err(CliError::Compute)?;
        let mut header = Header::new("scan");
        header.n = Some(args.n);
        header.s0 = Some(s0);
        header.dm = Some(dm);
        header.variant = Some("continuous".into());
        header.xi = Some(format!("{}:{}", range.lo, range.hi));
        (samples, header)
    } else {
        let m = require_m(args)?;
        let s0 = args
            .s0
            .ok_or_else(|| CliError::Config("rational scans need --s0".into()))?;
        let range = default_rational_window(args.n, s0, args.xi)?;
        let points = grid(s0, range.lo, range.hi).map_err(config_err)?;
        let samples = evaluate_points(n, &points, m).map_err(CliError::Compute)?;
        let mut header = Header::new("scan");
        header.n = Some(args.n);
        header.m = Some(m);
        header.s0 = Some(s0);
        header.variant = Some("rational".into());
        header.xi = Some(format!("{}:{}", range.lo, range.hi));
        (samples, header)
    };

    let rows: Vec<SpectrumRow> = samples.iter().map(SpectrumRow::from_sample).collect();
    match fmt {
        Format::Csv => {
            let mut buf = Vec::new();
            format::write_spectrum_csv(&mut buf, &rows)?;
            Ok(buf)
        }
        Format::Json => to_json(&SpectrumDoc { header, rows }),
    }
}

fn require_m(args: &ScanArgs) -> Result<u32, CliError> {
    args.m
        .ok_or_else(|| CliError::Config("this scan needs a truncation order --m".into()))
}

/// Explicit window, or the full search window (1, √N] aligned to the grid.
fn default_rational_window(
    n: u64,
    s0: u64,
    xi: Option<XiRange>,
) -> Result<XiRange, CliError> {
    if let Some(range) = xi {
        return Ok(range);
    }
    let l_last = scaled_isqrt(n, s0.max(1));
    if l_last <= s0 {
        return Err(CliError::Config(format!(
            "N = {n} has no window (1, √N]; give --xi explicitly"
        )));
    }
    Ok(XiRange {
        lo: ReducedFraction::ONE,
        hi: ReducedFraction::new(l_last, s0).map_err(config_err)?,
    })
}

// -------------------------------------------------------------------
// factor
// -------------------------------------------------------------------

fn run_factor(args: &FactorArgs) -> Result<Vec<u8>, CliError> {
    let n = Composite::new(args.n).map_err(config_err)?;
    let policy = truncation_policy(args)?;

    let started = Instant::now();
    let report = match args.method {
        FactorMethod::Integer => integer_scan(n, &policy).map_err(CliError::Compute)?,
        FactorMethod::Rational => {
            let s0 = args.s0.ok_or_else(|| {
                CliError::Config("--method rational needs --s0".into())
            })?;
            rational_search(n, s0, &policy).map_err(CliError::Compute)?
        }
        FactorMethod::Degeneracy => {
            let s_max = args.smax.unwrap_or(args.n);
            let profile = degeneracy_profile(n, s_max).map_err(config_err)?;
            let factors = detect_periods(&profile);
            FactorReport::assemble(
                n,
                Method::Degeneracy,
                factors,
                profile.len() as u64,
                None,
                0,
            )
        }
    };
    let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;

    let mut header = Header::new("factor");
    header.n = Some(args.n);
    header.m = report.m_used;
    header.s0 = args.s0;
    header.smax = args.smax;
    header.variant = Some(report.method.to_string());
    to_json(&FactorDoc {
        header,
        report: ReportDoc::from_report(&report, wall_time_ms),
    })
}

fn truncation_policy(args: &FactorArgs) -> Result<TruncationPolicy, CliError> {
    if let Some(m) = args.m {
        if m == 0 {
            return Err(CliError::Config("--m must be at least 1".into()));
        }
        return Ok(TruncationPolicy::Explicit(m));
    }
    let c_root = args.c.unwrap_or(TruncationPolicy::DEFAULT_ROOT_CONSTANT);
    let c_log = args.c.unwrap_or(TruncationPolicy::DEFAULT_LOG_CONSTANT);
    if !(c_root > 0.0) {
        return Err(CliError::Config("--c must be positive".into()));
    }
    Ok(match args.rule.unwrap_or(Rule::Quartic) {
        Rule::Quartic => TruncationPolicy::FourthRoot { c: c_root },
        Rule::Power => TruncationPolicy::PowerRule {
            c: c_root,
            j: validated_j(args.j)?,
        },
        Rule::Random => TruncationPolicy::LogRandom { c: c_log },
    })
}

fn validated_j(j: Option<u32>) -> Result<u32, CliError> {
    let j = j.unwrap_or(2);
    if j < 2 {
        return Err(CliError::Config("--j must be at least 2".into()));
    }
    Ok(j)
}

// -------------------------------------------------------------------
// degeneracy
// -------------------------------------------------------------------

fn run_degeneracy(args: &DegeneracyArgs, fmt: Format) -> Result<Vec<u8>, CliError> {
    let n = Composite::new(args.n).map_err(config_err)?;
    let s_max = args.smax.unwrap_or(args.n);
    let profile = degeneracy_profile(n, s_max).map_err(config_err)?;
    let rows: Vec<DegeneracyRow> = profile
        .entries()
        .map(|(value, d)| DegeneracyRow {
            value_num: value.numerator(),
            value_den: value.denominator(),
            d,
        })
        .collect();

    let generators = period_generators(&profile);
    let factors = detect_periods(&profile);

    match fmt {
        Format::Csv => {
            // the factor summary goes to stderr so the table stays clean
            eprintln!("factors: {factors:?} (generators {generators:?})");
            let mut buf = Vec::new();
            format::write_degeneracy_csv(&mut buf, &rows)?;
            Ok(buf)
        }
        Format::Json => {
            let mut header = Header::new("degeneracy");
            header.n = Some(args.n);
            header.smax = Some(s_max);
            to_json(&DegeneracyDoc {
                header,
                rows,
                generators,
                factors,
            })
        }
    }
}

// -------------------------------------------------------------------
// ghost / scaling
// -------------------------------------------------------------------

fn run_ghost(args: &GhostArgs, fmt: Format) -> Result<Vec<u8>, CliError> {
    let n = Composite::new(args.n).map_err(config_err)?;
    let rows: Vec<_> = ghost_analysis(n, args.m.lo..=args.m.hi)
        .map_err(CliError::Compute)?
        .iter()
        .map(format::ghost_row_doc)
        .collect();
    match fmt {
        Format::Csv => {
            let mut buf = Vec::new();
            format::write_ghost_csv(&mut buf, &rows)?;
            Ok(buf)
        }
        Format::Json => {
            let mut header = Header::new("ghost");
            header.n = Some(args.n);
            header.xi = Some(format!("{}:{}", args.m.lo, args.m.hi));
            to_json(&GhostDoc { header, rows })
        }
    }
}

fn run_scaling(args: &ScalingArgs, fmt: Format) -> Result<Vec<u8>, CliError> {
    let variant = match args.rule {
        Rule::Quartic => SumVariant::Quadratic,
        Rule::Power => SumVariant::Power(validated_j(args.j)?),
        Rule::Random => SumVariant::RandomPhase { seed: args.seed },
    };
    let rows: Vec<_> = scaling_experiment(&variant, &args.ns.0)
        .map_err(|e| match e {
            CoreError::NotSemiprime(_) => CliError::Config(e.to_string()),
            other => CliError::Compute(other),
        })?
        .iter()
        .map(format::scaling_row_doc)
        .collect();
    match fmt {
        Format::Csv => {
            let mut buf = Vec::new();
            format::write_scaling_csv(&mut buf, &rows)?;
            Ok(buf)
        }
        Format::Json => {
            let mut header = Header::new("scaling");
            header.ns = Some(args.ns.0.clone());
            header.seed = Some(args.seed);
            header.j = args.j;
            header.variant = Some(format!("{:?}", args.rule).to_lowercase());
            to_json(&ScalingDoc { header, rows })
        }
    }
}

fn to_json<T: serde::Serialize>(doc: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(doc)
        .map_err(|e| CliError::Compute(CoreError::Computation(e.to_string())))?;
    bytes.push(b'\n');
    Ok(bytes)
}
