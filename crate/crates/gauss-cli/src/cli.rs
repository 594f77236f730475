//! Command-line surface. Every numeric parameter is validated against the
//! library preconditions in [`crate::runner`] before any computation
//! starts; clap itself exits with code 2 on usage errors, matching the
//! configuration-error convention.

use clap::{Args, Parser, Subcommand, ValueEnum};
use gauss_core::rational::ReducedFraction;

/// Environment variable naming the default directory for relative
/// `--out` paths.
pub const OUT_DIR_ENV: &str = "GAUSS_FACTOR_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "gauss-factor",
    version,
    about = "Factor search with exponential sums at integer and rational arguments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for grid evaluation (0 = one per core). Output is
    /// identical for every setting.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output path (standard output when omitted). A relative path is
    /// resolved under $GAUSS_FACTOR_OUT_DIR when that variable is set.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a spectrum: one row per grid point, ascending.
    Scan(ScanArgs),
    /// Run a factor search and emit the report as JSON.
    Factor(FactorArgs),
    /// Build a degeneracy profile and detect its periods.
    Degeneracy(DegeneracyArgs),
    /// Sweep the truncation order and tabulate ghost candidates.
    Ghost(GhostArgs),
    /// Tabulate the minimal sufficient truncation order across semiprimes.
    Scaling(ScalingArgs),
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// The number under test.
    pub n: u64,

    /// Rational grid scan with step 1/s0 (the default mode; also sets the
    /// sample density of --continuous).
    #[arg(long)]
    pub s0: Option<u64>,

    /// Scan integer arguments 2..=max instead of a rational grid.
    #[arg(long, conflicts_with = "s0")]
    pub integer: bool,

    /// Largest integer argument for --integer (default ⌊√N⌋).
    #[arg(long, requires = "integer")]
    pub max: Option<u64>,

    /// Evaluate the Gaussian-weighted sum at real arguments instead of
    /// the truncated sum (sample positions still come from the 1/s0 grid).
    #[arg(long, conflicts_with = "integer")]
    pub continuous: bool,

    /// Gaussian weight width δm for --continuous.
    #[arg(long, requires = "continuous")]
    pub dm: Option<f64>,

    /// Argument window lo:hi, exclusive below and inclusive above; bounds
    /// are integers or fractions (e.g. 1:3 or 13/10:7/2).
    #[arg(long, value_parser = parse_xi_range)]
    pub xi: Option<XiRange>,

    /// Truncation order M (required for rational and integer scans).
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    /// The number under test.
    pub n: u64,

    #[arg(long, value_enum)]
    pub method: FactorMethod,

    /// Explicit truncation order M.
    #[arg(long, conflicts_with = "rule")]
    pub m: Option<u32>,

    /// Truncation rule when M is not given (default quartic).
    #[arg(long, value_enum)]
    pub rule: Option<Rule>,

    /// Constant c of the truncation rule.
    #[arg(long)]
    pub c: Option<f64>,

    /// Phase power j for --rule power.
    #[arg(long)]
    pub j: Option<u32>,

    /// Grid step denominator for --method rational.
    #[arg(long)]
    pub s0: Option<u64>,

    /// Largest denominator for --method degeneracy (default N).
    #[arg(long)]
    pub smax: Option<u64>,

    /// Run seed for randomized rules.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FactorMethod {
    Integer,
    Rational,
    Degeneracy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    /// M = ⌈c·N^(1/4)⌉, for the quadratic sum.
    Quartic,
    /// M = ⌈c·N^(1/(2j))⌉, for the degree-j sum.
    Power,
    /// M = ⌈c·log₂N⌉, for the random-phase sum.
    Random,
}

#[derive(Debug, Args)]
pub struct DegeneracyArgs {
    /// The number under test.
    pub n: u64,

    /// Largest denominator of the profile (default N).
    #[arg(long)]
    pub smax: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GhostArgs {
    /// The number under test.
    pub n: u64,

    /// Truncation-order sweep lo:hi.
    #[arg(long, value_parser = parse_m_range)]
    pub m: MRange,
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    /// Truncation rule whose sufficiency is swept.
    #[arg(long, value_enum)]
    pub rule: Rule,

    /// Comma-separated semiprimes, e.g. 143,1763,10403.
    #[arg(long, value_parser = parse_n_list)]
    pub ns: NList,

    /// Phase power j for --rule power.
    #[arg(long)]
    pub j: Option<u32>,

    /// Run seed for --rule random.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Window bounds as exact fractions.
#[derive(Debug, Clone, Copy)]
pub struct XiRange {
    pub lo: ReducedFraction,
    pub hi: ReducedFraction,
}

#[derive(Debug, Clone, Copy)]
pub struct MRange {
    pub lo: u32,
    pub hi: u32,
}

#[derive(Debug, Clone)]
pub struct NList(pub Vec<u64>);

fn parse_fraction(text: &str) -> Result<ReducedFraction, String> {
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (
            a.parse::<u64>().map_err(|e| format!("bad numerator {a:?}: {e}"))?,
            b.parse::<u64>().map_err(|e| format!("bad denominator {b:?}: {e}"))?,
        ),
        None => (
            text.parse::<u64>().map_err(|e| format!("bad integer {text:?}: {e}"))?,
            1,
        ),
    };
    ReducedFraction::new(num, den).map_err(|e| e.to_string())
}

fn parse_xi_range(text: &str) -> Result<XiRange, String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {text:?}"))?;
    let lo = parse_fraction(lo)?;
    let hi = parse_fraction(hi)?;
    if lo >= hi {
        return Err(format!("empty window {text:?}"));
    }
    Ok(XiRange { lo, hi })
}

fn parse_m_range(text: &str) -> Result<MRange, String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {text:?}"))?;
    let lo = lo.parse::<u32>().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi = hi.parse::<u32>().map_err(|e| format!("bad upper bound: {e}"))?;
    if lo == 0 || lo > hi {
        return Err(format!("need 1 ≤ lo ≤ hi, got {text:?}"));
    }
    Ok(MRange { lo, hi })
}

fn parse_n_list(text: &str) -> Result<NList, String> {
    let values: Result<Vec<u64>, String> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad entry {part:?}: {e}"))
        })
        .collect();
    let values = values?;
    if values.is_empty() {
        return Err("empty list".into());
    }
    Ok(NList(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn fraction_and_range_parsing() {
        assert_eq!(parse_fraction("13/10").unwrap().numerator(), 13);
        assert_eq!(parse_fraction("3").unwrap().denominator(), 1);
        assert!(parse_fraction("0/3").is_err());
        let r = parse_xi_range("1:3").unwrap();
        assert!(r.lo < r.hi);
        assert!(parse_xi_range("3:1").is_err());
        assert!(parse_m_range("0:5").is_err());
        assert_eq!(parse_m_range("1:8").unwrap().hi, 8);
        assert_eq!(parse_n_list("143, 1763").unwrap().0, vec![143, 1763]);
    }
}
