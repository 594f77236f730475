//! Factor-search procedures built on the sum kernels: the integer
//! threshold scan, the reduced-interval rational search, the
//! degeneracy-of-ratios period method, and the ghost/truncation-scaling
//! analyses.
//!
//! Scans are embarrassingly parallel; every function here returns its
//! samples ordered by argument and produces identical output regardless
//! of thread count. Factors are never reported on the strength of a sum
//! alone: the sum is the search heuristic, a trial division is the
//! certificate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{
    default_random_m_max, exponential_sum, random_phase_sum, truncated_sum, Amplitude,
    TruncationPolicy,
};
use crate::primes::{divisors, is_semiprime, sieve};
use crate::rational::{
    gcd, grid, scaled_isqrt, Composite, ReducedFraction, MAX_DENOMINATOR,
};

/// The discrimination level separating factors (exactly 1) from
/// sufficiently-truncated non-factors. Single configuration site; every
/// consumer reads it from here.
pub const NONFACTOR_THRESHOLD: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Unity peaks are exact up to rounding in the complex accumulation, so
/// this tolerance separates them from near-unity ghosts by machine
/// precision rather than by heuristics.
pub const UNITY_TOLERANCE: f64 = 1e-9;

/// Trial division beyond this is no longer "desk scale".
pub const MAX_TRIAL_DIVISION: u64 = 1_000_000_000_000; // 10^12

/// Upper bound on families × s_max pairs a degeneracy profile may hold.
const MAX_PROFILE_PAIRS: u128 = 10_000_000;

/// One evaluated grid point of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSample {
    pub argument: ReducedFraction,
    pub amplitude: Amplitude,
    pub magnitude_sq: f64,
}

impl SpectrumSample {
    pub fn new(argument: ReducedFraction, amplitude: Amplitude) -> Self {
        SpectrumSample {
            argument,
            amplitude,
            magnitude_sq: amplitude.magnitude_sq(),
        }
    }
}

/// What the reduced numerator of a unity peak says about N.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeakClass {
    /// Numerator 1: carries no information about N.
    Trivial,
    /// 1 < numerator < N: the numerator is a nontrivial divisor candidate.
    FactorBearing,
    /// Numerator equals N itself.
    FullN,
}

/// A grid point whose amplitude reached exact unity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakRecord {
    pub argument: ReducedFraction,
    pub class: PeakClass,
    /// The reduced numerator, i.e. the divisor candidate.
    pub candidate_factor: u64,
    /// Confirmed by trial division (always true for exact unity peaks).
    pub verified: bool,
}

/// Which procedure produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    IntegerScan,
    RationalSearch,
    Degeneracy,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::IntegerScan => "integer-scan",
            Method::RationalSearch => "rational-search",
            Method::Degeneracy => "degeneracy",
        };
        f.write_str(s)
    }
}

/// Outcome of a factor search. `factors` holds verified nontrivial
/// divisors, ascending and duplicate-free; an empty list is the correct
/// answer for a prime N.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorReport {
    pub n: u64,
    pub method: Method,
    pub factors: Vec<u64>,
    pub samples_evaluated: u64,
    pub m_used: Option<u32>,
    /// Candidates that cleared the threshold but failed trial division.
    pub ghost_candidates: u64,
}

impl FactorReport {
    /// Sorts, deduplicates, and drops anything that is not a nontrivial
    /// divisor of N, so the soundness invariant holds on every emission.
    pub fn assemble(
        n: Composite,
        method: Method,
        mut factors: Vec<u64>,
        samples_evaluated: u64,
        m_used: Option<u32>,
        ghost_candidates: u64,
    ) -> Self {
        let n_val = n.value();
        factors.retain(|&f| f > 1 && f < n_val && n_val % f == 0);
        factors.sort_unstable();
        factors.dedup();
        FactorReport {
            n: n_val,
            method,
            factors,
            samples_evaluated,
            m_used,
            ghost_candidates,
        }
    }
}

/// Evaluate the truncated sum on a fixed set of points, in parallel,
/// returning samples in the input order.
pub fn evaluate_points(
    n: Composite,
    points: &[ReducedFraction],
    m: u32,
) -> Result<Vec<SpectrumSample>> {
    points
        .par_iter()
        .map(|&xi| truncated_sum(n, xi, m).map(|a| SpectrumSample::new(xi, a)))
        .collect()
}

/// Truncated-sum spectrum at the integer arguments l_min ..= l_max.
pub fn integer_spectrum(
    n: Composite,
    l_min: u64,
    l_max: u64,
    m: u32,
) -> Result<Vec<SpectrumSample>> {
    let points: Result<Vec<ReducedFraction>> = (l_min..=l_max)
        .map(|l| ReducedFraction::new(l, 1))
        .collect();
    evaluate_points(n, &points?, m)
}

/// Samples whose magnitude reached exact unity, classified by their
/// reduced numerator and certified by division.
pub fn find_unity_peaks(n: Composite, samples: &[SpectrumSample]) -> Vec<PeakRecord> {
    let n_val = n.value();
    samples
        .iter()
        .filter(|s| s.amplitude.magnitude() >= 1.0 - UNITY_TOLERANCE)
        .map(|s| {
            let r = s.argument.numerator();
            let class = if r == 1 {
                PeakClass::Trivial
            } else if r == n_val {
                PeakClass::FullN
            } else {
                PeakClass::FactorBearing
            };
            PeakRecord {
                argument: s.argument,
                class,
                candidate_factor: r,
                verified: n_val % r == 0,
            }
        })
        .collect()
}

/// Threshold scan over every prime l ≤ √N with the default 1/√2 cut.
pub fn integer_scan(n: Composite, policy: &TruncationPolicy) -> Result<FactorReport> {
    integer_scan_with_threshold(n, policy, NONFACTOR_THRESHOLD)
}

/// Threshold scan with an explicit cut. Candidates above the threshold
/// are certified by division; the rest of the candidates above threshold
/// are counted as ghosts, never reported as factors.
pub fn integer_scan_with_threshold(
    n: Composite,
    policy: &TruncationPolicy,
    threshold: f64,
) -> Result<FactorReport> {
    let m = policy.resolve(n);
    let n_val = n.value();
    let primes = sieve(n_val.isqrt());
    let magnitudes: Vec<(u64, f64)> = primes
        .par_iter()
        .map(|&l| {
            truncated_sum(n, ReducedFraction::new(l, 1)?, m).map(|a| (l, a.magnitude()))
        })
        .collect::<Result<_>>()?;

    let mut factors = Vec::new();
    let mut ghosts = 0u64;
    for &(l, mag) in &magnitudes {
        if mag >= threshold {
            if n_val % l == 0 {
                factors.push(l);
            } else {
                ghosts += 1;
            }
        }
    }
    Ok(FactorReport::assemble(
        n,
        Method::IntegerScan,
        factors,
        magnitudes.len() as u64,
        Some(m),
        ghosts,
    ))
}

/// Truncation order a policy resolves to for this N.
pub fn required_m(n: Composite, policy: &TruncationPolicy) -> u32 {
    policy.resolve(n)
}

/// Full output of a rational-grid scan: the spectrum, its unity peaks,
/// and the assembled factor report.
#[derive(Debug, Clone)]
pub struct RationalScan {
    pub samples: Vec<SpectrumSample>,
    pub peaks: Vec<PeakRecord>,
    pub report: FactorReport,
}

/// Scan the grid points l/s0 with xi_min < l/s0 ≤ xi_max and collect
/// unity peaks. Factors are the gcds of peak numerators with N, so even
/// a window chosen without the √N guard stays sound.
pub fn rational_scan_range(
    n: Composite,
    s0: u64,
    m: u32,
    xi_min_exclusive: ReducedFraction,
    xi_max_inclusive: ReducedFraction,
) -> Result<RationalScan> {
    let points = grid(s0, xi_min_exclusive, xi_max_inclusive)?;
    let samples = evaluate_points(n, &points, m)?;
    let peaks = find_unity_peaks(n, &samples);
    let factors = peaks
        .iter()
        .map(|p| gcd(p.candidate_factor, n.value()))
        .collect();
    let report = FactorReport::assemble(
        n,
        Method::RationalSearch,
        factors,
        samples.len() as u64,
        Some(m),
        0,
    );
    Ok(RationalScan {
        samples,
        peaks,
        report,
    })
}

/// Reduced-interval search over the full window (1, √N] with step 1/s0.
///
/// For 2 ≤ s0 < √N the window contains no peak that reduces to numerator
/// N, and the smallest prime factor p of a composite N is guaranteed to
/// appear at the grid point p·s0/s0, so the report is never empty for
/// composite N. Larger s0 is accepted — any full-N peak it admits is
/// classified as such and filtered out of the factors.
pub fn rational_search_scan(
    n: Composite,
    s0: u64,
    policy: &TruncationPolicy,
) -> Result<RationalScan> {
    if s0 < 2 {
        return Err(Error::InvalidArgument(format!(
            "step denominator s0 must be at least 2, got {s0}"
        )));
    }
    let l_last = scaled_isqrt(n.value(), s0);
    let xi_max = ReducedFraction::new(l_last, s0)?;
    rational_scan_range(n, s0, policy.resolve(n), ReducedFraction::ONE, xi_max)
}

/// [`rational_search_scan`] without the spectrum, when only the verdict
/// is wanted.
pub fn rational_search(
    n: Composite,
    s0: u64,
    policy: &TruncationPolicy,
) -> Result<FactorReport> {
    Ok(rational_search_scan(n, s0, policy)?.report)
}

/// Representation counts D over the divisor families of N: for every
/// value r/s with r a divisor of N (r > 1) and 1 ≤ s ≤ s_max, how many
/// (r, s) pairs reduce to it.
#[derive(Debug, Clone)]
pub struct DegeneracyProfile {
    n: u64,
    s_max: u64,
    families: Vec<u64>,
    counts: BTreeMap<ReducedFraction, u32>,
}

impl DegeneracyProfile {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn s_max(&self) -> u64 {
        self.s_max
    }

    /// The divisors of N greater than 1 (for a semiprime pq: p, q, pq).
    pub fn families(&self) -> &[u64] {
        &self.families
    }

    /// D for a reduced value; zero if the value has no representation.
    pub fn count(&self, value: ReducedFraction) -> u32 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    /// All stored (value, D) pairs, ascending by value.
    pub fn entries(&self) -> impl Iterator<Item = (ReducedFraction, u32)> + '_ {
        self.counts.iter().map(|(k, v)| (*k, *v))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Build the degeneracy profile of N up to denominator s_max.
pub fn degeneracy_profile(n: Composite, s_max: u64) -> Result<DegeneracyProfile> {
    let n_val = n.value();
    if n_val > MAX_TRIAL_DIVISION {
        return Err(Error::RangeExceeded {
            what: "N (divisor families by trial division)",
            value: n_val as u128,
            max: MAX_TRIAL_DIVISION as u128,
        });
    }
    if s_max == 0 {
        return Err(Error::InvalidArgument("s_max must be positive".into()));
    }
    if s_max > MAX_DENOMINATOR {
        return Err(Error::RangeExceeded {
            what: "s_max",
            value: s_max as u128,
            max: MAX_DENOMINATOR as u128,
        });
    }
    let families: Vec<u64> = divisors(n_val).into_iter().filter(|&d| d > 1).collect();
    let pairs = families.len() as u128 * s_max as u128;
    if pairs > MAX_PROFILE_PAIRS {
        return Err(Error::RangeExceeded {
            what: "degeneracy profile size (families × s_max)",
            value: pairs,
            max: MAX_PROFILE_PAIRS,
        });
    }
    let mut counts = BTreeMap::new();
    for &r in &families {
        for s in 1..=s_max {
            let value = ReducedFraction::new(r, s)?;
            *counts.entry(value).or_insert(0u32) += 1;
        }
    }
    Ok(DegeneracyProfile {
        n: n_val,
        s_max,
        families,
        counts,
    })
}

/// Denominators s < s_max at which N/s coincides with some other family
/// member — the periodic pattern in D.
pub fn coincidence_set(profile: &DegeneracyProfile) -> Vec<u64> {
    let n = profile.n();
    (1..profile.s_max())
        .filter(|&s| {
            let g = gcd(n, s);
            let value = ReducedFraction::new(n / g, s / g)
                .expect("reduced parts of n/s are within caps");
            profile.count(value) >= 2
        })
        .collect()
}

/// Minimal generators of the coincidence set under divisibility: the
/// periods of the degeneracy pattern, extracted greedily.
pub fn period_generators(profile: &DegeneracyProfile) -> Vec<u64> {
    let mut generators: Vec<u64> = Vec::new();
    for s in coincidence_set(profile) {
        if !generators.iter().any(|&g| s % g == 0) {
            generators.push(s);
        }
    }
    generators
}

/// Extract the factors of N from the periods of its degeneracy profile.
///
/// The coincidence set is a union of arithmetic progressions; its minimal
/// generators under divisibility are the periods, and N/period is a
/// factor. Every returned value is verified to divide N. A prime N has an
/// empty coincidence set and yields an empty list.
pub fn detect_periods(profile: &DegeneracyProfile) -> Vec<u64> {
    let generators = period_generators(profile);
    let n = profile.n();
    let mut factors: Vec<u64> = generators
        .iter()
        .filter(|&&g| n % g == 0)
        .map(|&g| n / g)
        .filter(|&f| f > 1 && f < n)
        .collect();
    factors.sort_unstable();
    factors.dedup();
    factors
}

/// One row of a ghost-factor sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhostRow {
    pub m: u32,
    /// Largest |A| among non-factor primes l ≤ √N.
    pub max_nonfactor_magnitude: f64,
    /// How many of them sit at or above the 1/√2 threshold.
    pub ghost_count: u64,
}

/// For each truncation order M in the range, the worst non-factor
/// magnitude and the number of ghosts. Locates the minimal sufficient M.
pub fn ghost_analysis(
    n: Composite,
    m_range: RangeInclusive<u32>,
) -> Result<Vec<GhostRow>> {
    let n_val = n.value();
    let nonfactors: Vec<u64> = sieve(n_val.isqrt())
        .into_iter()
        .filter(|&p| n_val % p != 0)
        .collect();
    m_range
        .map(|m| {
            let mags: Vec<f64> = nonfactors
                .par_iter()
                .map(|&l| {
                    truncated_sum(n, ReducedFraction::new(l, 1)?, m).map(|a| a.magnitude())
                })
                .collect::<Result<_>>()?;
            let max = mags.iter().cloned().fold(0.0f64, f64::max);
            let ghost_count = mags.iter().filter(|&&v| v >= NONFACTOR_THRESHOLD).count();
            Ok(GhostRow {
                m,
                max_nonfactor_magnitude: max,
                ghost_count: ghost_count as u64,
            })
        })
        .collect()
}

/// Which sum a truncation-scaling sweep drives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SumVariant {
    /// The quadratic truncated sum.
    Quadratic,
    /// The degree-j power sum.
    Power(u32),
    /// The random-phase sum; per-point seeds derive from this run seed.
    RandomPhase { seed: u64 },
}

impl SumVariant {
    fn evaluate(&self, n: Composite, l: u64, m: u32) -> Result<Amplitude> {
        match *self {
            SumVariant::Quadratic => truncated_sum(n, ReducedFraction::new(l, 1)?, m),
            SumVariant::Power(j) => exponential_sum(n, l, m, j),
            SumVariant::RandomPhase { seed } => {
                let pool = default_random_m_max(n).max(m as u64 + 2);
                random_phase_sum(n, l, m, pool, derive_seed(seed, n.value(), l))
            }
        }
    }

    /// The growth law this variant is expected to follow, for trend ratios.
    fn expected_scale(&self, n: u64) -> f64 {
        match *self {
            SumVariant::Quadratic => (n as f64).powf(0.25),
            SumVariant::Power(j) => (n as f64).powf(1.0 / (2.0 * j as f64)),
            SumVariant::RandomPhase { .. } => (n as f64).log2(),
        }
    }
}

/// Per-point seed for parallel random-phase evaluation: mixing the run
/// seed with (N, l) keeps results independent of scheduling.
pub fn derive_seed(run_seed: u64, n: u64, l: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(mix(mix(run_seed) ^ n) ^ l)
}

/// Smallest M ≤ cap at which every non-factor prime l ≤ √N falls below
/// the 1/√2 threshold for the given sum variant; None if the cap is hit.
pub fn minimal_sufficient_m(
    n: Composite,
    variant: &SumVariant,
    cap: u32,
) -> Result<Option<u32>> {
    let n_val = n.value();
    let nonfactors: Vec<u64> = sieve(n_val.isqrt())
        .into_iter()
        .filter(|&p| n_val % p != 0)
        .collect();
    if nonfactors.is_empty() {
        return Ok(Some(1));
    }
    for m in 1..=cap {
        let all_below = nonfactors
            .par_iter()
            .map(|&l| {
                variant
                    .evaluate(n, l, m)
                    .map(|a| a.magnitude() < NONFACTOR_THRESHOLD)
            })
            .try_reduce(|| true, |a, b| Ok(a && b))?;
        if all_below {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// One row of a truncation-scaling table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingRow {
    pub n: u64,
    pub m_min: u32,
    /// m_min divided by the variant's expected growth law, for trend
    /// inspection.
    pub ratio: f64,
}

/// Minimal sufficient M for each semiprime in the list. Non-semiprime
/// input is rejected — the sweep is a controlled experiment, not a
/// factoring run.
pub fn scaling_experiment(variant: &SumVariant, ns: &[u64]) -> Result<Vec<ScalingRow>> {
    for &n in ns {
        if !is_semiprime(n) {
            return Err(Error::NotSemiprime(n));
        }
    }
    ns.iter()
        .map(|&n_val| {
            let n = Composite::new(n_val)?;
            let cap = ((n_val as f64).powf(0.25) * 16.0).ceil() as u32 + 64;
            let m_min = minimal_sufficient_m(n, variant, cap)?.ok_or_else(|| {
                Error::Computation(format!(
                    "no sufficient M below {cap} for N = {n_val}"
                ))
            })?;
            Ok(ScalingRow {
                n: n_val,
                m_min,
                ratio: m_min as f64 / variant.expected_scale(n_val),
            })
        })
        .collect()
}
