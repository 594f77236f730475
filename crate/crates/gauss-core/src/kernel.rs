//! The Gauss-sum family, evaluated as complex amplitudes.
//!
//! Variants:
//!   * truncated sum  A_N^(M)(ξ) = 1/(M+1) · Σ_{m=0}^{M} exp(2πi m² N s/r)   for ξ = r/s
//!   * standard sum   G(l, N)    = Σ_{m=0}^{N−1} exp(2πi m² l/N)             (unnormalized)
//!   * weighted sum   S_N(ξ)     = Σ_m w_m exp(2πi (m + m²/N) ξ)             over real ξ
//!   * power sum      A_N^(M,j)(l) with phase m^j N/l
//!   * random-phase sum: M+1 distinct random indices m instead of 0..M
//!
//! All phases with rational arguments go through the exact modular
//! reduction in [`crate::rational`], so `|A| = 1` holds bit-for-bit
//! exactly when the reduced numerator divides N, with no tolerance games.
//! Accumulation is compensated (Kahan) in fixed ascending-m order, which
//! makes every result reproducible across runs and thread counts.

use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{
    mul_mod, phase_mod, power_phase_mod, Composite, ReducedFraction, UnitPhase,
    MAX_NUMERATOR, MAX_PHASE_INDEX,
};

/// Term-count cap for the standard sum, whose cost is linear in N.
pub const MAX_STANDARD_SUM_N: u64 = 10_000_000; // 10^7
/// Summation-index cap for power sums with j ≥ 3.
pub const MAX_POWER_INDEX: u64 = 10_000; // 10^4

/// A complex amplitude. For every normalized sum in this module,
/// |A| ≤ 1 + 1e−9.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub re: f64,
    pub im: f64,
}

impl Amplitude {
    pub const ONE: Amplitude = Amplitude { re: 1.0, im: 0.0 };

    pub fn magnitude_sq(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude_sq().sqrt()
    }
}

/// Kahan-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    re: f64,
    im: f64,
    c_re: f64,
    c_im: f64,
}

impl CompensatedSum {
    #[inline]
    fn add(&mut self, re: f64, im: f64) {
        let y = re - self.c_re;
        let t = self.re + y;
        self.c_re = (t - self.re) - y;
        self.re = t;

        let y = im - self.c_im;
        let t = self.im + y;
        self.c_im = (t - self.im) - y;
        self.im = t;
    }
}

/// exp(2πi·phase) with the zero phase special-cased so that divisor
/// arguments produce exactly (1, 0) terms.
#[inline]
fn cis(phase: UnitPhase) -> (f64, f64) {
    if phase.is_zero() {
        (1.0, 0.0)
    } else {
        let angle = TAU * phase.to_turns();
        (angle.cos(), angle.sin())
    }
}

/// Shared normalized accumulation: mean of exp(2πi·phase) over the given
/// phases, in iteration order. Every normalized sum funnels through here,
/// which is what makes the j = 2 power sum bitwise identical to the
/// truncated sum.
fn normalized_phase_sum<I>(phases: I, count: u64) -> Result<Amplitude>
where
    I: IntoIterator<Item = Result<UnitPhase>>,
{
    let mut acc = CompensatedSum::default();
    for phase in phases {
        let (re, im) = cis(phase?);
        acc.add(re, im);
    }
    let k = count as f64;
    Ok(Amplitude {
        re: acc.re / k,
        im: acc.im / k,
    })
}

/// Truncated sum at rational argument ξ: 1/(M+1)·Σ_{m=0}^{M} exp(2πi m² N s/r).
///
/// |A| = 1 exactly — every term individually unity — iff the reduced
/// numerator of ξ divides N. At integer ξ = l this is the sum all
/// factoring experiments implement.
pub fn truncated_sum(n: Composite, xi: ReducedFraction, m: u32) -> Result<Amplitude> {
    if m as u64 > MAX_PHASE_INDEX {
        return Err(Error::RangeExceeded {
            what: "truncation order M",
            value: m as u128,
            max: MAX_PHASE_INDEX as u128,
        });
    }
    normalized_phase_sum((0..=m as u64).map(|i| phase_mod(i, n, xi)), m as u64 + 1)
}

/// Standard Gauss sum G(l, N) = Σ_{m=0}^{N−1} exp(2πi m² l/N), unnormalized.
///
/// The sum has N terms, so N is capped at [`MAX_STANDARD_SUM_N`].
pub fn standard_sum(l: u64, n: Composite) -> Result<Amplitude> {
    if l == 0 {
        return Err(Error::InvalidArgument("trial factor l must be positive".into()));
    }
    let n_val = n.value();
    if n_val > MAX_STANDARD_SUM_N {
        return Err(Error::RangeExceeded {
            what: "N (term count of the standard sum)",
            value: n_val as u128,
            max: MAX_STANDARD_SUM_N as u128,
        });
    }
    let l_red = l % n_val;
    let mut acc = CompensatedSum::default();
    for m in 0..n_val {
        let m_sq = mul_mod(m, m, n_val);
        let residue = mul_mod(m_sq, l_red, n_val);
        let (re, im) = cis(UnitPhase::from_residue(residue, n_val));
        acc.add(re, im);
    }
    Ok(Amplitude {
        re: acc.re,
        im: acc.im,
    })
}

/// Scaled square of the standard sum: g_N(l) = |G(l, N)|²/N = gcd(l, N).
pub fn g_value(l: u64, n: Composite) -> Result<f64> {
    let g = standard_sum(l, n)?;
    Ok(g.magnitude_sq() / n.value() as f64)
}

/// Symmetric Gaussian weights w_m ∝ exp(−m²/(2δm²)) on |m| ≤ m_max,
/// centered at m = 0 and normalized to unit sum.
#[derive(Debug, Clone)]
pub struct WeightProfile {
    delta_m: f64,
    m_max: u32,
    weights: Vec<f64>, // weights[k] = w_{±k}
}

impl WeightProfile {
    /// Profile of width δm with the default cutoff m_max = ⌈5δm⌉, which
    /// keeps the discarded tail mass below 1e−6 of the total.
    pub fn gaussian(delta_m: f64) -> Result<Self> {
        if !delta_m.is_finite() || delta_m <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "weight width must be positive and finite, got {delta_m}"
            )));
        }
        Self::with_cutoff(delta_m, (5.0 * delta_m).ceil() as u32)
    }

    pub fn with_cutoff(delta_m: f64, m_max: u32) -> Result<Self> {
        if !delta_m.is_finite() || delta_m <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "weight width must be positive and finite, got {delta_m}"
            )));
        }
        if (m_max as f64) < delta_m {
            return Err(Error::InvalidArgument(format!(
                "cutoff m_max = {m_max} must cover the bulk of a width-{delta_m} Gaussian"
            )));
        }
        let raw: Vec<f64> = (0..=m_max)
            .map(|k| {
                let m = k as f64;
                (-m * m / (2.0 * delta_m * delta_m)).exp()
            })
            .collect();
        let total = raw[0] + 2.0 * raw[1..].iter().sum::<f64>();
        let weights = raw.iter().map(|w| w / total).collect();
        Ok(WeightProfile {
            delta_m,
            m_max,
            weights,
        })
    }

    pub fn width(&self) -> f64 {
        self.delta_m
    }

    pub fn cutoff(&self) -> u32 {
        self.m_max
    }

    /// Normalized weight of index m (zero beyond the cutoff).
    pub fn weight(&self, m: i64) -> f64 {
        let k = m.unsigned_abs() as usize;
        self.weights.get(k).copied().unwrap_or(0.0)
    }

    /// Σ w_m over the support; 1 within 1e−12 by construction.
    pub fn total(&self) -> f64 {
        self.weights[0] + 2.0 * self.weights[1..].iter().sum::<f64>()
    }
}

/// Weighted sum S_N(ξ) = Σ_{|m| ≤ m_max} w_m exp(2πi (m + m²/N) ξ) over
/// real ξ. Phases here are floating point — ξ need not be rational — so
/// this variant carries no exactness guarantee, only |A| ≤ 1 + 1e−9.
pub fn continuous_sum(n: Composite, xi: f64, weights: &WeightProfile) -> Result<Amplitude> {
    if !xi.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "argument must be finite, got {xi}"
        )));
    }
    let n_f = n.value() as f64;
    let m_max = weights.cutoff() as i64;
    let mut acc = CompensatedSum::default();
    for m in -m_max..=m_max {
        let m_f = m as f64;
        let turns = ((m_f + m_f * m_f / n_f) * xi).rem_euclid(1.0);
        let angle = TAU * turns;
        let w = weights.weight(m);
        acc.add(w * angle.cos(), w * angle.sin());
    }
    Ok(Amplitude {
        re: acc.re,
        im: acc.im,
    })
}

/// Power-phase sum A_N^(M,j)(l) = 1/(M+1)·Σ_{m=0}^{M} exp(2πi m^j N/l).
///
/// At j = 2 and integer argument this coincides bitwise with
/// [`truncated_sum`]. For j ≥ 3 the summation index is capped at
/// [`MAX_POWER_INDEX`].
pub fn exponential_sum(n: Composite, l: u64, m: u32, power: u32) -> Result<Amplitude> {
    if power < 2 {
        return Err(Error::InvalidArgument(format!(
            "phase power j must be at least 2, got {power}"
        )));
    }
    if l == 0 {
        return Err(Error::InvalidArgument("trial factor l must be positive".into()));
    }
    if l > MAX_NUMERATOR {
        return Err(Error::RangeExceeded {
            what: "trial factor l",
            value: l as u128,
            max: MAX_NUMERATOR as u128,
        });
    }
    let index_cap = if power == 2 {
        MAX_PHASE_INDEX
    } else {
        MAX_POWER_INDEX
    };
    if m as u64 > index_cap {
        return Err(Error::RangeExceeded {
            what: "truncation order M",
            value: m as u128,
            max: index_cap as u128,
        });
    }
    normalized_phase_sum(
        (0..=m as u64).map(|i| Ok(power_phase_mod(i, power, n, l))),
        m as u64 + 1,
    )
}

/// Random-phase variant: the mean of exp(2πi m² N/l) over M+1 distinct
/// indices m drawn uniformly without replacement from {0, …, m_max},
/// with m = 0 always included so a true factor still gives exactly 1.
///
/// Deterministic for a fixed seed, independent of scheduling.
pub fn random_phase_sum(
    n: Composite,
    l: u64,
    m: u32,
    m_max: u64,
    seed: u64,
) -> Result<Amplitude> {
    if l == 0 {
        return Err(Error::InvalidArgument("trial factor l must be positive".into()));
    }
    if m_max > MAX_PHASE_INDEX {
        return Err(Error::RangeExceeded {
            what: "sampling bound m_max",
            value: m_max as u128,
            max: MAX_PHASE_INDEX as u128,
        });
    }
    if m as u64 >= m_max {
        return Err(Error::InvalidArgument(format!(
            "need M + 1 = {} distinct indices from {{0, …, {m_max}}}",
            m as u64 + 1
        )));
    }
    let xi = ReducedFraction::new(l, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // m = 0 forced; the remaining M indices come from {1, …, m_max}.
    let mut indices: Vec<u64> = rand::seq::index::sample(&mut rng, m_max as usize, m as usize)
        .iter()
        .map(|i| i as u64 + 1)
        .collect();
    indices.push(0);
    indices.sort_unstable();
    normalized_phase_sum(
        indices.iter().map(|&i| phase_mod(i, n, xi)),
        m as u64 + 1,
    )
}

/// Default sampling bound for the random-phase sum: 10·⌈√N⌉, capped so
/// the exact phase arithmetic stays in range.
pub fn default_random_m_max(n: Composite) -> u64 {
    let v = n.value();
    let mut root = v.isqrt();
    if root * root < v {
        root += 1;
    }
    (10 * root).min(MAX_PHASE_INDEX)
}

/// How the truncation order M is chosen for a given N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TruncationPolicy {
    /// Fixed M.
    Explicit(u32),
    /// M = ⌈c·N^(1/4)⌉ — the classic sufficient growth for the quadratic sum.
    FourthRoot { c: f64 },
    /// M = ⌈c·N^(1/(2j))⌉ for the degree-j power sum.
    PowerRule { c: f64, j: u32 },
    /// M = ⌈c·log₂N⌉ for the random-phase method.
    LogRandom { c: f64 },
}

impl TruncationPolicy {
    pub const DEFAULT_ROOT_CONSTANT: f64 = 1.0;
    pub const DEFAULT_LOG_CONSTANT: f64 = 3.0;

    pub fn fourth_root() -> Self {
        TruncationPolicy::FourthRoot {
            c: Self::DEFAULT_ROOT_CONSTANT,
        }
    }

    pub fn power_rule(j: u32) -> Self {
        TruncationPolicy::PowerRule {
            c: Self::DEFAULT_ROOT_CONSTANT,
            j,
        }
    }

    pub fn log_random() -> Self {
        TruncationPolicy::LogRandom {
            c: Self::DEFAULT_LOG_CONSTANT,
        }
    }

    /// The truncation order for a concrete N; always at least 1.
    pub fn resolve(&self, n: Composite) -> u32 {
        match *self {
            TruncationPolicy::Explicit(m) => m.max(1),
            TruncationPolicy::FourthRoot { c } => scaled_root(n.value(), 4, c),
            TruncationPolicy::PowerRule { c, j } => scaled_root(n.value(), 2 * j.max(1), c),
            TruncationPolicy::LogRandom { c } => {
                ceil_snap(c * (n.value() as f64).log2()).max(1)
            }
        }
    }
}

/// ⌈c·N^(1/k)⌉ with the k-th root snapped to an integer when N is an
/// exact k-th power, so perfect powers resolve without float wobble.
fn scaled_root(n: u64, k: u32, c: f64) -> u32 {
    let mut root = (n as f64).powf(1.0 / k as f64);
    let candidate = root.round();
    if candidate >= 1.0 && candidate < 2f64.powi(31) {
        if let Some(p) = (candidate as u128).checked_pow(k) {
            if p == n as u128 {
                root = candidate;
            }
        }
    }
    ceil_snap(c * root).max(1)
}

/// Ceiling that forgives values a hair above an integer.
fn ceil_snap(x: f64) -> u32 {
    let nearest = x.round();
    let v = if (x - nearest).abs() < 1e-9 {
        nearest
    } else {
        x.ceil()
    };
    v.max(0.0) as u32
}
