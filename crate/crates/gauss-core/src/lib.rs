//! Factor search with exponential sums at integer and rational arguments.
//!
//! The crate is organized in three layers:
//!
//! * [`rational`] — exact reduced fractions, grid enumeration, and the
//!   staged 128-bit modular reduction that makes every phase exact;
//! * [`kernel`] — the family of sums (truncated, standard, weighted
//!   continuous, power-phase, random-phase) as complex amplitudes;
//! * [`strategies`] — the search procedures on top: integer threshold
//!   scan, reduced-interval rational search, degeneracy-of-ratios period
//!   detection, and ghost/scaling sweeps.
//!
//! The load-bearing property throughout: the truncated sum equals 1
//! **exactly** — not approximately — when and only when the reduced
//! numerator of its argument divides N, because in that case every phase
//! reduces to zero in exact integer arithmetic. Peak detection therefore
//! distinguishes unity from near-unity at machine precision.

pub mod error;
pub mod kernel;
pub mod primes;
pub mod rational;
pub mod strategies;

pub use error::{Error, Result};
pub use kernel::{
    continuous_sum, default_random_m_max, exponential_sum, g_value, random_phase_sum,
    standard_sum, truncated_sum, Amplitude, TruncationPolicy, WeightProfile,
};
pub use rational::{grid, phase_mod, reduce, Composite, ReducedFraction, UnitPhase};
pub use strategies::{
    coincidence_set, degeneracy_profile, detect_periods, ghost_analysis, integer_scan,
    integer_scan_with_threshold, integer_spectrum, minimal_sufficient_m, period_generators,
    rational_scan_range, rational_search, rational_search_scan, required_m,
    scaling_experiment, DegeneracyProfile, FactorReport, GhostRow, Method, PeakClass,
    PeakRecord, RationalScan, ScalingRow, SpectrumSample, SumVariant, NONFACTOR_THRESHOLD,
    UNITY_TOLERANCE,
};
