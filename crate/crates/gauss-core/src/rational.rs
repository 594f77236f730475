//! Exact rational and wide-integer arithmetic.
//!
//! Everything downstream rests on one guarantee: the fractional part of
//! m²·N·s/r is computed **exactly**, as a reduced fraction, for every
//! supported operand. The products involved can reach ~10³⁹ at the caps,
//! so they are never formed in full; instead each factor is reduced
//! modulo r first and the partial products stay below 2¹²⁸
//! (staged modular multiplication).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest numerator (and largest N) the staged reduction supports.
pub const MAX_NUMERATOR: u64 = 1_000_000_000_000_000_000; // 10^18
/// Largest denominator of a rational argument.
pub const MAX_DENOMINATOR: u64 = 1_000_000_000; // 10^9
/// Largest summation index m accepted by [`phase_mod`].
pub const MAX_PHASE_INDEX: u64 = 1_000_000; // 10^6

/// Greatest common divisor (binary-free Euclid; inputs fit u64).
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// (a * b) mod modulus without overflow; operands must already be < modulus.
///
/// With modulus ≤ 10¹⁸ the product is below 10³⁶ < 2¹²⁸, so the u128
/// multiplication is exact.
#[inline]
pub fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    debug_assert!(a < modulus && b < modulus);
    ((a as u128 * b as u128) % modulus as u128) as u64
}

/// base^exp mod modulus by square-and-multiply with staged 128-bit products.
pub fn pow_mod(base: u64, mut exp: u32, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        exp >>= 1;
    }
    acc
}

/// A positive rational r/s kept in lowest terms.
///
/// The reduced numerator is the quantity every peak test keys on, so the
/// type never exposes an unreduced state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    num: u64,
    den: u64,
}

impl ReducedFraction {
    pub const ONE: ReducedFraction = ReducedFraction { num: 1, den: 1 };

    /// Reduce num/den to lowest terms. Zero parts and values beyond the
    /// arithmetic caps are rejected.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidArgument(format!(
                "fraction parts must be positive, got {num}/{den}"
            )));
        }
        if num > MAX_NUMERATOR {
            return Err(Error::RangeExceeded {
                what: "numerator",
                value: num as u128,
                max: MAX_NUMERATOR as u128,
            });
        }
        if den > MAX_DENOMINATOR {
            return Err(Error::RangeExceeded {
                what: "denominator",
                value: den as u128,
                max: MAX_DENOMINATOR as u128,
            });
        }
        let g = gcd(num, den);
        Ok(ReducedFraction {
            num: num / g,
            den: den / g,
        })
    }

    /// Parse an integer `n` as n/1.
    pub fn from_integer(n: u64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Lossy value for plotting; identity stays in (num, den).
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for ReducedFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ReducedFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        // num ≤ 10^18 and den ≤ 10^9, so the cross products fit u128.
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Reduce r/s to lowest terms (free-function form of [`ReducedFraction::new`]).
pub fn reduce(r: u64, s: u64) -> Result<ReducedFraction> {
    ReducedFraction::new(r, s)
}

/// The number under test. N ≥ 2 is required; primality is *not* checked —
/// a prime input is legal and simply yields empty factor reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composite(u64);

impl Composite {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "the number under test must be at least 2, got {n}"
            )));
        }
        if n > MAX_NUMERATOR {
            return Err(Error::RangeExceeded {
                what: "N",
                value: n as u128,
                max: MAX_NUMERATOR as u128,
            });
        }
        Ok(Composite(n))
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Composite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An exact phase in units of full turns, reduced, in [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnitPhase {
    num: u64,
    den: u64,
}

impl UnitPhase {
    pub const ZERO: UnitPhase = UnitPhase { num: 0, den: 1 };

    /// Build num/den reduced; requires num < den.
    pub(crate) fn from_residue(residue: u64, modulus: u64) -> Self {
        debug_assert!(residue < modulus);
        if residue == 0 {
            return UnitPhase::ZERO;
        }
        let g = gcd(residue, modulus);
        UnitPhase {
            num: residue / g,
            den: modulus / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Phase in turns, for handing to sin/cos.
    pub fn to_turns(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for UnitPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Exact fractional part of m²·N·s/r for ξ = r/s.
///
/// Computed as ((m² mod r)·(N mod r)·(s mod r)) mod r over r. The result
/// is zero for every m exactly when r divides N: with gcd(s, r) = 1 the
/// m = 1 term N·s ≡ 0 (mod r) already forces r | N, and the converse is
/// immediate.
pub fn phase_mod(m: u64, n: Composite, xi: ReducedFraction) -> Result<UnitPhase> {
    if m > MAX_PHASE_INDEX {
        return Err(Error::RangeExceeded {
            what: "summation index m",
            value: m as u128,
            max: MAX_PHASE_INDEX as u128,
        });
    }
    let r = xi.numerator();
    if r == 1 {
        return Ok(UnitPhase::ZERO);
    }
    let m_sq = m * m; // m ≤ 10^6, so m² ≤ 10^12 fits u64 exactly
    let a = mul_mod(m_sq % r, n.value() % r, r);
    let residue = mul_mod(a, xi.denominator() % r, r);
    Ok(UnitPhase::from_residue(residue, r))
}

/// Phase of the degree-j generalization at integer trial factor l:
/// exact fractional part of m^j·N/l.
pub(crate) fn power_phase_mod(m: u64, power: u32, n: Composite, l: u64) -> UnitPhase {
    if l == 1 {
        return UnitPhase::ZERO;
    }
    let mj = pow_mod(m, power, l);
    let residue = mul_mod(mj, n.value() % l, l);
    UnitPhase::from_residue(residue, l)
}

/// All grid points l/s0 with xi_min < l/s0 ≤ xi_max, reduced, ascending.
///
/// An empty range yields an empty sequence rather than an error.
pub fn grid(
    s0: u64,
    xi_min_exclusive: ReducedFraction,
    xi_max_inclusive: ReducedFraction,
) -> Result<Vec<ReducedFraction>> {
    if s0 == 0 {
        return Err(Error::InvalidArgument("step denominator s0 must be positive".into()));
    }
    if s0 > MAX_DENOMINATOR {
        return Err(Error::RangeExceeded {
            what: "s0",
            value: s0 as u128,
            max: MAX_DENOMINATOR as u128,
        });
    }
    // l > xi_min·s0  ⇔  l ≥ floor(min_num·s0 / min_den) + 1
    let l_first = (xi_min_exclusive.numerator() as u128 * s0 as u128
        / xi_min_exclusive.denominator() as u128) as u64
        + 1;
    // l ≤ xi_max·s0  ⇔  l ≤ floor(max_num·s0 / max_den)
    let l_last = (xi_max_inclusive.numerator() as u128 * s0 as u128
        / xi_max_inclusive.denominator() as u128) as u64;
    if l_first > l_last {
        return Ok(Vec::new());
    }
    (l_first..=l_last)
        .map(|l| ReducedFraction::new(l, s0))
        .collect()
}

/// Integer square root of n·s0², i.e. the largest grid index l with
/// (l/s0)² ≤ n — the exact right edge of the window (1, √n] on a 1/s0
/// grid. Exact for the full supported range.
pub fn scaled_isqrt(n: u64, s0: u64) -> u64 {
    let scaled = n as u128 * (s0 as u128) * (s0 as u128);
    scaled.isqrt() as u64
}
