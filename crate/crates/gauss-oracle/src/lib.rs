//! Independent brute-force references for the test suites.
//!
//! Everything here deliberately takes a *different* computational route
//! from the main crate, so a shared bug is impossible by construction:
//! where the kernel reduces phases with staged modular multiplication,
//! [`naive_sum`] forms the full product m²·N·s/r in double-double
//! floating point (~106-bit mantissa) and takes its fractional part
//! directly. Performance is explicitly not a goal.

use gauss_core::error::{Error, Result};
use gauss_core::kernel::Amplitude;
use gauss_core::rational::ReducedFraction;

mod dd;

use dd::DoubleDouble;

/// N beyond this loses too many phase bits even in double-double.
pub const MAX_ORACLE_N: u64 = 1_000_000_000; // 10^9

/// Prime factors of n with multiplicity, ascending, by plain trial
/// division. Ground truth for every factor claim in the tests.
pub fn trial_division(n: u64) -> Vec<u64> {
    assert!(n >= 2, "trial division needs n >= 2, got {n}");
    let mut rest = n;
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= rest {
        while rest % d == 0 {
            factors.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push(rest);
    }
    factors
}

/// Exact integer divisibility.
pub fn divides(r: u64, n: u64) -> bool {
    r != 0 && n % r == 0
}

/// Reference truncated sum: 1/(M+1)·Σ exp(2πi·frac(m²·N·s/r)) with the
/// phase formed by direct multiplication and division in double-double
/// precision — no modular reduction anywhere.
pub fn naive_sum(n: u64, xi: ReducedFraction, m: u32) -> Result<Amplitude> {
    if n > MAX_ORACLE_N {
        return Err(Error::RangeExceeded {
            what: "N (oracle domain)",
            value: n as u128,
            max: MAX_ORACLE_N as u128,
        });
    }
    let r = xi.numerator() as f64;
    let s = xi.denominator() as f64;
    let n_f = n as f64;
    let mut re = 0.0f64;
    let mut im = 0.0f64;
    for i in 0..=m as u64 {
        let m_sq = (i * i) as f64; // i ≤ 10^6 ⇒ i² exact in f64
        let product = DoubleDouble::product(m_sq, n_f).scale(s).div(r);
        let turns = product.fract();
        let angle = std::f64::consts::TAU * turns;
        re += angle.cos();
        im += angle.sin();
    }
    let k = (m as u64 + 1) as f64;
    Ok(Amplitude {
        re: re / k,
        im: im / k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gauss_core::rational::reduce;

    #[test]
    fn trial_division_examples() {
        assert_eq!(trial_division(91), vec![7, 13]);
        assert_eq!(trial_division(2), vec![2]);
        assert_eq!(trial_division(10403), vec![101, 103]);
    }

    #[test]
    fn trial_division_reconstructs_input() {
        for n in 2..2000u64 {
            let product: u64 = trial_division(n).iter().product();
            assert_eq!(product, n);
        }
    }

    #[test]
    fn divides_examples() {
        assert!(divides(13, 91));
        assert!(divides(1, 91));
        assert!(!divides(6, 91));
        assert!(!divides(0, 91));
    }

    #[test]
    fn naive_sum_factor_cases_are_unity() {
        let a = naive_sum(91, reduce(7, 1).unwrap(), 8).unwrap();
        assert!((a.magnitude() - 1.0).abs() < 1e-12);
        let a = naive_sum(91, reduce(13, 10).unwrap(), 8).unwrap();
        assert!((a.magnitude() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn naive_sum_refuses_oversized_n() {
        assert!(naive_sum(MAX_ORACLE_N + 1, reduce(7, 1).unwrap(), 4).is_err());
    }
}
