//! Property-based invariants for the rational core and the sum kernels.

use proptest::prelude::*;

use gauss_core::kernel::{exponential_sum, random_phase_sum, truncated_sum, TruncationPolicy};
use gauss_core::rational::{gcd, grid, reduce, Composite, ReducedFraction};
use gauss_core::strategies::{integer_scan, rational_search};

fn frac(n: u64, d: u64) -> ReducedFraction {
    reduce(n, d).unwrap()
}

proptest! {
    #[test]
    fn reduce_yields_coprime_parts_and_equal_value(r in 1u64..10_000_000, s in 1u64..1_000_000) {
        let f = reduce(r, s).unwrap();
        prop_assert_eq!(gcd(f.numerator(), f.denominator()), 1);
        // exact rational equality r/s = num/den  ⇔  r·den = num·s
        prop_assert_eq!(
            r as u128 * f.denominator() as u128,
            f.numerator() as u128 * s as u128
        );
    }

    #[test]
    fn grid_is_ascending_and_duplicate_free(
        s0 in 1u64..400,
        lo in 0u64..50,
        span in 1u64..40,
    ) {
        let xi_min = frac(lo * 2 + 1, 2);
        let xi_max = frac((lo + span) * 2 + 1, 2);
        let points = grid(s0, xi_min, xi_max).unwrap();
        prop_assert!(points.windows(2).all(|w| w[0] < w[1]));
        for p in &points {
            prop_assert!(*p > xi_min && *p <= xi_max);
        }
    }

    #[test]
    fn grid_count_formula_on_aligned_bounds(s0 in 1u64..300, a in 0u64..30, b in 1u64..30) {
        // bounds that are themselves grid multiples: |grid| = (hi - lo)·s0
        let lo = frac((a * s0 + s0).max(1), s0);
        let hi = frac(a * s0 + b * s0 + s0, s0);
        let points = grid(s0, lo, hi).unwrap();
        prop_assert_eq!(points.len() as u64, b * s0);
    }

    #[test]
    fn truncated_sum_magnitude_never_exceeds_one(
        n in 2u64..100_000,
        r in 1u64..5_000,
        s in 1u64..500,
        m in 1u32..40,
    ) {
        let a = truncated_sum(Composite::new(n).unwrap(), frac(r, s), m).unwrap();
        prop_assert!(a.magnitude() <= 1.0 + 1e-9);
    }

    #[test]
    fn power_sum_at_two_equals_truncated_bitwise(
        n in 2u64..1_000_000,
        l in 1u64..10_000,
        m in 1u32..60,
    ) {
        let n = Composite::new(n).unwrap();
        let a = exponential_sum(n, l, m, 2).unwrap();
        let b = truncated_sum(n, frac(l, 1), m).unwrap();
        prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
        prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
    }

    #[test]
    fn random_phase_sum_is_seed_deterministic(
        n in 2u64..1_000_000,
        l in 2u64..1_000,
        m in 1u32..50,
        seed in any::<u64>(),
    ) {
        let n = Composite::new(n).unwrap();
        let a = random_phase_sum(n, l, m, 10_000, seed).unwrap();
        let b = random_phase_sum(n, l, m, 10_000, seed).unwrap();
        prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
        prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
    }

    #[test]
    fn factor_reports_are_sound(n in 4u64..3_000) {
        let comp = Composite::new(n).unwrap();
        let report = integer_scan(comp, &TruncationPolicy::fourth_root()).unwrap();
        prop_assert!(report.factors.windows(2).all(|w| w[0] < w[1]));
        for &f in &report.factors {
            prop_assert!(f > 1 && f < n && n % f == 0);
        }
        if n > 4 {
            let report = rational_search(comp, 2, &TruncationPolicy::fourth_root()).unwrap();
            for &f in &report.factors {
                prop_assert!(f > 1 && f < n && n % f == 0);
            }
        }
    }
}
