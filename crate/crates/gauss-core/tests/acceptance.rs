//! Acceptance suite: one test per criterion, each ending with a PASS line
//! (run with `--nocapture` to see them). Expected values marked as pins
//! were produced by the brute-force oracles and frozen here.

use std::time::Instant;

use gauss_core::kernel::{
    g_value, random_phase_sum, truncated_sum, TruncationPolicy, WeightProfile,
};
use gauss_core::rational::{gcd, grid, reduce, Composite, ReducedFraction};
use gauss_core::strategies::{
    degeneracy_profile, detect_periods, minimal_sufficient_m, rational_scan_range,
    scaling_experiment, SumVariant, NONFACTOR_THRESHOLD, UNITY_TOLERANCE,
};
use gauss_core::{continuous_sum, default_random_m_max};
use gauss_oracle::{naive_sum, trial_division};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn comp(n: u64) -> Composite {
    Composite::new(n).unwrap()
}

fn frac(n: u64, d: u64) -> ReducedFraction {
    reduce(n, d).unwrap()
}

#[test]
fn criterion_01_scaled_square_equals_gcd() {
    let start = Instant::now();
    let n = comp(91);
    for l in 1..=91u64 {
        let g = g_value(l, n).unwrap();
        let expect = gcd(l, 91) as f64;
        assert!(
            (g - expect).abs() / expect < 1e-6,
            "g_91({l}) = {g}, want {expect}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("acceptance 01 PASS: g_91(l) = gcd(l, 91) for all l in [1, 91] ({elapsed:?})");
}

#[test]
fn criterion_02_integer_spectrum_discriminates_at_m8() {
    let start = Instant::now();
    let n = comp(91);
    for l in 2..=20u64 {
        let a = truncated_sum(n, frac(l, 1), 8).unwrap();
        let mag = a.magnitude();
        // exact magnitudes against the independent oracle
        let b = naive_sum(91, frac(l, 1), 8).unwrap();
        let diff = ((a.re - b.re).powi(2) + (a.im - b.im).powi(2)).sqrt();
        assert!(diff <= 1e-7, "l={l}: kernel/oracle differ by {diff:e}");

        if l == 7 || l == 13 {
            assert!((mag - 1.0).abs() <= 1e-12, "factor l={l}: |A| = {mag}");
        } else if l == 4 {
            // l = 4 is the permanent ghost of the quadratic sum: with
            // 91 ≡ 3 (mod 4) the phases alternate 0, 3/4, so the partial
            // sums are (k+1) - ki and |A| ≥ 1/√2 for every truncation,
            // approaching it from above at even M. M = 8 gives √41/9.
            let expect = 41f64.sqrt() / 9.0;
            assert!((mag - expect).abs() <= 1e-12, "l=4: |A| = {mag}");
            assert!(mag < 1.0 - UNITY_TOLERANCE, "l=4 must never reach unity");
        } else {
            assert!(
                mag < NONFACTOR_THRESHOLD,
                "non-factor l={l}: |A| = {mag} is not below 1/√2"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 0.1, "took {elapsed:?}");
    println!(
        "acceptance 02 PASS: M=8 spectrum of 91 — unity exactly at 7 and 13, \
         every other integer in [2, 20] below 1/√2 except the structural \
         l=4 ghost at √41/9, all magnitudes matching the oracle ({elapsed:?})"
    );
}

#[test]
fn criterion_03_rational_grid_window_reproduction() {
    let n = comp(91);
    let scan = rational_scan_range(n, 10, 8, frac(1, 1), frac(3, 1)).unwrap();
    assert_eq!(scan.samples.len(), 20);
    let peaks: Vec<ReducedFraction> = scan
        .samples
        .iter()
        .filter(|s| s.amplitude.magnitude() >= 1.0 - UNITY_TOLERANCE)
        .map(|s| s.argument)
        .collect();
    assert_eq!(
        peaks,
        vec![frac(13, 10), frac(7, 5), frac(13, 5)],
        "unity peaks on the s0=10 grid over (1, 3]"
    );
    let mut expected = trial_division(91);
    expected.dedup();
    assert_eq!(scan.report.factors, expected);
    println!(
        "acceptance 03 PASS: s0=10 grid over (1, 3] peaks exactly at \
         {{13/10, 7/5, 13/5}} and yields factors {{7, 13}}"
    );
}

#[test]
fn criterion_04_unity_peak_predicate_exhaustive() {
    let start = Instant::now();
    let coprime_pairs: Vec<(u64, u64)> = (1..=30u64)
        .flat_map(|r| (1..=30u64).map(move |s| (r, s)))
        .filter(|&(r, s)| gcd(r, s) == 1)
        .collect();

    let counterexamples: u64 = (2..=300u64)
        .into_par_iter()
        .map(|n_val| {
            let n = comp(n_val);
            let mut bad = 0u64;
            for &(r, s) in &coprime_pairs {
                let xi = frac(r, s);
                let divides = n_val % r == 0;
                for m in 1..=20u32 {
                    let mag = truncated_sum(n, xi, m).unwrap().magnitude();
                    let unity = (mag - 1.0).abs() <= 1e-12;
                    if unity != divides {
                        eprintln!("counterexample: N={n_val} xi={r}/{s} M={m} |A|={mag}");
                        bad += 1;
                    }
                }
            }
            bad
        })
        .sum();

    assert_eq!(counterexamples, 0);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "acceptance 04 PASS: exact unity ⇔ numerator divides N over all \
         N ≤ 300, r ≤ 30, s ≤ 30, M ≤ 20 ({elapsed:?})"
    );
}

#[test]
fn criterion_05_no_full_n_peak_inside_root_window() {
    let violations: u64 = (4..=500u64)
        .into_par_iter()
        .map(|n| {
            if gauss_core::primes::is_prime(n) {
                return 0;
            }
            let mut bad = 0u64;
            let mut s0 = 2u64;
            while s0 * s0 < n {
                let l_last = (n as u128 * s0 as u128 * s0 as u128).isqrt() as u64;
                let points =
                    grid(s0, ReducedFraction::ONE, frac(l_last, s0)).unwrap();
                for p in points {
                    if p.numerator() == n {
                        eprintln!("full-N point {p} on grid N={n} s0={s0}");
                        bad += 1;
                    }
                }
                s0 += 1;
            }
            bad
        })
        .sum();
    assert_eq!(violations, 0);
    println!(
        "acceptance 05 PASS: no grid point in (1, √N] reduces to numerator N \
         for any composite N ≤ 500 and any s0 < √N"
    );
}

#[test]
fn criterion_06_degeneracy_profile_reproduction() {
    let profile = degeneracy_profile(comp(21), 21).unwrap();
    assert_eq!(profile.count(frac(7, 2)), 2);
    assert_eq!(profile.count(frac(1, 1)), 3);
    assert_eq!(detect_periods(&profile), vec![3, 7]);
    println!(
        "acceptance 06 PASS: profile of 21 has D(7/2) = 2 and D(1/1) = 3; \
         period detection returns {{3, 7}}"
    );
}

#[test]
fn criterion_07_degeneracy_method_on_all_small_semiprimes() {
    let mut checked = 0u64;
    for n in 4..=200u64 {
        let mut fs = trial_division(n);
        if fs.len() != 2 {
            continue;
        }
        fs.dedup();
        let profile = degeneracy_profile(comp(n), n).unwrap();
        assert_eq!(detect_periods(&profile), fs, "N={n}");
        checked += 1;
    }
    assert!(checked >= 50, "only {checked} semiprimes covered");
    println!(
        "acceptance 07 PASS: degeneracy periods recover the prime factors of \
         all {checked} semiprimes N ≤ 200"
    );
}

#[test]
fn criterion_08_fourth_root_truncation_scaling() {
    let start = Instant::now();
    let ns = [143u64, 1763, 10403, 104927, 1_040_399, 6_335_093];
    let rows = scaling_experiment(&SumVariant::Quadratic, &ns).unwrap();

    // sweep pins (first run of the sweep, frozen)
    let pinned = [1u32, 3, 6, 6, 19, 20];
    let measured: Vec<u32> = rows.iter().map(|r| r.m_min).collect();
    assert_eq!(measured, pinned, "minimal sufficient M drifted");

    for w in rows.windows(2) {
        assert!(
            w[1].m_min >= w[0].m_min,
            "M_min not nondecreasing: {} before {}",
            w[0].m_min,
            w[1].m_min
        );
    }
    for r in &rows {
        let bound = 4.0 * (r.n as f64).powf(0.25);
        assert!(
            (r.m_min as f64) <= bound,
            "N={}: M_min={} exceeds 4·N^(1/4)={bound:.1}",
            r.n,
            r.m_min
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "took {elapsed:?}");
    println!(
        "acceptance 08 PASS: M_min = {measured:?} over {ns:?} — nondecreasing \
         and within 4·N^(1/4) ({elapsed:?})"
    );
}

#[test]
fn criterion_09_higher_power_sum_term_requirement() {
    let n = comp(10403);
    let m2 = minimal_sufficient_m(n, &SumVariant::Quadratic, 200)
        .unwrap()
        .expect("quadratic sweep must terminate");
    let m3 = minimal_sufficient_m(n, &SumVariant::Power(3), 200)
        .unwrap()
        .expect("cubic sweep must terminate");

    // sweep pins (first run of the sweep, frozen)
    assert_eq!(m2, 6, "quadratic M_min at N=10403 drifted");
    assert_eq!(m3, 10, "cubic M_min at N=10403 drifted");

    assert!(
        m3 <= m2,
        "measured M_min(j=3) = {m3} exceeds M_min(j=2) = {m2} at N = 10403: \
         over the non-factor primes below √N the cubic sum needs more terms \
         than the quadratic one at this N (the 2j-th-root growth advantage \
         is asymptotic, not pointwise; at N = 1040399 the sweep gives 9 vs 19)"
    );
    println!("acceptance 09 PASS: M_min(j=3) = {m3} ≤ M_min(j=2) = {m2} at N = 10403");
}

#[test]
fn criterion_10_random_phase_method_at_desk_record_scale() {
    let start = Instant::now();
    let p = 999_979u64;
    let q = 999_983u64;
    let n_val = p * q; // 999_962_000_357 ≈ 10^12
    assert_eq!(trial_division(n_val), vec![p, q]);
    let n = comp(n_val);

    let m = TruncationPolicy::log_random().resolve(n);
    assert_eq!(m, 3 * 40, "3·⌈log₂N⌉ for N ≈ 10^12");
    let pool = default_random_m_max(n);

    // factors give exactly 1 regardless of seed
    for seed in [1u64, 7, 99] {
        for l in [p, q] {
            let a = random_phase_sum(n, l, m, pool, seed).unwrap();
            assert_eq!((a.re, a.im), (1.0, 0.0), "factor {l} seed {seed}");
        }
    }

    // 100 seeds × 100 random non-factor trial integers
    let root = n_val.isqrt();
    let above: u64 = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut above = 0u64;
            for _ in 0..100 {
                let l = loop {
                    let candidate = rng.random_range(2..=root);
                    if n_val % candidate != 0 {
                        break candidate;
                    }
                };
                let point_seed = gauss_core::strategies::derive_seed(seed, n_val, l);
                let a = random_phase_sum(n, l, m, pool, point_seed).unwrap();
                if a.magnitude() >= NONFACTOR_THRESHOLD {
                    above += 1;
                }
            }
            above
        })
        .sum();

    let fraction = above as f64 / 10_000.0;
    assert!(
        fraction < 0.05,
        "{above}/10000 non-factor trials at or above 1/√2"
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "acceptance 10 PASS: 120 random terms factor {p}·{q}; non-factor \
         false-positive fraction {fraction:.4} < 5% ({elapsed:?})"
    );
}

#[test]
fn criterion_11_weighted_spectrum_peaks_at_factors() {
    let n = comp(91);
    let weights = WeightProfile::gaussian(10.0).unwrap();
    let value = |xi: f64| continuous_sum(n, xi, &weights).unwrap().magnitude_sq();

    let at_factors = [value(7.0), value(13.0)];
    for nonfactor in [2.0, 3.0, 5.0, 11.0] {
        let v = value(nonfactor);
        for (f, fv) in [(7.0, at_factors[0]), (13.0, at_factors[1])] {
            assert!(
                fv > v,
                "|S(ξ={f})|² = {fv:.6} does not exceed |S(ξ={nonfactor})|² = {v:.6}"
            );
        }
    }

    // finite everywhere on [1, 16]
    let mut xi = 1.0f64;
    while xi <= 16.0 {
        let a = continuous_sum(n, xi, &weights).unwrap();
        assert!(a.re.is_finite() && a.im.is_finite(), "non-finite at ξ={xi}");
        xi += 0.01;
    }
    println!(
        "acceptance 11 PASS: |S_91|² with δm = 10 is larger at the factors 7 \
         and 13 than at any non-factor prime in {{2, 3, 5, 11}}, finite on [1, 16]"
    );
}
