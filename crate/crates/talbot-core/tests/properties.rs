//! Property tests for the model invariants.

use proptest::prelude::*;

use talbot_core::analytic::{
    delta_spike_series, periodic_kernel, phase_factor, phase_factor_reduced, sigma_brute,
    SpikeModel, SpikeSeries,
};
use talbot_core::fresnel::fresnel_cs;
use talbot_core::grating::{reduce_even, GratingConfig};
use talbot_core::stats::variation;

fn odd(max: u64) -> impl Strategy<Value = u64> {
    (0..=(max - 1) / 2).prop_map(|k| 2 * k + 1)
}

proptest! {
    // The spike kernel has period one for odd orders and value r at integers.
    #[test]
    fn kernel_period_one(
        r in odd(25),
        v in -10.0f64..10.0,
        shift in -5i64..5,
    ) {
        prop_assume!((v - v.round()).abs() > 1e-3);
        let a = periodic_kernel(r, v);
        let b = periodic_kernel(r, v + shift as f64);
        prop_assert!((a - b).abs() <= 1e-9 * r as f64, "P_{r}({v}) = {a} vs shifted {b}");
    }

    #[test]
    fn kernel_integer_value_is_r(r in odd(99), v in -20i64..20) {
        prop_assert_eq!(periodic_kernel(r, v as f64), r as f64);
    }

    // f(l, n, p + n, q) = f(l, n, p, q).
    #[test]
    fn phase_factor_period_n_in_p(
        l in -50i64..50,
        n in odd(49),
        p in -50i64..50,
        q in -50i64..50,
    ) {
        let a = phase_factor(l, n, p + n as i64, q);
        let b = phase_factor(l, n, p, q);
        prop_assert!((a.re - b.re).abs() <= 1e-11 && (a.im - b.im).abs() <= 1e-11);
    }

    // The difference-of-squares and integer-product forms agree.
    #[test]
    fn phase_factor_forms_agree(
        l in -50i64..50,
        n in odd(49),
        p in -50i64..50,
        q in -50i64..50,
    ) {
        let a = phase_factor(l, n, p, q);
        let b = phase_factor_reduced(l, n, p, q);
        prop_assert!((a.re - b.re).abs() <= 1e-12 && (a.im - b.im).abs() <= 1e-12);
    }

    // The group sum is the constant n, independent of the peak index.
    #[test]
    fn group_sum_is_constant_n(n in odd(41), l in -41i64..41) {
        let s = sigma_brute(l, n);
        prop_assert!((s.re - n as f64).abs() <= 1e-10, "Re = {}", s.re);
        prop_assert!(s.im.abs() <= 1e-10, "Im = {}", s.im);
    }

    // Divisor pairs give uniform spikes at exactly N^2/n.
    #[test]
    fn divisor_series_hits_height_law(n in odd(13), r in odd(13)) {
        let slit_count = n * r;
        prop_assume!(slit_count >= 3);
        let series = delta_spike_series(slit_count, n).unwrap();
        let expect = (slit_count * slit_count) as f64 / n as f64;
        for v in series.values() {
            prop_assert!((v / expect - 1.0).abs() <= 1e-9, "{v} vs {expect}");
        }
    }

    #[test]
    fn reduce_even_reconstructs_and_is_idempotent(n in 1u64..1_000_000_000) {
        let reduced = reduce_even(n).unwrap();
        prop_assert_eq!(reduced.odd_core() % 2, 1);
        prop_assert_eq!(reduced.odd_core() << reduced.powers_of_two(), n);
        let again = reduce_even(reduced.odd_core()).unwrap();
        prop_assert_eq!(again.powers_of_two(), 0);
        prop_assert_eq!(again.odd_core(), reduced.odd_core());
    }

    // Consecutive spikes are one period apart (to a rounding in the last place).
    #[test]
    fn spike_spacing_is_one_period(
        period_exp in -6i32..3,
        period_mant in 1.0f64..10.0,
        l in -1000i64..1000,
    ) {
        let period = period_mant * 10.0f64.powi(period_exp);
        let g = GratingConfig::new(143, period, 0.0, 10.0).unwrap();
        let gap = g.spike_position(l) - g.spike_position(l - 1);
        prop_assert!((gap - period).abs() <= 4.0 * f64::EPSILON * period.abs() * l.abs().max(1) as f64);
    }

    // The RMS variation only sees relative deviations.
    #[test]
    fn variation_is_scale_invariant(
        values in prop::collection::vec(0.1f64..100.0, 1..40),
        scale in 1e-6f64..1e6,
    ) {
        let slit_count = 2 * values.len() as u64 + 1;
        let base = SpikeSeries::from_values(3, slit_count, SpikeModel::Delta, values.clone()).unwrap();
        let scaled_values: Vec<f64> = values.iter().map(|v| v * scale).collect();
        let scaled = SpikeSeries::from_values(3, slit_count, SpikeModel::Delta, scaled_values).unwrap();
        let a = variation(&base).unwrap().rms();
        let b = variation(&scaled).unwrap().rms();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1e-12), "{a} vs {b}");
    }

    #[test]
    fn fresnel_odd_symmetry(t in -40.0f64..40.0) {
        let plus = fresnel_cs(t).unwrap();
        let minus = fresnel_cs(-t).unwrap();
        prop_assert_eq!(plus.c, -minus.c);
        prop_assert_eq!(plus.s, -minus.s);
    }

    #[test]
    fn fresnel_global_bounds(t in -200.0f64..200.0) {
        let pair = fresnel_cs(t).unwrap();
        prop_assert!(pair.c.abs() <= 0.8 && pair.s.abs() <= 0.8);
    }
}
