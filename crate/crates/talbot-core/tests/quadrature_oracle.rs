//! Oracle checks: the closed-form paths are compared against adaptive
//! Simpson quadrature of the defining integrals. The oracle knows nothing
//! about power series, auxiliary functions, or Fresnel-pair composition.

use std::f64::consts::PI;

use talbot_core::analytic::delta_amplitude;
use talbot_core::fresnel::{fresnel_cs, kirchhoff_field};

/// Adaptive Simpson with Richardson correction.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(a: f64, fa: f64, fm: f64, b: f64, fb: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        m: f64,
        fm: f64,
        b: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let flm = f(lm);
        let rm = 0.5 * (m + b);
        let frm = f(rm);
        let left = simpson(a, fa, flm, m, fm);
        let right = simpson(m, fm, frm, b, fb);
        let split = left + right;
        if depth == 0 || (split - whole).abs() <= 15.0 * tol {
            return split + (split - whole) / 15.0;
        }
        // Halve the tolerance towards the children, but never below the
        // rounding floor of the panel sums themselves; otherwise the
        // recursion cannot terminate. This requires integrand values
        // accurate to ~1 ulp at exact f64 abscissas, which is why the
        // chirp below goes through a double-double phase.
        let child = (0.5 * tol).max(1e-15 * (b - a));
        recurse(f, a, fa, lm, flm, m, fm, left, child, depth - 1)
            + recurse(f, m, fm, rm, frm, b, fb, right, child, depth - 1)
    }

    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, fa, fm, b, fb);
    recurse(f, a, fa, m, fm, b, fb, whole, tol, 48)
}

/// `(pi/2) u^2` as a head/tail pair. The naive product loses ~pi*u*ulp(u)
/// of phase, which at `u = 50` is far above the 1e-13 oracle tolerance;
/// splitting the squaring and the pi/2 multiplication keeps the phase good
/// to ~1 ulp of the result.
fn chirp_phase(u: f64) -> (f64, f64) {
    const HALF_PI_HI: f64 = std::f64::consts::FRAC_PI_2;
    const HALF_PI_LO: f64 = 6.123_233_995_736_766e-17;
    let sq = u * u;
    let sq_err = f64::mul_add(u, u, -sq);
    let hi = sq * HALF_PI_HI;
    let lo = f64::mul_add(sq, HALF_PI_HI, -hi) + sq * HALF_PI_LO + sq_err * HALF_PI_HI;
    (hi, lo)
}

fn chirp_cos(u: f64) -> f64 {
    let (hi, lo) = chirp_phase(u);
    hi.cos() - lo * hi.sin()
}

fn chirp_sin(u: f64) -> f64 {
    let (hi, lo) = chirp_phase(u);
    hi.sin() + lo * hi.cos()
}

/// Oracle values of (C, S) on an ascending grid, integrating segment by
/// segment so the chirp never has to be traversed from zero repeatedly.
fn fresnel_oracle_grid(ts: &[f64], tol: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(ts.len());
    let mut c = 0.0;
    let mut s = 0.0;
    let mut prev = 0.0;
    for &t in ts {
        assert!(t >= prev, "grid must ascend from 0");
        c += adaptive_simpson(&chirp_cos, prev, t, tol);
        s += adaptive_simpson(&chirp_sin, prev, t, tol);
        out.push((c, s));
        prev = t;
    }
    out
}

#[test]
fn fresnel_cs_matches_direct_quadrature() {
    let spots = [
        0.1, 0.5, 1.0, 1.3, 1.6, 1.61, 2.2, 3.0, 3.5, 3.99, 4.0, 4.01, 5.5, 7.3, 12.5, 29.7, 50.0,
    ];
    let oracle = fresnel_oracle_grid(&spots, 1e-13);
    for (t, (c_ref, s_ref)) in spots.iter().zip(oracle) {
        let pair = fresnel_cs(*t).unwrap();
        assert!(
            (pair.c - c_ref).abs() <= 1e-10,
            "C({t}): {} vs oracle {c_ref}",
            pair.c
        );
        assert!(
            (pair.s - s_ref).abs() <= 1e-10,
            "S({t}): {} vs oracle {s_ref}",
            pair.s
        );
    }
}

#[test]
fn known_fresnel_values_from_the_oracle() {
    // Frozen from the quadrature itself and cross-checked against the
    // closed-form path.
    let c1 = adaptive_simpson(&chirp_cos, 0.0, 1.0, 1e-14);
    let s1 = adaptive_simpson(&chirp_sin, 0.0, 1.0, 1e-14);
    assert!((c1 - 0.779_893_400_376_822_8).abs() < 1e-12, "{c1}");
    assert!((s1 - 0.438_259_147_390_354_8).abs() < 1e-12, "{s1}");
}

/// Direct quadrature of the finite-slit field: per-slit integrals of the
/// oscillatory chirp, no Fresnel special functions anywhere.
fn field_by_quadrature(slit_count: u64, n_eff: f64, fill: f64, chi: f64) -> (f64, f64) {
    let half = ((slit_count - 1) / 2) as i64;
    let mut re = 0.0;
    let mut im = 0.0;
    for q in -half..=half {
        let lo = q as f64 - 0.5 * fill;
        let hi = q as f64 + 0.5 * fill;
        let re_f = |xi: f64| (PI * (xi - chi) * (xi - chi) / n_eff).cos();
        let im_f = |xi: f64| (PI * (xi - chi) * (xi - chi) / n_eff).sin();
        re += adaptive_simpson(&re_f, lo, hi, 1e-13);
        im += adaptive_simpson(&im_f, lo, hi, 1e-13);
    }
    (re, im)
}

#[test]
fn kirchhoff_field_matches_direct_quadrature() {
    let cases = [
        (5u64, 3.0, 0.2, 0.5),
        (5, 3.0, 0.2, 1.5),
        (5, 3.0, 0.2, 0.37),
        (9, 11.0011, 0.05, 3.5),
        (15, 5.0, 0.4, -2.5),
    ];
    for (slit_count, n_eff, fill, chi) in cases {
        let closed = kirchhoff_field(slit_count, n_eff, fill, chi).unwrap();
        let (re, im) = field_by_quadrature(slit_count, n_eff, fill, chi);
        let scale = (re * re + im * im).sqrt().max(1e-3);
        assert!(
            (closed.re - re).abs() <= 1e-9 * scale && (closed.im - im).abs() <= 1e-9 * scale,
            "N={slit_count} n_eff={n_eff} fill={fill} chi={chi}: ({}, {}) vs ({re}, {im})",
            closed.re,
            closed.im
        );
    }
}

#[test]
fn point_slit_amplitude_is_the_small_fill_limit_of_the_quadrature() {
    let fill = 1e-4;
    for chi in [0.5, 2.5] {
        let (re, im) = field_by_quadrature(5, 3.0, fill, chi);
        let point = delta_amplitude(5, 3, chi).unwrap();
        assert!(((re / fill) - point.re).abs() < 1e-3);
        assert!(((im / fill) - point.im).abs() < 1e-3);
    }
}
