//! Point-slit (zero width) model of the resonant N-slit pattern.
//!
//! With slits idealised as point emitters and the illumination tuned to
//! `lambda_n = a^2 n / R`, the screen amplitude at `chi = x/a` is the bare
//! quadratic-phase sum
//!
//! ```text
//! psi(chi) = sum_{q=(1-N)/2}^{(N-1)/2} exp[i pi (chi - q)^2 / n]
//! ```
//!
//! which is what [`delta_amplitude`] evaluates for divisor and non-divisor
//! orders alike. When `n` divides `N` the sum factors into a period-one
//! spike kernel times a single n-slit group sum
//! ([`delta_amplitude_factored`]), and at the spike positions
//! `chi = l + 1/2` the group's squared modulus is the double sum
//!
//! ```text
//! Sigma(l, n) = sum_{p,q} exp{(i pi / n) [(l + 1/2 - q)^2 - (l + 1/2 - p)^2]}
//! ```
//!
//! which equals `n` for every `l` whenever `n` is odd. [`sigma_brute`]
//! computes that double sum literally, term by term, and is the numerical
//! witness for the uniform-spike law `peak intensity = r^2 n = N^2 / n`
//! (with `r = N/n`). No proportionality constants are applied anywhere:
//! raw phasor sums make the divisor peaks land on exact integers.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{math, ComplexAmplitude, Error, Result};

/// Half-width of the branch window in which the spike kernel's removable
/// singularities are replaced by their limit value; far below any sampling
/// step used by the pattern emitters.
const KERNEL_SINGULARITY_EPS: f64 = 1e-9;

/// Period-one spike kernel `sin(pi r v) / sin(pi v)`.
///
/// For odd `r` this is a string of positive spikes of height `r` centred
/// on integer `v`; the removable singularity at each integer is filled
/// with the limit value `r`.
///
/// # Panics
/// If `r` is even or zero (the kernel loses its period-one property).
pub fn periodic_kernel(r: u64, v: f64) -> f64 {
    assert!(r % 2 == 1, "kernel order must be odd, got {r}");
    if math::fabs(v - math::round(v)) < KERNEL_SINGULARITY_EPS {
        return r as f64;
    }
    math::sin(PI * r as f64 * v) / math::sin(PI * v)
}

/// Unit phase factor between slit indices `p` and `q` of one group, in its
/// defining difference-of-squares form:
///
/// ```text
/// f(l, n, p, q) = exp{(i pi / n) [(l + 1/2 - q)^2 - (l + 1/2 - p)^2]}
/// ```
pub fn phase_factor(l: i64, n: u64, p: i64, q: i64) -> ComplexAmplitude {
    debug_assert!(n % 2 == 1 && n >= 1);
    let dq = l as f64 + 0.5 - q as f64;
    let dp = l as f64 + 0.5 - p as f64;
    ComplexAmplitude::from_phase(PI * (dq * dq - dp * dp) / n as f64)
}

/// Same factor with the square difference expanded into the integer
/// product `(q - p)(q + p - 2l - 1)`; agrees with [`phase_factor`] to
/// rounding and makes the period-`n` recursion in `p` obvious.
pub fn phase_factor_reduced(l: i64, n: u64, p: i64, q: i64) -> ComplexAmplitude {
    debug_assert!(n % 2 == 1 && n >= 1);
    let m = (q - p) * (q + p - 2 * l - 1);
    ComplexAmplitude::from_phase(PI * m as f64 / n as f64)
}

/// Brute-force group sum `Sigma(l, n)`: the double sum of [`phase_factor`]
/// over `p, q` in `[(1-n)/2, (n-1)/2]`, ascending `p` then ascending `q`.
///
/// Equals `n + 0i` to rounding for every integer `l` and odd `n`; this
/// function exists to verify that, so it stays a literal term-by-term sum.
pub fn sigma_brute(l: i64, n: u64) -> ComplexAmplitude {
    assert!(n % 2 == 1 && n >= 1, "group size must be odd, got {n}");
    let half = ((n - 1) / 2) as i64;
    let mut acc = ComplexAmplitude::ZERO;
    for p in -half..=half {
        for q in -half..=half {
            acc += phase_factor(l, n, p, q);
        }
    }
    acc
}

pub(crate) fn ensure_odd_pair(slit_count: u64, order: u64) -> Result<()> {
    if slit_count % 2 == 0 {
        return Err(Error::EvenSlitCount { slit_count });
    }
    if order % 2 == 0 {
        return Err(Error::EvenOrder { order });
    }
    Ok(())
}

/// Point-slit field of the full N-slit sum at screen coordinate `chi`.
///
/// Takes the effective order as a real so detuned wavelengths reuse the
/// same path; summation runs over ascending slit index.
pub(crate) fn delta_field(slit_count: u64, n_eff: f64, chi: f64) -> ComplexAmplitude {
    let half = ((slit_count - 1) / 2) as i64;
    let mut acc = ComplexAmplitude::ZERO;
    for q in -half..=half {
        let d = chi - q as f64;
        acc += ComplexAmplitude::from_phase(PI * d * d / n_eff);
    }
    acc
}

/// Point-slit amplitude at `chi = x/a` for an N-slit grating illuminated
/// at the order-`n` resonance. Valid for divisor and non-divisor `n`.
pub fn delta_amplitude(slit_count: u64, order: u64, chi: f64) -> Result<ComplexAmplitude> {
    ensure_odd_pair(slit_count, order)?;
    Ok(delta_field(slit_count, order as f64, chi))
}

/// The factored form available when `order` divides the slit count:
/// spike kernel of height `r = N/n` times one n-slit group sum. Used as a
/// cross-check against [`delta_amplitude`]; they agree to rounding.
pub fn delta_amplitude_factored(slit_count: u64, order: u64, chi: f64) -> Result<ComplexAmplitude> {
    ensure_odd_pair(slit_count, order)?;
    if slit_count % order != 0 {
        return Err(Error::NotADivisor { order, slit_count });
    }
    let kernel = periodic_kernel(slit_count / order, chi - 0.5);
    let group = delta_field(order, order as f64, chi);
    Ok(group.scale(kernel))
}

/// Peak intensity `|psi(l + 1/2)|^2` with the quadratic phase reduced into
/// `[0, 2 pi)` in exact integer arithmetic.
///
/// At a peak each term's phase is `pi k^2 / (4n)` with `k = 2(l - q) + 1`
/// odd, and `k^2 mod 8n` leaves the phasor unchanged, so the reduction is
/// exact. This keeps divisor-order spike series uniform to machine
/// precision at any slit count, where feeding multi-million-radian
/// arguments to `sin` would not.
fn delta_peak_intensity(slit_count: u64, order: u64, l: i64) -> f64 {
    let half = ((slit_count - 1) / 2) as i64;
    let modulus = 8 * order as i128;
    let phase_unit = PI / (4.0 * order as f64);
    let mut acc = ComplexAmplitude::ZERO;
    for q in -half..=half {
        let k = (2 * (l - q) + 1) as i128;
        let m = (k * k).rem_euclid(modulus);
        acc += ComplexAmplitude::from_phase(phase_unit * m as f64);
    }
    acc.intensity()
}

/// Which model produced a spike series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpikeModel {
    /// Point slits, closed-form quadratic-phase sum.
    Delta,
    /// Finite slits, per-slit chirp integrals.
    Fresnel,
    /// Finite slits with the intensity averaged over one slit width
    /// around each peak.
    FresnelSlitAveraged,
}

impl SpikeModel {
    pub fn name(&self) -> &'static str {
        match self {
            SpikeModel::Delta => "delta",
            SpikeModel::Fresnel => "fresnel",
            SpikeModel::FresnelSlitAveraged => "fresnel-slit-averaged",
        }
    }
}

/// Peak intensities at `chi = l + 1/2` for `l = 1 ..= (N-1)/2`, together
/// with the resonance order and model that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SpikeSeries {
    order: u64,
    slit_count: u64,
    model: SpikeModel,
    values: Vec<f64>,
}

impl SpikeSeries {
    /// Build a series from raw values, enforcing the length and sign
    /// invariants: exactly `(N-1)/2` finite, non-negative entries.
    pub fn from_values(
        order: u64,
        slit_count: u64,
        model: SpikeModel,
        values: Vec<f64>,
    ) -> Result<Self> {
        if slit_count % 2 == 0 {
            return Err(Error::EvenSlitCount { slit_count });
        }
        if values.len() as u64 != (slit_count - 1) / 2 {
            return Err(Error::InvalidSeries { reason: "length must be (N-1)/2" });
        }
        if !values.iter().all(|v| v.is_finite() && *v >= 0.0) {
            return Err(Error::InvalidSeries { reason: "entries must be finite and non-negative" });
        }
        Ok(Self { order, slit_count, model, values })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn slit_count(&self) -> u64 {
        self.slit_count
    }

    pub fn model(&self) -> SpikeModel {
        self.model
    }

    /// Peak intensities indexed by `l - 1`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Point-slit spike series: `values[l-1] = |psi(l + 1/2)|^2` over the
/// half-pattern `l = 1 ..= (N-1)/2`.
///
/// For divisor orders every entry equals `N^2 / n` to rounding; for
/// non-divisors the heights differ.
pub fn delta_spike_series(slit_count: u64, order: u64) -> Result<SpikeSeries> {
    ensure_odd_pair(slit_count, order)?;
    if slit_count < 3 {
        return Err(Error::SlitCountTooSmall { slit_count, min: 3 });
    }
    if order < 1 || order > slit_count {
        return Err(Error::OrderOutOfRange { order, slit_count });
    }
    let peaks = ((slit_count - 1) / 2) as i64;
    let values = (1..=peaks)
        .map(|l| delta_peak_intensity(slit_count, order, l))
        .collect();
    SpikeSeries::from_values(order, slit_count, SpikeModel::Delta, values)
}
