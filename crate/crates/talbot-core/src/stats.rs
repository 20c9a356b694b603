//! Spike statistics, wavelength scans, divisor detection, and the
//! recursive factoring driver.
//!
//! The detector is the RMS relative variation of the spike heights over
//! the half-pattern `l = 1 ..= (N-1)/2`:
//!
//! ```text
//! mean  = (2/(N-1)) sum_l values[l]
//! sigma = sqrt( (2/(N-1)) sum_l (1 - values[l]/mean)^2 )
//! ```
//!
//! In the point-slit model `sigma` vanishes exactly when the resonance
//! order divides the slit count, so scanning the odd orders and collecting
//! the zeros reads the divisors straight off the pattern. Everything here
//! is deterministic: fixed grids, fixed summation order, one result per
//! input regardless of how callers schedule the per-order work.

use alloc::vec;
use alloc::vec::Vec;

use crate::analytic::{delta_spike_series, SpikeSeries};
use crate::fresnel::{kirchhoff_spike_series, slit_averaged_series};
use crate::grating::reduce_even;
use crate::{math, Error, Result};

/// Mean and RMS relative variation of a spike series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationStats {
    mean: f64,
    rms: f64,
    peak_count: usize,
}

impl VariationStats {
    /// Mean spike intensity.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// RMS relative deviation from the mean; zero iff all spikes are equal.
    pub fn rms(&self) -> f64 {
        self.rms
    }

    pub fn peak_count(&self) -> usize {
        self.peak_count
    }
}

/// RMS spike-height variation of a series. Errors on an all-zero series,
/// where the relative deviation is undefined.
pub fn variation(series: &SpikeSeries) -> Result<VariationStats> {
    let values = series.values();
    if values.is_empty() {
        return Err(Error::InvalidSeries { reason: "empty series" });
    }
    let len = values.len() as f64;
    let mean = values.iter().sum::<f64>() / len;
    if mean <= 0.0 {
        return Err(Error::ZeroMeanIntensity);
    }
    let mut sum_sq = 0.0;
    for v in values {
        let dev = 1.0 - v / mean;
        sum_sq += dev * dev;
    }
    Ok(VariationStats {
        mean,
        rms: math::sqrt(sum_sq / len),
        peak_count: values.len(),
    })
}

/// Which pattern model a scan or factorization runs on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Point slits; divisor orders give exact zeros.
    Delta,
    /// Finite slits of the given fill ratio `s/a`.
    Fresnel { fill: f64 },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Delta => "delta",
            Model::Fresnel { .. } => "fresnel",
        }
    }

    pub fn fill(&self) -> f64 {
        match self {
            Model::Delta => 0.0,
            Model::Fresnel { fill } => *fill,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Model::Fresnel { fill } = self {
            if !(fill.is_finite() && *fill > 0.0 && *fill < 1.0) {
                return Err(Error::FillOutOfRange { fill: *fill });
            }
        }
        Ok(())
    }
}

/// One `(order, sigma)` point of a wavelength scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub order: u64,
    pub sigma: f64,
}

/// RMS variation versus resonance order for one slit count and model.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanCurve {
    slit_count: u64,
    model: Model,
    points: Vec<ScanPoint>,
}

impl ScanCurve {
    /// Assemble a curve from per-order results, enforcing the grid
    /// invariants: orders strictly increasing, odd, inside `[3, N-2]`.
    pub fn from_points(slit_count: u64, model: Model, points: Vec<ScanPoint>) -> Result<Self> {
        let mut previous = 1u64;
        for p in &points {
            if p.order % 2 == 0 {
                return Err(Error::EvenOrder { order: p.order });
            }
            if p.order <= previous || p.order > slit_count.saturating_sub(2) {
                return Err(Error::OrderOutOfRange { order: p.order, slit_count });
            }
            if !(p.sigma.is_finite() && p.sigma >= 0.0) {
                return Err(Error::InvalidSeries { reason: "sigma must be finite and >= 0" });
            }
            previous = p.order;
        }
        Ok(Self { slit_count, model, points })
    }

    pub fn slit_count(&self) -> u64 {
        self.slit_count
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn points(&self) -> &[ScanPoint] {
        &self.points
    }

    /// All scanned orders whose variation is at or below `threshold`,
    /// ascending. In the point-slit model with a rounding-level threshold
    /// these are exactly the odd divisors of the slit count.
    ///
    /// # Panics
    /// If `threshold` is not positive.
    pub fn detect_divisors(&self, threshold: f64) -> Vec<u64> {
        assert!(threshold > 0.0, "threshold must be positive");
        self.points
            .iter()
            .filter(|p| p.sigma <= threshold)
            .map(|p| p.order)
            .collect()
    }
}

/// The odd resonance orders a scan visits: `3, 5, ..., N-2`. The trivial
/// divisors 1 and N are skipped.
pub fn scan_orders(slit_count: u64) -> impl Iterator<Item = u64> {
    (3..=slit_count.saturating_sub(2)).step_by(2)
}

/// RMS variation at a single resonance order. One call is one unit of
/// scan work; callers may evaluate orders in any schedule as long as the
/// curve is assembled in grid order.
pub fn sigma_for_order(slit_count: u64, order: u64, model: Model) -> Result<f64> {
    let series = match model {
        Model::Delta => delta_spike_series(slit_count, order)?,
        Model::Fresnel { fill } => kirchhoff_spike_series(slit_count, order, 0.0, fill)?,
    };
    variation(&series).map(|v| v.rms())
}

/// Scan all odd orders in `[3, N-2]` and record the RMS variation at each.
pub fn scan(slit_count: u64, model: Model) -> Result<ScanCurve> {
    if slit_count % 2 == 0 {
        return Err(Error::EvenSlitCount { slit_count });
    }
    if slit_count < 9 {
        return Err(Error::SlitCountTooSmall { slit_count, min: 9 });
    }
    model.validate()?;
    let mut points = Vec::new();
    for order in scan_orders(slit_count) {
        points.push(ScanPoint { order, sigma: sigma_for_order(slit_count, order, model)? });
    }
    ScanCurve::from_points(slit_count, model, points)
}

/// Prime factorization by trial division, ascending with multiplicity.
/// Returns an empty list for 0 and 1. Used as the arithmetic oracle the
/// interferometric factorization is checked against.
pub fn trial_division(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    if n < 2 {
        return factors;
    }
    while n % 2 == 0 {
        factors.push(2);
        n /= 2;
    }
    let mut d = 3;
    while d * d <= n {
        while n % d == 0 {
            factors.push(d);
            n /= d;
        }
        d += 2;
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

/// Outcome of an end-to-end factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorReport {
    input: u64,
    divisors: Vec<u64>,
    sigma_table: Vec<ScanPoint>,
    threshold: f64,
    model: Model,
    oracle_agrees: bool,
}

impl FactorReport {
    pub fn input(&self) -> u64 {
        self.input
    }

    /// Prime divisors, ascending with multiplicity; their product is the
    /// input.
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// The `(order, sigma)` table of the first scan, i.e. of the odd core
    /// of the input. Empty when the core is too small to scan.
    pub fn sigma_table(&self) -> &[ScanPoint] {
        &self.sigma_table
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Whether the divisor multiset matches trial division of the input.
    pub fn oracle_agrees(&self) -> bool {
        self.oracle_agrees
    }
}

/// Recursive interferometric factorization with a pluggable scan provider,
/// so thread-pooled drivers can reuse the recursion and bookkeeping.
///
/// Powers of two are stripped arithmetically; the odd core is then
/// repeatedly scanned, the smallest detected order (prime by induction:
/// any smaller odd factor of it would have been detected first) divided
/// out, until the scan finds nothing, i.e. the core is prime. Cores below
/// 9 are too small to scan and are prime or 1 by inspection. The final
/// multiset is cross-checked against [`trial_division`].
pub fn factorize_with<F>(
    input: u64,
    threshold: f64,
    model: Model,
    mut scan_provider: F,
) -> Result<FactorReport>
where
    F: FnMut(u64) -> Result<ScanCurve>,
{
    if input == 0 {
        return Err(Error::ZeroInput);
    }
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(Error::InvalidThreshold { threshold });
    }
    model.validate()?;
    let reduced = reduce_even(input)?;
    if let Model::Fresnel { fill } = model {
        // Finite slits wash the divisor zeros out once the slit count gets
        // large relative to 1/fill; refuse configurations where detection
        // is not reliable.
        let limit = (0.5 / reduced.odd_core() as f64).min(1e-3);
        if reduced.odd_core() >= 9 && fill > limit {
            return Err(Error::FillTooLargeForDetection { fill, limit });
        }
    }
    let mut divisors = vec![2u64; reduced.powers_of_two() as usize];
    let mut core = reduced.odd_core();
    let mut sigma_table = Vec::new();
    let mut first_scan = true;
    while core > 1 {
        if core < 9 {
            // 3, 5, 7 are prime; 9 is the smallest odd composite.
            divisors.push(core);
            break;
        }
        let curve = scan_provider(core)?;
        if first_scan {
            sigma_table = curve.points().to_vec();
            first_scan = false;
        }
        let detected = curve.detect_divisors(threshold);
        match detected.first() {
            None => {
                divisors.push(core);
                break;
            }
            Some(&order) => {
                if core % order != 0 {
                    return Err(Error::DivisorMismatch { order, slit_count: core });
                }
                divisors.push(order);
                core /= order;
            }
        }
    }
    divisors.sort_unstable();
    let oracle_agrees = divisors == trial_division(input);
    Ok(FactorReport {
        input,
        divisors,
        sigma_table,
        threshold,
        model,
        oracle_agrees,
    })
}

/// [`factorize_with`] driven by the sequential [`scan`].
pub fn factorize(input: u64, threshold: f64, model: Model) -> Result<FactorReport> {
    factorize_with(input, threshold, model, |core| scan(core, model))
}

/// One point of a slit-width sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    /// Fill ratio `s/a`.
    pub fill: f64,
    /// Rescaled abscissa `fill * N / n`; the sweeps of different divisor
    /// pairs approximately collapse on this axis.
    pub rescaled: f64,
    /// Slit-averaged RMS variation at this fill.
    pub sigma: f64,
}

/// Slit-averaged RMS variation versus fill ratio for one divisor pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SlitWidthCurve {
    slit_count: u64,
    order: u64,
    points: Vec<SweepPoint>,
}

impl SlitWidthCurve {
    /// Assemble a curve from `(fill, sigma)` pairs, computing the rescaled
    /// abscissa and enforcing the invariants: a divisor pair, fills
    /// strictly increasing within `[0, 0.5]`, sigmas finite and
    /// non-negative.
    pub fn from_points(slit_count: u64, order: u64, points: Vec<(f64, f64)>) -> Result<Self> {
        if order == 0 || slit_count % order != 0 {
            return Err(Error::NotADivisor { order, slit_count });
        }
        let rescale = slit_count as f64 / order as f64;
        let mut previous = -1.0;
        let mut out = Vec::with_capacity(points.len());
        for (fill, sigma) in points {
            if !(fill.is_finite() && fill > previous && (0.0..=0.5).contains(&fill)) {
                return Err(Error::FillOutOfRange { fill });
            }
            if !(sigma.is_finite() && sigma >= 0.0) {
                return Err(Error::InvalidSeries { reason: "sigma must be finite and >= 0" });
            }
            previous = fill;
            out.push(SweepPoint { fill, rescaled: fill * rescale, sigma });
        }
        Ok(Self { slit_count, order, points: out })
    }

    pub fn slit_count(&self) -> u64 {
        self.slit_count
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Points with strictly increasing fill; the first is the `fill = 0`
    /// limit, whose sigma is the point-slit value.
    pub fn points(&self) -> &[SweepPoint] {
        &self.points
    }

    /// Rescaled abscissa where sigma first reaches `level`, by linear
    /// interpolation between grid points; `None` if the curve stays below.
    pub fn crossing(&self, level: f64) -> Option<f64> {
        if self.points.is_empty() {
            return None;
        }
        if self.points[0].sigma >= level {
            return Some(self.points[0].rescaled);
        }
        for pair in self.points.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if b.sigma >= level {
                let t = (level - a.sigma) / (b.sigma - a.sigma);
                return Some(a.rescaled + t * (b.rescaled - a.rescaled));
            }
        }
        None
    }
}

/// Sweep the slit-averaged variation over a uniform fill grid
/// `fill_max * j / steps`, `j = 1 ..= steps`, for a divisor pair
/// `order | slit_count`. The `fill = 0` limit (the point-slit sigma) is
/// included as the first point.
pub fn slit_width_sweep(
    slit_count: u64,
    order: u64,
    fill_max: f64,
    steps: u32,
) -> Result<SlitWidthCurve> {
    if slit_count % order != 0 {
        return Err(Error::NotADivisor { order, slit_count });
    }
    if !(fill_max.is_finite() && fill_max > 0.0 && fill_max <= 0.5) {
        return Err(Error::FillOutOfRange { fill: fill_max });
    }
    if steps < 2 {
        return Err(Error::InvalidStepCount { steps });
    }
    let delta_sigma = variation(&delta_spike_series(slit_count, order)?)?.rms();
    let mut points = vec![(0.0, delta_sigma)];
    for j in 1..=steps {
        let fill = fill_max * j as f64 / steps as f64;
        let sigma = variation(&slit_averaged_series(slit_count, order, fill)?)?.rms();
        points.push((fill, sigma));
    }
    SlitWidthCurve::from_points(slit_count, order, points)
}

/// Where one sweep first reaches the probe level, on the rescaled axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveCrossing {
    pub slit_count: u64,
    pub order: u64,
    /// `None` when the curve never reaches the level.
    pub abscissa: Option<f64>,
}

/// Spread of the crossing abscissae of a family of sweeps; tight spread
/// means the curves collapse onto a single shape in `fill * N / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollapseReport {
    level: f64,
    crossings: Vec<CurveCrossing>,
}

impl CollapseReport {
    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn crossings(&self) -> &[CurveCrossing] {
        &self.crossings
    }

    /// `(min, max)` over the curves that reach the level.
    pub fn spread(&self) -> Option<(f64, f64)> {
        let mut present = self.crossings.iter().filter_map(|c| c.abscissa);
        let first = present.next()?;
        let (mut lo, mut hi) = (first, first);
        for x in present {
            lo = lo.min(x);
            hi = hi.max(x);
        }
        Some((lo, hi))
    }

    /// `max / min` of the crossing abscissae; 1 for perfect collapse.
    pub fn ratio(&self) -> Option<f64> {
        self.spread().map(|(lo, hi)| hi / lo)
    }
}

/// Compare where each sweep first exceeds `level` on the rescaled axis.
/// Curves that never reach the level are reported as absent, not errors.
pub fn collapse_check(curves: &[SlitWidthCurve], level: f64) -> Result<CollapseReport> {
    if curves.len() < 2 {
        return Err(Error::TooFewCurves { count: curves.len() });
    }
    if !(level.is_finite() && level > 0.0) {
        return Err(Error::InvalidLevel { level });
    }
    let crossings = curves
        .iter()
        .map(|c| CurveCrossing {
            slit_count: c.slit_count(),
            order: c.order(),
            abscissa: c.crossing(level),
        })
        .collect();
    Ok(CollapseReport { level, crossings })
}
