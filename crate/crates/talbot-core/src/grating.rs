//! Physical grating geometry, the resonance-wavelength schedule, and the
//! reduction to the dimensionless frame shared by both pattern models.
//!
//! On resonance `lambda_n R = a^2 n`, so the Fresnel phase between slit
//! coordinate `xi` and screen coordinate `x` becomes
//! `pi (xi/a - x/a)^2 / n` and every downstream computation depends only
//! on `(N, n(1 + delta), s/a)`. SI lengths therefore live exclusively in
//! this module; the models never see metres.

use crate::{Error, Result};

/// An N-slit grating: slit count, period, slit width, screen distance.
///
/// `slit_count` is odd and at least 3 (strip factors of two with
/// [`reduce_even`] first), slits must not overlap, and the geometry must be
/// positive and finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GratingConfig {
    slit_count: u64,
    period: f64,
    slit_width: f64,
    screen_distance: f64,
}

impl GratingConfig {
    /// Lengths in metres.
    pub fn new(slit_count: u64, period: f64, slit_width: f64, screen_distance: f64) -> Result<Self> {
        if slit_count % 2 == 0 {
            return Err(Error::EvenSlitCount { slit_count });
        }
        if slit_count < 3 {
            return Err(Error::SlitCountTooSmall { slit_count, min: 3 });
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::InvalidGeometry { what: "period" });
        }
        if !(screen_distance.is_finite() && screen_distance > 0.0) {
            return Err(Error::InvalidGeometry { what: "screen distance" });
        }
        if !(slit_width.is_finite() && slit_width >= 0.0 && slit_width < period) {
            return Err(Error::SlitWidthOutOfRange { fill: slit_width / period });
        }
        Ok(Self { slit_count, period, slit_width, screen_distance })
    }

    pub fn slit_count(&self) -> u64 {
        self.slit_count
    }

    /// Grating period `a` in metres.
    pub fn period(&self) -> f64 {
        self.period
    }

    /// Slit width `s` in metres.
    pub fn slit_width(&self) -> f64 {
        self.slit_width
    }

    /// Screen distance `R` in metres.
    pub fn screen_distance(&self) -> f64 {
        self.screen_distance
    }

    /// `s/a`, derived; never stored separately.
    pub fn fill_ratio(&self) -> f64 {
        self.slit_width / self.period
    }

    /// Resonance of odd order `n`: wavelength `a^2 n / R`, zero detuning.
    pub fn resonance(&self, order: u64) -> Result<Resonance> {
        if order % 2 == 0 {
            return Err(Error::EvenOrder { order });
        }
        if order < 1 {
            return Err(Error::OrderOutOfRange { order, slit_count: self.slit_count });
        }
        let wavelength = self.period * self.period * order as f64 / self.screen_distance;
        Ok(Resonance { order, wavelength, detuning: 0.0 })
    }

    /// Position of the l'th self-image spike on the screen, `x = l a + a/2`.
    pub fn spike_position(&self, l: i64) -> f64 {
        (l as f64 + 0.5) * self.period
    }

    /// Strip the SI scales: both pattern models consume only this view
    /// plus the slit count.
    pub fn dimensionless_view(&self, resonance: &Resonance) -> DimensionlessView {
        DimensionlessView {
            n_eff: resonance.effective_order(),
            fill: self.fill_ratio(),
        }
    }
}

/// A tuning resonance: odd order `n`, its wavelength, and a relative
/// detuning `delta` so the illumination wavelength is `lambda_n (1 + delta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    order: u64,
    wavelength: f64,
    detuning: f64,
}

impl Resonance {
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The exact resonance wavelength `lambda_n = a^2 n / R` in metres.
    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn detuning(&self) -> f64 {
        self.detuning
    }

    /// Wavelength actually illuminating the grating, `lambda_n (1 + delta)`.
    pub fn illumination_wavelength(&self) -> f64 {
        self.wavelength * (1.0 + self.detuning)
    }

    /// Same resonance with the tuning error set to `detuning`.
    pub fn with_detuning(self, detuning: f64) -> Self {
        Self { detuning, ..self }
    }

    /// `n (1 + delta)`: the only way order and detuning enter the physics.
    pub fn effective_order(&self) -> f64 {
        self.order as f64 * (1.0 + self.detuning)
    }
}

/// What both models actually consume: effective order and fill ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessView {
    pub n_eff: f64,
    pub fill: f64,
}

/// An integer split into its power of two and odd core.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedProblem {
    original: u64,
    powers_of_two: u32,
    odd_core: u64,
}

impl ReducedProblem {
    pub fn original(&self) -> u64 {
        self.original
    }

    pub fn powers_of_two(&self) -> u32 {
        self.powers_of_two
    }

    pub fn odd_core(&self) -> u64 {
        self.odd_core
    }
}

/// Divide out factors of two: an even slit count already names a divisor,
/// so only the odd core ever reaches the interferometer.
pub fn reduce_even(n: u64) -> Result<ReducedProblem> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let powers_of_two = n.trailing_zeros();
    Ok(ReducedProblem {
        original: n,
        powers_of_two,
        odd_core: n >> powers_of_two,
    })
}
