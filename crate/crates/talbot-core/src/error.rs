//! Error type shared by all modules.

use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can be rejected before or during a computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// Zero is not a valid integer to reduce or factor.
    ZeroInput,
    /// Slit counts must be odd once powers of two have been stripped.
    EvenSlitCount { slit_count: u64 },
    /// The operation needs at least this many slits.
    SlitCountTooSmall { slit_count: u64, min: u64 },
    /// Resonance orders must be odd.
    EvenOrder { order: u64 },
    /// The order must lie in `[1, slit_count]`.
    OrderOutOfRange { order: u64, slit_count: u64 },
    /// The operation is only defined when the order divides the slit count.
    NotADivisor { order: u64, slit_count: u64 },
    /// Grating period and screen distance must be positive and finite.
    InvalidGeometry { what: &'static str },
    /// Slit width must satisfy `0 <= s < a`.
    SlitWidthOutOfRange { fill: f64 },
    /// Fill ratio outside the open interval required by the operation.
    FillOutOfRange { fill: f64 },
    /// Fresnel-model divisor detection needs `fill <= min(1/(2N), 1e-3)`.
    FillTooLargeForDetection { fill: f64, limit: f64 },
    /// Non-finite floating-point argument.
    NonFiniteArgument { name: &'static str },
    /// Sampling window must be a non-empty finite interval.
    InvalidWindow,
    /// Need at least two samples per period.
    InvalidSampleDensity { samples_per_period: u32 },
    /// Step counts must satisfy the operation's parity/minimum rules.
    InvalidStepCount { steps: u32 },
    /// Detuning ranges must be positive and finite.
    InvalidDetuneRange { detune_max: f64 },
    /// Spike statistics are undefined when the mean intensity vanishes.
    ZeroMeanIntensity,
    /// Detection thresholds must be positive and finite.
    InvalidThreshold { threshold: f64 },
    /// A detected order failed the arithmetic divisibility cross-check.
    DivisorMismatch { order: u64, slit_count: u64 },
    /// Collapse checks need at least two curves.
    TooFewCurves { count: usize },
    /// Crossing levels must be positive and finite.
    InvalidLevel { level: f64 },
    /// A spike series failed its construction invariants.
    InvalidSeries { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::ZeroInput => write!(f, "input integer must be at least 1"),
            Error::EvenSlitCount { slit_count } => {
                write!(f, "slit count must be odd, got {slit_count}")
            }
            Error::SlitCountTooSmall { slit_count, min } => {
                write!(f, "slit count must be at least {min}, got {slit_count}")
            }
            Error::EvenOrder { order } => {
                write!(f, "resonance order must be odd, got {order}")
            }
            Error::OrderOutOfRange { order, slit_count } => {
                write!(f, "order {order} outside [1, {slit_count}]")
            }
            Error::NotADivisor { order, slit_count } => {
                write!(f, "order {order} does not divide slit count {slit_count}")
            }
            Error::InvalidGeometry { what } => {
                write!(f, "{what} must be positive and finite")
            }
            Error::SlitWidthOutOfRange { fill } => {
                write!(f, "slit width must satisfy 0 <= s < a, got s/a = {fill}")
            }
            Error::FillOutOfRange { fill } => {
                write!(f, "fill ratio must lie in (0, 1), got {fill}")
            }
            Error::FillTooLargeForDetection { fill, limit } => {
                write!(
                    f,
                    "fill ratio {fill} too large for reliable detection (limit {limit})"
                )
            }
            Error::NonFiniteArgument { name } => {
                write!(f, "argument `{name}` must be finite")
            }
            Error::InvalidWindow => write!(f, "window must be a finite interval with lo < hi"),
            Error::InvalidSampleDensity { samples_per_period } => {
                write!(f, "need at least 2 samples per period, got {samples_per_period}")
            }
            Error::InvalidStepCount { steps } => {
                write!(f, "invalid step count {steps} for this operation")
            }
            Error::InvalidDetuneRange { detune_max } => {
                write!(f, "detuning range must be positive and finite, got {detune_max}")
            }
            Error::ZeroMeanIntensity => {
                write!(f, "spike statistics undefined for an all-zero series")
            }
            Error::InvalidThreshold { threshold } => {
                write!(f, "detection threshold must be positive and finite, got {threshold}")
            }
            Error::DivisorMismatch { order, slit_count } => {
                write!(
                    f,
                    "internal inconsistency: detected order {order} does not divide {slit_count}"
                )
            }
            Error::TooFewCurves { count } => {
                write!(f, "collapse check needs at least 2 curves, got {count}")
            }
            Error::InvalidLevel { level } => {
                write!(f, "crossing level must be positive and finite, got {level}")
            }
            Error::InvalidSeries { reason } => write!(f, "invalid spike series: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
