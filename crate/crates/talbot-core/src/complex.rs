use core::ops::{Add, AddAssign, Mul, Sub};

use crate::math;

/// Complex field amplitude in the dimensionless screen frame.
///
/// Only the handful of operations the phasor sums need; intensities are
/// squared moduli and never go negative.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexAmplitude {
    pub re: f64,
    pub im: f64,
}

impl ComplexAmplitude {
    pub const ZERO: Self = Self { re: 0.0, im: 0.0 };
    pub const ONE: Self = Self { re: 1.0, im: 0.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    /// Unit phasor `exp(i·phase)`.
    pub fn from_phase(phase: f64) -> Self {
        let (s, c) = math::sincos(phase);
        Self { re: c, im: s }
    }

    /// Squared modulus, i.e. the intensity carried by this amplitude.
    pub fn intensity(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn modulus(self) -> f64 {
        math::sqrt(self.intensity())
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(k * self.re, k * self.im)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Add for ComplexAmplitude {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for ComplexAmplitude {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for ComplexAmplitude {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for ComplexAmplitude {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phasor_has_unit_intensity() {
        for k in -10..=10 {
            let z = ComplexAmplitude::from_phase(0.37 * k as f64);
            assert!((z.intensity() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn product_adds_phases() {
        let a = ComplexAmplitude::from_phase(0.3);
        let b = ComplexAmplitude::from_phase(1.1);
        let ab = a * b;
        let direct = ComplexAmplitude::from_phase(1.4);
        assert!((ab.re - direct.re).abs() < 1e-15);
        assert!((ab.im - direct.im).abs() < 1e-15);
    }
}
