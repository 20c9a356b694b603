//! Near-field self-imaging models for an N-slit grating and the
//! spike-uniformity divisor test built on top of them.
//!
//! An odd number N of slits with period `a`, illuminated at the resonance
//! wavelength `lambda_n = a^2 n / R` (n odd), forms a string of intensity
//! spikes at half-period screen positions `x = (l + 1/2) a`. The spike
//! heights are exactly uniform when n divides N and non-uniform otherwise,
//! so the RMS variation of the spike heights over one half-pattern acts as
//! a divisibility detector for N. Scanning n over the odd integers and
//! collecting the orders where the variation vanishes factors N.
//!
//! The crate is organised around two models of the pattern plus the
//! statistics that turn spike series into factoring decisions:
//!
//! - [`analytic`]: the point-slit (zero width) model, where peak heights
//!   have the closed form `N^2 / n` for divisors. Includes the brute-force
//!   group sum used to verify that law numerically.
//! - [`fresnel`]: the finite-slit model. Each slit contributes an exact
//!   quadratic-phase (chirp) integral expressed through the Fresnel
//!   integrals C and S, so no oscillatory quadrature appears on the main
//!   path.
//! - [`stats`]: RMS spike variation, wavelength scans, divisor detection,
//!   recursive factorization with a trial-division cross-check, slit-width
//!   sweeps and their collapse onto a common abscissa.
//! - [`grating`]: the SI-unit boundary. All physics is computed in a
//!   dimensionless frame (lengths in units of the period), which the
//!   grating types produce; the slit period and screen distance cancel
//!   exactly on resonance.
//!
//! The crate is `no_std` (it allocates but performs no IO); the companion
//! CLI crate adds file emission and thread-pool drivers.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod error;
pub mod fresnel;
pub mod grating;
pub mod stats;

mod complex;
mod math;

pub use complex::ComplexAmplitude;
pub use error::{Error, Result};
