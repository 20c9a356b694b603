//! Thin indirection over `libm` so the crate stays `no_std`.

pub(crate) use libm::{ceil, fabs, floor, round, sin, sincos, sqrt};
