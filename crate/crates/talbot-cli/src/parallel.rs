//! Thread-pooled drivers for the scan-shaped workloads.
//!
//! Each grid point is an independent, internally sequential computation,
//! and results are assembled in grid order, so output is bit-identical to
//! the sequential drivers for any thread count.

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use talbot_core::stats::{
    self, factorize_with, FactorReport, Model, ScanCurve, ScanPoint, SlitWidthCurve,
};
use talbot_core::{Error, Result};

/// Build a pool with the requested thread count; 0 means "let the runtime
/// pick".
pub fn thread_pool(threads: usize) -> anyhow::Result<ThreadPool> {
    Ok(ThreadPoolBuilder::new().num_threads(threads).build()?)
}

/// Parallel version of [`stats::scan`]: same grid, same per-order results,
/// same curve.
pub fn scan(pool: &ThreadPool, slit_count: u64, model: Model) -> Result<ScanCurve> {
    if slit_count % 2 == 0 {
        return Err(Error::EvenSlitCount { slit_count });
    }
    if slit_count < 9 {
        return Err(Error::SlitCountTooSmall { slit_count, min: 9 });
    }
    let orders: Vec<u64> = stats::scan_orders(slit_count).collect();
    let points: Result<Vec<ScanPoint>> = pool.install(|| {
        orders
            .par_iter()
            .map(|&order| {
                stats::sigma_for_order(slit_count, order, model)
                    .map(|sigma| ScanPoint { order, sigma })
            })
            .collect()
    });
    ScanCurve::from_points(slit_count, model, points?)
}

/// Parallel version of [`stats::factorize`]: the recursion and oracle
/// bookkeeping are shared, only the scans fan out.
pub fn factorize(
    pool: &ThreadPool,
    input: u64,
    threshold: f64,
    model: Model,
) -> Result<FactorReport> {
    factorize_with(input, threshold, model, |core| scan(pool, core, model))
}

/// Parallel version of [`stats::slit_width_sweep`], fanning out over the
/// fill grid.
pub fn slit_width_sweep(
    pool: &ThreadPool,
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
    let delta_sigma = stats::variation(&talbot_core::analytic::delta_spike_series(
        slit_count, order,
    )?)?
    .rms();
    let swept: Result<Vec<(f64, f64)>> = pool.install(|| {
        (1..=steps)
            .into_par_iter()
            .map(|j| {
                let fill = fill_max * j as f64 / steps as f64;
                let series = talbot_core::fresnel::slit_averaged_series(slit_count, order, fill)?;
                Ok((fill, stats::variation(&series)?.rms()))
            })
            .collect()
    });
    let mut points = vec![(0.0, delta_sigma)];
    points.extend(swept?);
    SlitWidthCurve::from_points(slit_count, order, points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_scan_matches_sequential_bit_for_bit() {
        let sequential = stats::scan(105, Model::Delta).unwrap();
        for threads in [1usize, 2, 8] {
            let pool = thread_pool(threads).unwrap();
            let parallel = scan(&pool, 105, Model::Delta).unwrap();
            assert_eq!(parallel.points().len(), sequential.points().len());
            for (a, b) in parallel.points().iter().zip(sequential.points()) {
                assert_eq!(a.order, b.order);
                assert_eq!(a.sigma.to_bits(), b.sigma.to_bits(), "order {}", a.order);
            }
        }
    }

    #[test]
    fn parallel_factorize_matches_sequential() {
        let pool = thread_pool(4).unwrap();
        let a = factorize(&pool, 143, 1e-9, Model::Delta).unwrap();
        let b = stats::factorize(143, 1e-9, Model::Delta).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parallel_sweep_matches_sequential() {
        let pool = thread_pool(3).unwrap();
        let a = slit_width_sweep(&pool, 15, 3, 0.05, 6).unwrap();
        let b = stats::slit_width_sweep(15, 3, 0.05, 6).unwrap();
        assert_eq!(a.points().len(), b.points().len());
        for (x, y) in a.points().iter().zip(b.points()) {
            assert_eq!(x.fill.to_bits(), y.fill.to_bits());
            assert_eq!(x.sigma.to_bits(), y.sigma.to_bits());
        }
    }
}
