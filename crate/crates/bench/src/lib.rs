//! Shared fixtures for the criterion benches.

use pcsample_core::synth::{gen_scanning_lidar, RangeProfile};
use pcsample_core::{bin_approx_sort, Axis, PointCloud};

/// Full-revolution scan, bin-sorted along `x` in bins of 128 points.
pub fn sorted_scan(n: usize, seed: u64) -> PointCloud {
    let cloud = gen_scanning_lidar(n, 360.0, &RangeProfile::outdoor(seed), 0.01, seed)
        .expect("valid generator parameters");
    bin_approx_sort(&cloud, Axis::X, 128.min(n), seed).expect("bin size fits")
}
