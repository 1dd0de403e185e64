//! Synthetic clouds for the two acquisition regimes studied here, plus a
//! clustered/sparse mixture used to stress sampling quality.
//!
//! * [`gen_scanning_lidar`] models a multi-beam sensor spinning about `z`:
//!   points come out in azimuth order, so for a limited field of view the
//!   cloud is close to sorted along `x`.
//! * [`gen_stepper_lidar`] models a 2D scanner stepped vertically: every layer
//!   has a constant `z`, so the cloud is exactly sorted along `z`.
//! * [`gen_sparse_dense`] mixes tight clusters with a thin uniform background.

use std::f64::consts::TAU;

use rand::Rng as _;
use rand_distr::{Distribution, Normal};

use crate::cloud::{Axis, OrderTag, Point, PointCloud};
use crate::error::CloudError;
use crate::rng::{derive_seed, rng_from_seed, Rng};

/// Elevation angles of the simulated multi-beam scanner, in degrees.
pub const BEAM_ELEVATIONS_DEG: [f64; 16] = [
    -15.0, -13.0, -11.0, -9.0, -7.0, -5.0, -3.0, -1.0, 1.0, 3.0, 5.0, 7.0, 9.0, 11.0, 13.0, 15.0,
];

/// Azimuth at the centre of the sweep. `x = r cos(theta)` increases
/// monotonically over `[180, 360]` degrees, so any field of view up to 180
/// degrees centred here sweeps `x` in increasing order.
const SWEEP_CENTER_DEG: f64 = 270.0;

/// Horizontal range as a function of azimuth: a smooth random ripple on top
/// of piecewise-constant levels (objects at different depths).
#[derive(Debug, Clone, PartialEq)]
pub struct RangeProfile {
    base: f64,
    ripple: Vec<(f64, f64, f64)>,
    levels: Vec<f64>,
}

impl RangeProfile {
    pub fn constant(radius: f64) -> Self {
        RangeProfile {
            base: radius,
            ripple: Vec::new(),
            levels: vec![1.0],
        }
    }

    /// `harmonics` sinusoids with total relative amplitude at most
    /// `amplitude`, and `segments` equal azimuth arcs whose level is drawn from
    /// `[1 - step, 1 + step]`.
    pub fn random(
        base: f64,
        amplitude: f64,
        harmonics: usize,
        segments: usize,
        step: f64,
        seed: u64,
    ) -> Self {
        let mut rng = rng_from_seed(seed);
        let norm: f64 = (1..=harmonics).map(|h| 1.0 / h as f64).sum::<f64>().max(1.0);
        let ripple = (1..=harmonics)
            .map(|h| {
                let weight = rng.random_range(0.0..1.0) / h as f64 / norm * amplitude;
                (h as f64, weight, rng.random_range(0.0..TAU))
            })
            .collect();
        let levels = (0..segments.max(1))
            .map(|_| 1.0 + rng.random_range(-step..=step))
            .collect();
        RangeProfile {
            base,
            ripple,
            levels,
        }
    }

    /// Outdoor-like default: 20 m base range, 10% ripple over 4 harmonics,
    /// 6 depth segments of +-15%.
    pub fn outdoor(seed: u64) -> Self {
        Self::random(20.0, 0.1, 4, 6, 0.15, seed)
    }

    pub fn radius(&self, azimuth: f64) -> f64 {
        let theta = azimuth.rem_euclid(TAU);
        let segment = ((theta / TAU) * self.levels.len() as f64) as usize;
        let level = self.levels[segment.min(self.levels.len() - 1)];
        let ripple: f64 = self
            .ripple
            .iter()
            .map(|&(h, w, phase)| w * (h * theta + phase).sin())
            .sum();
        self.base * level * (1.0 + ripple)
    }
}

fn generator_error(msg: impl Into<String>) -> CloudError {
    CloudError::Generator(msg.into())
}

/// Spinning multi-beam sweep of `n` points over `fov_deg` degrees of azimuth.
///
/// Point `i` has its own azimuth, increasing with `i`, and beam
/// `i % BEAM_ELEVATIONS_DEG.len()`. The range is `profile(theta)` scaled by
/// `1 + jitter * u` with `u` uniform in `[-1, 1]`. The result is tagged
/// unsorted; its `x` locality is a by-product of the sweep.
pub fn gen_scanning_lidar(
    n: usize,
    fov_deg: f64,
    profile: &RangeProfile,
    jitter: f64,
    seed: u64,
) -> Result<PointCloud, CloudError> {
    if n < 2 {
        return Err(generator_error(format!("need at least 2 points, got {n}")));
    }
    if !(fov_deg > 0.0 && fov_deg <= 360.0) {
        return Err(generator_error(format!("field of view must be in (0, 360], got {fov_deg}")));
    }
    if !(jitter.is_finite() && jitter >= 0.0) {
        return Err(generator_error(format!("jitter must be non-negative, got {jitter}")));
    }
    let mut rng = rng_from_seed(seed);
    let fov = fov_deg.to_radians();
    let start = SWEEP_CENTER_DEG.to_radians() - fov / 2.0;
    // a full revolution must not repeat its first azimuth
    let steps = if fov_deg < 360.0 { n - 1 } else { n } as f64;
    let points = (0..n)
        .map(|i| {
            let theta = start + fov * i as f64 / steps;
            let elevation = BEAM_ELEVATIONS_DEG[i % BEAM_ELEVATIONS_DEG.len()].to_radians();
            let noise = if jitter > 0.0 {
                1.0 + jitter * rng.random_range(-1.0..=1.0)
            } else {
                1.0
            };
            let r = profile.radius(theta) * noise;
            [r * theta.cos(), r * theta.sin(), r * elevation.tan()]
        })
        .collect();
    PointCloud::new(points, OrderTag::Unsorted)
}

/// Horizontal field of view of the stepped 2D scanner, in degrees.
pub const STEPPER_FOV_DEG: f64 = 270.0;

/// `layers` planar scans of `points_per_layer` points, layer `l` at
/// `z = l * z_step`. Exactly sorted along `z`.
pub fn gen_stepper_lidar(
    layers: usize,
    points_per_layer: usize,
    z_step: f64,
    seed: u64,
) -> Result<PointCloud, CloudError> {
    if layers == 0 || points_per_layer == 0 {
        return Err(generator_error("layers and points per layer must be at least 1"));
    }
    if !(z_step.is_finite() && z_step >= 0.0) {
        return Err(generator_error(format!("z step must be non-negative, got {z_step}")));
    }
    let profile = RangeProfile::random(8.0, 0.1, 4, 6, 0.2, seed);
    let mut rng = rng_from_seed(derive_seed(seed, 1));
    let fov = STEPPER_FOV_DEG.to_radians();
    let start = -fov / 2.0;
    let steps = points_per_layer.saturating_sub(1).max(1) as f64;
    let mut points = Vec::with_capacity(layers * points_per_layer);
    for layer in 0..layers {
        let z = layer as f64 * z_step;
        for i in 0..points_per_layer {
            let theta = start + fov * i as f64 / steps;
            let r = profile.radius(theta) * (1.0 + 0.01 * rng.random_range(-1.0..=1.0));
            points.push([r * theta.cos(), r * theta.sin(), z]);
        }
    }
    PointCloud::new(points, OrderTag::ExactlySorted { axis: Axis::Z })
}

/// Half-width of the cube holding the cluster centres, in meters.
pub const CLUSTER_EXTENT: f64 = 5.0;
/// Standard deviation of each cluster, in meters.
pub const CLUSTER_SPREAD: f64 = 0.25;
/// Half-width of the cube holding the sparse background, in meters.
pub const SPARSE_EXTENT: f64 = 20.0;

/// `round(sparse_fraction * n)` points uniform in a wide cube, the remainder
/// split evenly over `n_clusters` Gaussian blobs.
///
/// Points are emitted in generation order: cluster by cluster, then the
/// background. Tagged unsorted.
pub fn gen_sparse_dense(
    n: usize,
    n_clusters: usize,
    sparse_fraction: f64,
    seed: u64,
) -> Result<PointCloud, CloudError> {
    if n_clusters == 0 || n < n_clusters {
        return Err(generator_error(format!(
            "need n >= n_clusters >= 1, got n={n}, n_clusters={n_clusters}"
        )));
    }
    if !(0.0..=1.0).contains(&sparse_fraction) {
        return Err(generator_error(format!(
            "sparse fraction must be in [0, 1], got {sparse_fraction}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let n_sparse = ((sparse_fraction * n as f64).round() as usize).min(n);
    let n_dense = n - n_sparse;
    let blob = Normal::new(0.0, CLUSTER_SPREAD).expect("valid spread");

    let uniform = |rng: &mut Rng, half: f64| -> Point {
        [
            rng.random_range(-half..=half),
            rng.random_range(-half..=half),
            rng.random_range(-half..=half),
        ]
    };
    let centers: Vec<Point> = (0..n_clusters)
        .map(|_| uniform(&mut rng, CLUSTER_EXTENT))
        .collect();

    let mut points = Vec::with_capacity(n);
    let per_cluster = n_dense / n_clusters;
    let extra = n_dense % n_clusters;
    for (ci, center) in centers.iter().enumerate() {
        let count = per_cluster + usize::from(ci < extra);
        for _ in 0..count {
            points.push([
                center[0] + blob.sample(&mut rng),
                center[1] + blob.sample(&mut rng),
                center[2] + blob.sample(&mut rng),
            ]);
        }
    }
    for _ in 0..n_sparse {
        points.push(uniform(&mut rng, SPARSE_EXTENT));
    }
    PointCloud::new(points, OrderTag::Unsorted)
}

/// Mean over consecutive windows of the direction-free inversion rate
/// `min(s, 1 - s)`, where `s` is the adjacent-inversion rate inside the
/// window. Low values mean storage order follows `axis` locally even if the
/// global direction changes.
pub fn windowed_locality(cloud: &PointCloud, axis: Axis, window: usize) -> f64 {
    let pts = cloud.points();
    let window = window.max(2);
    let scores: Vec<f64> = pts
        .chunks(window)
        .filter(|w| w.len() >= 2)
        .map(|w| {
            let s = crate::order::inversion_rate(w, axis);
            s.min(1.0 - s)
        })
        .collect();
    if scores.is_empty() {
        return 0.0;
    }
    scores.iter().sum::<f64>() / scores.len() as f64
}
