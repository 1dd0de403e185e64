//! Geometric sampling-quality metrics and multi-method comparison reports.
//!
//! Both metrics are exact `O(N * |S|)` scans and report true Euclidean
//! distances in meters.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cloud::{squared_dist, Axis, PointCloud};
use crate::error::SampleError;
use crate::order::locality_score;
use crate::rng::derive_seed;
use crate::sampler::{sample, Method, SamplerSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("sample set is empty")]
    EmptySamples,
    #[error("separation needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("sample index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("spec #{spec} ({method}) failed: {source}")]
    Sampler {
        spec: usize,
        method: Method,
        #[source]
        source: SampleError,
    },
}

fn check_indices(cloud: &PointCloud, samples: &[usize]) -> Result<(), MetricError> {
    let n = cloud.len();
    match samples.iter().find(|&&i| i >= n) {
        Some(&index) => Err(MetricError::IndexOutOfRange { index, n }),
        None => Ok(()),
    }
}

/// Largest distance from any point of the cloud to its nearest sample.
pub fn coverage_radius(cloud: &PointCloud, samples: &[usize]) -> Result<f64, MetricError> {
    if samples.is_empty() {
        return Err(MetricError::EmptySamples);
    }
    check_indices(cloud, samples)?;
    let pts = cloud.points();
    let centers: Vec<[f64; 3]> = samples.iter().map(|&i| pts[i]).collect();
    let worst = pts
        .iter()
        .map(|p| {
            centers
                .iter()
                .map(|c| squared_dist(p, c))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    Ok(worst.sqrt())
}

/// Smallest pairwise distance among the sampled points.
pub fn separation(cloud: &PointCloud, samples: &[usize]) -> Result<f64, MetricError> {
    if samples.len() < 2 {
        return Err(MetricError::TooFewSamples(samples.len()));
    }
    check_indices(cloud, samples)?;
    let pts = cloud.points();
    let mut best = f64::INFINITY;
    for (i, &a) in samples.iter().enumerate() {
        for &b in &samples[i + 1..] {
            best = best.min(squared_dist(&pts[a], &pts[b]));
        }
    }
    Ok(best.sqrt())
}

/// Aggregated results of one sampler spec over several trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityRow {
    pub method: Method,
    pub c: usize,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub g: Option<usize>,
    pub trials: usize,
    pub coverage_radius_mean: f64,
    pub coverage_radius_std: f64,
    /// `None` when `c < 2`.
    pub separation_mean: Option<f64>,
    pub separation_std: Option<f64>,
    pub dist_evals_mean: f64,
    pub dist_writes_mean: f64,
    pub wall_seconds_mean: f64,
    pub wall_seconds_std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    /// SHA-256 of the input coordinates; every row refers to this cloud.
    pub cloud_digest: String,
    pub n: usize,
    pub locality_axis: Axis,
    /// `None` for single-point clouds.
    pub locality_score: Option<f64>,
    pub seed: u64,
    pub rows: Vec<QualityRow>,
}

struct Trial {
    coverage: f64,
    separation: Option<f64>,
    dist_evals: u64,
    dist_writes: u64,
    wall: f64,
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs every spec `trials` times. Trial `t` uses seed `derive_seed(seed, t)`
/// for all specs, so methods are compared on the same random streams. The
/// spec's own seed is ignored.
pub fn compare(
    cloud: &PointCloud,
    specs: &[SamplerSpec],
    trials: usize,
    seed: u64,
) -> Result<QualityReport, MetricError> {
    compare_on(cloud, specs, trials, seed, Axis::X, false)
}

/// [`compare`] with a configurable locality axis, optionally running trials on
/// the current rayon pool. Row contents apart from timings do not depend on
/// `parallel`.
pub fn compare_on(
    cloud: &PointCloud,
    specs: &[SamplerSpec],
    trials: usize,
    seed: u64,
    locality_axis: Axis,
    parallel: bool,
) -> Result<QualityReport, MetricError> {
    let trials = trials.max(1);
    let mut rows = Vec::with_capacity(specs.len());
    for (spec_no, spec) in specs.iter().enumerate() {
        let run = |t: usize| -> Result<Trial, MetricError> {
            let s = SamplerSpec {
                seed: derive_seed(seed, t as u64),
                ..*spec
            };
            let start = Instant::now();
            let result = sample(cloud, &s).map_err(|source| MetricError::Sampler {
                spec: spec_no,
                method: spec.method,
                source,
            })?;
            let wall = start.elapsed().as_secs_f64();
            Ok(Trial {
                coverage: coverage_radius(cloud, &result.indices)?,
                separation: if result.len() >= 2 {
                    Some(separation(cloud, &result.indices)?)
                } else {
                    None
                },
                dist_evals: result.stats.dist_evals,
                dist_writes: result.stats.dist_writes,
                wall,
            })
        };
        let outcomes: Vec<Trial> = if parallel {
            (0..trials).into_par_iter().map(run).collect::<Result<_, _>>()?
        } else {
            (0..trials).map(run).collect::<Result<_, _>>()?
        };

        let col = |f: &dyn Fn(&Trial) -> f64| outcomes.iter().map(f).collect::<Vec<f64>>();
        let (coverage_radius_mean, coverage_radius_std) = mean_std(&col(&|t| t.coverage));
        let (separation_mean, separation_std) = if outcomes.iter().all(|t| t.separation.is_some()) {
            let (m, s) = mean_std(&col(&|t| t.separation.unwrap_or(0.0)));
            (Some(m), Some(s))
        } else {
            (None, None)
        };
        let (wall_seconds_mean, wall_seconds_std) = mean_std(&col(&|t| t.wall));
        rows.push(QualityRow {
            method: spec.method,
            c: spec.c,
            m: spec.method.uses_sectors().then_some(spec.m),
            k: spec.method.uses_window().then_some(spec.k),
            g: (spec.method == Method::GridVoxel).then_some(spec.g),
            trials,
            coverage_radius_mean,
            coverage_radius_std,
            separation_mean,
            separation_std,
            dist_evals_mean: mean_std(&col(&|t| t.dist_evals as f64)).0,
            dist_writes_mean: mean_std(&col(&|t| t.dist_writes as f64)).0,
            wall_seconds_mean,
            wall_seconds_std,
        });
    }
    Ok(QualityReport {
        cloud_digest: cloud.digest(),
        n: cloud.len(),
        locality_axis,
        locality_score: locality_score(cloud, locality_axis).ok(),
        seed,
        rows,
    })
}
