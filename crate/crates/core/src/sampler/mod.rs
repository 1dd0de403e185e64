//! Samplers and their shared result types.
//!
//! | method      | distance passes                     | selection                  |
//! |-------------|-------------------------------------|----------------------------|
//! | `fps`       | full cloud every iteration          | global argmax              |
//! | `afps`      | full sector every iteration         | per-sector argmax          |
//! | `npdu-fps`  | `k`-point storage window            | global argmax              |
//! | `npdu-afps` | `k`-point window inside the sector  | per-sector argmax          |
//! | `rps`       | none                                | uniform without replacement|
//! | `grid`      | none                                | one point per random voxel |
//!
//! All argmax selections break ties towards the lowest index and skip points
//! that were already sampled.

mod baseline;
mod fps;
pub mod oracle;
mod sectors;
mod tournament;

use std::fmt;
use std::ops::AddAssign;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cloud::PointCloud;
use crate::error::SampleError;

pub use baseline::{grid_voxel_sample, rps, voxel_keys};
pub use fps::{
    afps, afps_with, fps, npdu_afps, npdu_afps_with, npdu_fps, run_probed, update_window,
    TrackProbe,
};
pub use sectors::{allocate_samples, partition_sectors, SectorPlan};

pub const DEFAULT_GRID: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "rps")]
    Rps,
    #[serde(rename = "fps")]
    Fps,
    #[serde(rename = "afps")]
    Afps,
    #[serde(rename = "npdu-fps")]
    NpduFps,
    #[serde(rename = "npdu-afps")]
    NpduAfps,
    #[serde(rename = "grid")]
    GridVoxel,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Rps,
        Method::Fps,
        Method::Afps,
        Method::NpduFps,
        Method::NpduAfps,
        Method::GridVoxel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Rps => "rps",
            Method::Fps => "fps",
            Method::Afps => "afps",
            Method::NpduFps => "npdu-fps",
            Method::NpduAfps => "npdu-afps",
            Method::GridVoxel => "grid",
        }
    }

    pub fn uses_sectors(self) -> bool {
        matches!(self, Method::Afps | Method::NpduAfps)
    }

    pub fn uses_window(self) -> bool {
        matches!(self, Method::NpduFps | Method::NpduAfps)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                format!("unknown method `{s}` (expected rps, fps, afps, npdu-fps, npdu-afps or grid)")
            })
    }
}

/// How the first point of every (local) FPS run is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedPolicy {
    /// Uniform over the sector, drawn from the sector's RNG stream.
    #[default]
    RandomFirstPoint,
    /// The first index of each sector.
    FixedFirstPoint,
}

/// Whether sector-partitioned samplers run their sectors on the rayon pool.
/// Results are identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Sequential,
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub method: Method,
    /// Number of points to sample.
    pub c: usize,
    /// Sector count, AFPS variants only.
    pub m: usize,
    /// Update-window size, NPDU variants only.
    pub k: usize,
    /// Grid resolution per axis, grid sampler only.
    pub g: usize,
    pub seed: u64,
    pub seed_policy: SeedPolicy,
}

impl SamplerSpec {
    pub fn new(method: Method, c: usize) -> Self {
        SamplerSpec {
            method,
            c,
            m: 1,
            k: 8,
            g: DEFAULT_GRID,
            seed: 0,
            seed_policy: SeedPolicy::RandomFirstPoint,
        }
    }

    pub fn sectors(mut self, m: usize) -> Self {
        self.m = m;
        self
    }

    pub fn window(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn grid(mut self, g: usize) -> Self {
        self.g = g;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn first(mut self, policy: SeedPolicy) -> Self {
        self.seed_policy = policy;
        self
    }

    /// Checks the spec against a cloud of `n` points without running it.
    pub fn check(&self, n: usize) -> Result<(), SampleError> {
        if self.c == 0 || self.c > n {
            return Err(SampleError::SampleCount { c: self.c, n });
        }
        if self.method.uses_sectors() {
            SectorPlan::new(n, self.m, self.c)?;
        }
        if self.method.uses_window() && self.k == 0 {
            return Err(SampleError::WindowSize);
        }
        if self.method == Method::GridVoxel && self.g == 0 {
            return Err(SampleError::GridResolution);
        }
        Ok(())
    }
}

/// Exact operation counters of one sampler run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct OpStats {
    /// Geometric distance evaluations.
    pub dist_evals: u64,
    /// Distance-array overwrites (`dist <= track[j]`).
    pub dist_writes: u64,
    /// Elements compared while selecting the next sample. For the windowed
    /// samplers this counts tournament-tree node comparisons.
    pub argmax_scans: u64,
    /// Selection iterations, summed over sectors.
    pub iterations: u64,
}

impl AddAssign for OpStats {
    fn add_assign(&mut self, rhs: Self) {
        self.dist_evals += rhs.dist_evals;
        self.dist_writes += rhs.dist_writes;
        self.argmax_scans += rhs.argmax_scans;
        self.iterations += rhs.iterations;
    }
}

impl std::iter::Sum for OpStats {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(OpStats::default(), |mut acc, s| {
            acc += s;
            acc
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleResult {
    /// Sampled indices in selection order.
    pub indices: Vec<usize>,
    /// Originating sector of each sampled index; all zero for unpartitioned
    /// methods.
    pub sector_of: Vec<usize>,
    pub stats: OpStats,
}

impl SampleResult {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub(crate) fn single_sector(indices: Vec<usize>, stats: OpStats) -> Self {
        let sector_of = vec![0; indices.len()];
        SampleResult {
            indices,
            sector_of,
            stats,
        }
    }
}

/// Runs `spec` on `cloud` sequentially.
pub fn sample(cloud: &PointCloud, spec: &SamplerSpec) -> Result<SampleResult, SampleError> {
    sample_with(cloud, spec, Execution::Sequential)
}

pub fn sample_with(
    cloud: &PointCloud,
    spec: &SamplerSpec,
    exec: Execution,
) -> Result<SampleResult, SampleError> {
    let SamplerSpec {
        method,
        c,
        m,
        k,
        g,
        seed,
        seed_policy,
    } = *spec;
    match method {
        Method::Rps => rps(cloud, c, seed),
        Method::Fps => fps(cloud, c, seed_policy, seed),
        Method::Afps => afps_with(cloud, c, m, seed_policy, seed, exec),
        Method::NpduFps => npdu_fps(cloud, c, k, seed_policy, seed),
        Method::NpduAfps => npdu_afps_with(cloud, c, m, k, seed_policy, seed, exec),
        Method::GridVoxel => grid_voxel_sample(cloud, c, g, seed),
    }
}
