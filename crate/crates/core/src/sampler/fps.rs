//! Farthest point sampling and its sector-partitioned and windowed variants.
//!
//! Every variant is built from one local kernel that samples `quota` points
//! from a contiguous index range:
//!
//! 1. the tracked distance of every point starts at `+inf`;
//! 2. the first point comes from the seed policy;
//! 3. each iteration refreshes the tracked distance of the points covered by
//!    the update pass (`track[j] = d` whenever `d <= track[j]`) and then picks
//!    the unsampled point with the largest tracked distance, lowest index on
//!    ties.
//!
//! The full kernel's update pass covers the whole range. The windowed (NPDU)
//! kernel only touches [`update_window`] around the newest sample, so most
//! points keep the `+inf` sentinel until a window reaches them and the
//! selection picks the lowest-index untouched point. Early windowed samples
//! are therefore spread through storage order rather than chosen by geometry.
//!
//! Sectors own their track exclusively, so they can run on any number of
//! threads; merging is a sector-ordered concatenation.

use std::ops::Range;

use rand::Rng as _;
use rayon::prelude::*;

use super::tournament::Tournament;
use super::{Execution, OpStats, SampleResult, SamplerSpec, SectorPlan, SeedPolicy};
use crate::cloud::{squared_dist, Point, PointCloud};
use crate::error::SampleError;
use crate::rng::{rng_from_seed, sector_seed};

/// Observes the distance track after every update pass. Used by tests and
/// diagnostics; the unit implementation compiles away.
pub trait TrackProbe {
    /// `track` is indexed locally to the sector; `sampled` holds the global
    /// indices chosen so far in this sector.
    fn after_update(&mut self, sector: usize, iteration: usize, track: &[f64], sampled: &[usize]);
}

impl TrackProbe for () {
    #[inline(always)]
    fn after_update(&mut self, _: usize, _: usize, _: &[f64], _: &[usize]) {}
}

/// Indices whose tracked distance is refreshed after sampling `sample_idx`:
/// `[sample_idx - k/2, sample_idx + ceil(k/2))` clipped to `sector`. Clipped
/// windows are not re-extended, so they may hold fewer than `k` points.
pub fn update_window(sector: Range<usize>, sample_idx: usize, k: usize) -> Range<usize> {
    debug_assert!(sector.contains(&sample_idx) && k >= 1);
    let lo = sample_idx.saturating_sub(k / 2).max(sector.start);
    let hi = (sample_idx + k.div_ceil(2)).min(sector.end);
    lo..hi
}

pub fn fps(
    cloud: &PointCloud,
    c: usize,
    seed_policy: SeedPolicy,
    seed: u64,
) -> Result<SampleResult, SampleError> {
    let plan = SectorPlan::new(cloud.len(), 1, c)?;
    Ok(run_plan(cloud.points(), &plan, None, seed_policy, seed, Execution::Sequential))
}

pub fn afps(
    cloud: &PointCloud,
    c: usize,
    m: usize,
    seed_policy: SeedPolicy,
    seed: u64,
) -> Result<SampleResult, SampleError> {
    afps_with(cloud, c, m, seed_policy, seed, Execution::Sequential)
}

pub fn afps_with(
    cloud: &PointCloud,
    c: usize,
    m: usize,
    seed_policy: SeedPolicy,
    seed: u64,
    exec: Execution,
) -> Result<SampleResult, SampleError> {
    let plan = SectorPlan::new(cloud.len(), m, c)?;
    Ok(run_plan(cloud.points(), &plan, None, seed_policy, seed, exec))
}

pub fn npdu_fps(
    cloud: &PointCloud,
    c: usize,
    k: usize,
    seed_policy: SeedPolicy,
    seed: u64,
) -> Result<SampleResult, SampleError> {
    npdu_afps_with(cloud, c, 1, k, seed_policy, seed, Execution::Sequential)
}

pub fn npdu_afps(
    cloud: &PointCloud,
    c: usize,
    m: usize,
    k: usize,
    seed_policy: SeedPolicy,
    seed: u64,
) -> Result<SampleResult, SampleError> {
    npdu_afps_with(cloud, c, m, k, seed_policy, seed, Execution::Sequential)
}

pub fn npdu_afps_with(
    cloud: &PointCloud,
    c: usize,
    m: usize,
    k: usize,
    seed_policy: SeedPolicy,
    seed: u64,
    exec: Execution,
) -> Result<SampleResult, SampleError> {
    if k == 0 {
        return Err(SampleError::WindowSize);
    }
    let plan = SectorPlan::new(cloud.len(), m, c)?;
    Ok(run_plan(cloud.points(), &plan, Some(k), seed_policy, seed, exec))
}

/// Sequential run of an FPS-family spec that reports every update pass to
/// `probe`. Non-FPS methods are rejected with `None`.
pub fn run_probed<P: TrackProbe>(
    cloud: &PointCloud,
    spec: &SamplerSpec,
    probe: &mut P,
) -> Option<Result<SampleResult, SampleError>> {
    use super::Method;
    let (m, window) = match spec.method {
        Method::Fps => (1, None),
        Method::Afps => (spec.m, None),
        Method::NpduFps => (1, Some(spec.k)),
        Method::NpduAfps => (spec.m, Some(spec.k)),
        Method::Rps | Method::GridVoxel => return None,
    };
    if window == Some(0) {
        return Some(Err(SampleError::WindowSize));
    }
    let plan = match SectorPlan::new(cloud.len(), m, spec.c) {
        Ok(plan) => plan,
        Err(e) => return Some(Err(e)),
    };
    let runs = (0..plan.len())
        .map(|s| run_sector(cloud.points(), &plan, s, window, spec.seed_policy, spec.seed, probe))
        .collect();
    Some(Ok(merge(runs)))
}

fn run_plan(
    points: &[Point],
    plan: &SectorPlan,
    window: Option<usize>,
    policy: SeedPolicy,
    seed: u64,
    exec: Execution,
) -> SampleResult {
    let runs: Vec<(Vec<usize>, OpStats)> = match exec {
        Execution::Sequential => (0..plan.len())
            .map(|s| run_sector(points, plan, s, window, policy, seed, &mut ()))
            .collect(),
        Execution::Parallel => (0..plan.len())
            .into_par_iter()
            .map(|s| run_sector(points, plan, s, window, policy, seed, &mut ()))
            .collect(),
    };
    merge(runs)
}

fn merge(runs: Vec<(Vec<usize>, OpStats)>) -> SampleResult {
    let total: usize = runs.iter().map(|(idx, _)| idx.len()).sum();
    let mut indices = Vec::with_capacity(total);
    let mut sector_of = Vec::with_capacity(total);
    let mut stats = OpStats::default();
    for (sector, (idx, st)) in runs.into_iter().enumerate() {
        sector_of.extend(std::iter::repeat_n(sector, idx.len()));
        indices.extend(idx);
        stats += st;
    }
    SampleResult {
        indices,
        sector_of,
        stats,
    }
}

fn run_sector<P: TrackProbe>(
    points: &[Point],
    plan: &SectorPlan,
    sector: usize,
    window: Option<usize>,
    policy: SeedPolicy,
    seed: u64,
    probe: &mut P,
) -> (Vec<usize>, OpStats) {
    let range = plan.ranges[sector].clone();
    let quota = plan.quotas[sector];
    let first = match policy {
        SeedPolicy::FixedFirstPoint => 0,
        SeedPolicy::RandomFirstPoint => {
            rng_from_seed(sector_seed(seed, sector)).random_range(0..range.len())
        }
    };
    let local = &points[range.clone()];
    match window {
        None => full_kernel(local, range.start, quota, first, sector, probe),
        Some(k) => windowed_kernel(local, range.start, quota, first, k, sector, probe),
    }
}

fn full_kernel<P: TrackProbe>(
    local: &[Point],
    offset: usize,
    quota: usize,
    first: usize,
    sector: usize,
    probe: &mut P,
) -> (Vec<usize>, OpStats) {
    let n = local.len();
    let mut track = vec![f64::INFINITY; n];
    let mut taken = vec![false; n];
    let mut sampled = Vec::with_capacity(quota);
    let mut stats = OpStats::default();

    let mut current = first;
    taken[current] = true;
    sampled.push(offset + current);

    for iteration in 1..quota {
        let anchor = local[current];
        let mut best = -1.0;
        let mut best_j = 0;
        let mut writes = 0u64;
        for (j, (p, t)) in local.iter().zip(track.iter_mut()).enumerate() {
            let d = squared_dist(p, &anchor);
            if d <= *t {
                *t = d;
                writes += 1;
            }
            if *t > best && !taken[j] {
                best = *t;
                best_j = j;
            }
        }
        stats.dist_evals += n as u64;
        stats.dist_writes += writes;
        stats.argmax_scans += n as u64;
        stats.iterations += 1;
        probe.after_update(sector, iteration, &track, &sampled);

        current = best_j;
        taken[current] = true;
        sampled.push(offset + current);
    }
    (sampled, stats)
}

fn windowed_kernel<P: TrackProbe>(
    local: &[Point],
    offset: usize,
    quota: usize,
    first: usize,
    k: usize,
    sector: usize,
    probe: &mut P,
) -> (Vec<usize>, OpStats) {
    let n = local.len();
    let mut track = vec![f64::INFINITY; n];
    let mut taken = vec![false; n];
    let mut sampled = Vec::with_capacity(quota);
    let mut stats = OpStats::default();
    let mut tree = (quota > 1).then(|| Tournament::new(n, f64::INFINITY));

    let mut current = first;
    taken[current] = true;
    sampled.push(offset + current);

    for iteration in 1..quota {
        let tree = tree.as_mut().expect("tree exists when quota > 1");
        let anchor = local[current];
        let w = update_window(0..n, current, k);
        let cells = local[w.clone()]
            .iter()
            .zip(&mut track[w.clone()])
            .zip(&taken[w.clone()]);
        for (j, ((p, t), &done)) in (w.start..).zip(cells) {
            let d = squared_dist(p, &anchor);
            if d <= *t {
                *t = d;
                stats.dist_writes += 1;
            }
            tree.set(j, if done { f64::NEG_INFINITY } else { *t });
        }
        stats.dist_evals += w.len() as u64;
        stats.argmax_scans += tree.refresh(w.start, w.end);
        stats.iterations += 1;
        probe.after_update(sector, iteration, &track, &sampled);

        // `current` always lies inside its own window, so it was masked above.
        current = tree.argmax();
        debug_assert!(!taken[current]);
        taken[current] = true;
        sampled.push(offset + current);
    }
    (sampled, stats)
}
