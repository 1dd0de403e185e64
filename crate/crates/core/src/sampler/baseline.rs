//! Distance-free baselines: uniform random sampling and voxel-grid sampling.

use std::collections::BTreeMap;

use rand::seq::index;
use rand::Rng as _;

use super::{OpStats, SampleResult};
use crate::cloud::PointCloud;
use crate::error::SampleError;
use crate::rng::rng_from_seed;

fn check_count(c: usize, n: usize) -> Result<(), SampleError> {
    if c == 0 || c > n {
        return Err(SampleError::SampleCount { c, n });
    }
    Ok(())
}

/// `c` distinct indices drawn uniformly without replacement.
pub fn rps(cloud: &PointCloud, c: usize, seed: u64) -> Result<SampleResult, SampleError> {
    let n = cloud.len();
    check_count(c, n)?;
    let mut rng = rng_from_seed(seed);
    let indices = index::sample(&mut rng, n, c).into_vec();
    Ok(SampleResult::single_sector(indices, OpStats::default()))
}

/// Voxel id of every point in a `g x g x g` grid spanning the bounding box.
/// Ids are `(ix * g + iy) * g + iz`.
pub fn voxel_keys(cloud: &PointCloud, g: usize) -> Vec<u64> {
    let pts = cloud.points();
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in pts {
        for a in 0..3 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let g64 = g as u64;
    let cell = |v: f64, a: usize| -> u64 {
        let extent = hi[a] - lo[a];
        if extent <= 0.0 {
            return 0;
        }
        let c = ((v - lo[a]) / extent * g as f64).floor() as u64;
        c.min(g64 - 1)
    };
    pts.iter()
        .map(|p| (cell(p[0], 0) * g64 + cell(p[1], 1)) * g64 + cell(p[2], 2))
        .collect()
}

/// Picks `min(c, occupied)` occupied voxels uniformly without replacement and
/// one uniform point from each. When fewer voxels are occupied than `c`, the
/// rest is drawn uniformly from the points not yet sampled.
pub fn grid_voxel_sample(
    cloud: &PointCloud,
    c: usize,
    g: usize,
    seed: u64,
) -> Result<SampleResult, SampleError> {
    let n = cloud.len();
    check_count(c, n)?;
    if g == 0 {
        return Err(SampleError::GridResolution);
    }
    let keys = voxel_keys(cloud, g);
    let mut voxels: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, &key) in keys.iter().enumerate() {
        voxels.entry(key).or_default().push(i);
    }
    let occupied: Vec<&Vec<usize>> = voxels.values().collect();

    let mut rng = rng_from_seed(seed);
    let from_voxels = c.min(occupied.len());
    let mut indices = Vec::with_capacity(c);
    for v in index::sample(&mut rng, occupied.len(), from_voxels) {
        let members = occupied[v];
        indices.push(members[rng.random_range(0..members.len())]);
    }
    if from_voxels < c {
        let mut taken = vec![false; n];
        for &i in &indices {
            taken[i] = true;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| !taken[i]).collect();
        for r in index::sample(&mut rng, rest.len(), c - from_voxels) {
            indices.push(rest[r]);
        }
    }
    Ok(SampleResult::single_sector(indices, OpStats::default()))
}
