//! Storage orderings: exact sort, bin-approximate sort, shuffle, and a
//! locality measure.

use rand::seq::SliceRandom;

use crate::cloud::{Axis, OrderTag, Point, PointCloud};
use crate::error::CloudError;
use crate::rng::rng_from_seed;

/// Stable sort along `axis`.
pub fn exact_sort(cloud: &PointCloud, axis: Axis) -> PointCloud {
    let a = axis.index();
    let mut points = cloud.points().to_vec();
    points.sort_by(|p, q| p[a].total_cmp(&q[a]));
    PointCloud::from_raw(points, OrderTag::ExactlySorted { axis })
}

/// Exact sort followed by an independent shuffle of every block of `bin_size`
/// consecutive points (the trailing partial block included).
pub fn bin_approx_sort(
    cloud: &PointCloud,
    axis: Axis,
    bin_size: usize,
    seed: u64,
) -> Result<PointCloud, CloudError> {
    let n = cloud.len();
    if bin_size == 0 || bin_size > n {
        return Err(CloudError::BinSize { bin_size, n });
    }
    let mut points = exact_sort(cloud, axis).into_points();
    let mut rng = rng_from_seed(seed);
    for bin in points.chunks_mut(bin_size) {
        bin.shuffle(&mut rng);
    }
    Ok(PointCloud::from_raw(
        points,
        OrderTag::ApproxSorted { axis, bin_size },
    ))
}

pub fn shuffle(cloud: &PointCloud, seed: u64) -> PointCloud {
    let mut points: Vec<Point> = cloud.points().to_vec();
    points.shuffle(&mut rng_from_seed(seed));
    PointCloud::from_raw(points, OrderTag::Unsorted)
}

/// Adjacent-inversion rate along `axis`: the fraction of neighbouring index
/// pairs `(i, i + 1)` whose coordinates decrease. 0 for a sorted cloud, 1 for
/// a reverse-sorted one, about 0.5 when storage order carries no locality.
pub fn locality_score(cloud: &PointCloud, axis: Axis) -> Result<f64, CloudError> {
    let n = cloud.len();
    if n < 2 {
        return Err(CloudError::TooFewPoints(n));
    }
    Ok(inversion_rate(cloud.points(), axis))
}

pub(crate) fn inversion_rate(points: &[Point], axis: Axis) -> f64 {
    let a = axis.index();
    let inversions = points.windows(2).filter(|w| w[0][a] > w[1][a]).count();
    inversions as f64 / (points.len() - 1) as f64
}
