//! Point storage and ordering metadata.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::CloudError;

/// A point in meters.
pub type Point = [f64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

impl std::str::FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(format!("unknown axis `{other}` (expected x, y or z)")),
        }
    }
}

/// Describes how the storage order of a cloud relates to its geometry.
///
/// The tag is informational: samplers never rely on it. [`validate`] checks
/// that it is consistent with the coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum OrderTag {
    Unsorted,
    /// Consecutive bins of `bin_size` points are ordered along `axis`: every
    /// coordinate in bin `j + 1` is at least every coordinate in bin `j`.
    /// Order inside a bin is arbitrary.
    ApproxSorted { axis: Axis, bin_size: usize },
    /// Coordinate along `axis` is non-decreasing with index.
    ExactlySorted { axis: Axis },
}

impl fmt::Display for OrderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderTag::Unsorted => f.write_str("unsorted"),
            OrderTag::ApproxSorted { axis, bin_size } => {
                write!(f, "approx_sorted({axis}, {bin_size})")
            }
            OrderTag::ExactlySorted { axis } => write!(f, "exactly_sorted({axis})"),
        }
    }
}

/// First invariant violation found by [`validate`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Violation {
    #[error("cloud has no points")]
    Empty,
    #[error("non-finite coordinate {value} on axis {axis} at index {index}")]
    NonFinite { index: usize, axis: Axis, value: f64 },
    #[error("order tag {tag} violated at index {index}")]
    Order { index: usize, tag: OrderTag },
}

impl Violation {
    pub fn index(&self) -> Option<usize> {
        match self {
            Violation::Empty => None,
            Violation::NonFinite { index, .. } | Violation::Order { index, .. } => Some(*index),
        }
    }
}

/// Ordered, immutable collection of 3D points.
///
/// Coordinates are stored as `f64` regardless of the source precision so that
/// distance comparisons against reference implementations are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Point>,
    order: OrderTag,
}

impl PointCloud {
    /// Builds a cloud and checks every invariant, including the order tag.
    pub fn new(points: Vec<Point>, order: OrderTag) -> Result<Self, CloudError> {
        let cloud = Self::from_raw(points, order);
        validate(&cloud)?;
        Ok(cloud)
    }

    pub fn unsorted(points: Vec<Point>) -> Result<Self, CloudError> {
        Self::new(points, OrderTag::Unsorted)
    }

    /// Builds a cloud without checking anything. Use [`validate`] before
    /// handing the result to a sampler.
    pub fn from_raw(points: Vec<Point>, order: OrderTag) -> Self {
        PointCloud { points, order }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn point(&self, index: usize) -> Point {
        self.points[index]
    }

    pub fn order(&self) -> OrderTag {
        self.order
    }

    pub fn coords(&self, axis: Axis) -> impl ExactSizeIterator<Item = f64> + '_ {
        let a = axis.index();
        self.points.iter().map(move |p| p[a])
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// Same points, different tag. The tag is not checked.
    pub fn with_order(self, order: OrderTag) -> Self {
        PointCloud {
            points: self.points,
            order,
        }
    }

    /// Hex SHA-256 over the little-endian coordinate bytes in storage order.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        for p in &self.points {
            for c in p {
                hasher.update(c.to_le_bytes());
            }
        }
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

#[inline]
pub fn squared_dist(a: &Point, b: &Point) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    dx * dx + dy * dy + dz * dz
}

/// Checks emptiness, finiteness and order-tag consistency, reporting the first
/// offending index.
pub fn validate(cloud: &PointCloud) -> Result<(), Violation> {
    let points = cloud.points();
    if points.is_empty() {
        return Err(Violation::Empty);
    }
    for (index, p) in points.iter().enumerate() {
        for axis in Axis::ALL {
            let value = p[axis.index()];
            if !value.is_finite() {
                return Err(Violation::NonFinite { index, axis, value });
            }
        }
    }
    let tag = cloud.order();
    match tag {
        OrderTag::Unsorted => Ok(()),
        OrderTag::ExactlySorted { axis } => {
            let a = axis.index();
            match points.windows(2).position(|w| w[1][a] < w[0][a]) {
                Some(i) => Err(Violation::Order { index: i + 1, tag }),
                None => Ok(()),
            }
        }
        OrderTag::ApproxSorted { axis, bin_size } => {
            if bin_size == 0 {
                return Err(Violation::Order { index: 0, tag });
            }
            let a = axis.index();
            let mut prev_max = f64::NEG_INFINITY;
            for (bin, chunk) in points.chunks(bin_size).enumerate() {
                let mut max = f64::NEG_INFINITY;
                for (offset, p) in chunk.iter().enumerate() {
                    if p[a] < prev_max {
                        return Err(Violation::Order {
                            index: bin * bin_size + offset,
                            tag,
                        });
                    }
                    max = max.max(p[a]);
                }
                prev_max = max;
            }
            Ok(())
        }
    }
}
