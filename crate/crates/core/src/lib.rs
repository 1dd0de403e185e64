//! Subsampling for ordered point clouds.
//!
//! The crate provides greedy farthest point sampling (FPS), a sector-partitioned
//! variant that runs independent local FPS passes over contiguous storage ranges
//! (AFPS), a windowed distance-update heuristic that only refreshes the points
//! stored next to the newly sampled one (NPDU), and two cheap baselines: uniform
//! random sampling and a voxel-grid sampler.
//!
//! Storage order matters here. Sectors and update windows are defined over
//! indices, not space, so the samplers rely on the input having some
//! *dimensional locality*: points stored close together are close along at
//! least one axis. The [`order`] module produces and measures such orderings and
//! [`synth`] generates clouds that mimic spinning and stepped LiDAR sweeps.
//!
//! Every sampler records exact operation counts in [`OpStats`], which is the
//! platform-independent cost measure used throughout the benchmarks.

pub mod cloud;
pub mod error;
pub mod metrics;
pub mod order;
pub mod rng;
pub mod sampler;
pub mod synth;

pub use cloud::{squared_dist, validate, Axis, OrderTag, Point, PointCloud, Violation};
pub use error::{CloudError, SampleError};
pub use metrics::{compare, coverage_radius, separation, MetricError, QualityReport, QualityRow};
pub use order::{bin_approx_sort, exact_sort, locality_score, shuffle};
pub use sampler::{
    sample_with, Execution,
    afps, allocate_samples, fps, grid_voxel_sample, npdu_afps, npdu_fps, partition_sectors, rps,
    sample, update_window, Method, OpStats, SampleResult, SamplerSpec, SectorPlan, SeedPolicy,
};
