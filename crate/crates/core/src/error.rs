use thiserror::Error;

use crate::cloud::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CloudError {
    #[error("invalid point cloud: {0}")]
    Invalid(#[from] Violation),
    #[error("bin size must be in 1..={n}, got {bin_size}")]
    BinSize { bin_size: usize, n: usize },
    #[error("locality score needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("invalid generator parameter: {0}")]
    Generator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("sample count {c} out of range 1..={n}")]
    SampleCount { c: usize, n: usize },
    #[error("sector count {m} out of range 1..={max}")]
    SectorCount { m: usize, max: usize },
    #[error("sector {sector} holds {size} points but was allocated {quota} samples")]
    InfeasibleQuota {
        sector: usize,
        quota: usize,
        size: usize,
    },
    #[error("update window size must be at least 1")]
    WindowSize,
    #[error("grid resolution must be at least 1")]
    GridResolution,
}
