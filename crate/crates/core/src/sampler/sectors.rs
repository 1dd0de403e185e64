use std::ops::Range;

use crate::error::SampleError;

/// Contiguous storage-order partition of a cloud together with the number of
/// samples drawn from each part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorPlan {
    pub ranges: Vec<Range<usize>>,
    pub quotas: Vec<usize>,
}

impl SectorPlan {
    pub fn new(n: usize, m: usize, c: usize) -> Result<Self, SampleError> {
        if c == 0 || c > n {
            return Err(SampleError::SampleCount { c, n });
        }
        let ranges = partition_sectors(n, m)?;
        let quotas = allocate_samples(c, m)?;
        for (sector, (range, &quota)) in ranges.iter().zip(&quotas).enumerate() {
            if quota > range.len() {
                return Err(SampleError::InfeasibleQuota {
                    sector,
                    quota,
                    size: range.len(),
                });
            }
        }
        Ok(SectorPlan { ranges, quotas })
    }

    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn max_sector_len(&self) -> usize {
        self.ranges.iter().map(|r| r.len()).max().unwrap_or(0)
    }
}

/// Splits `n` items into `parts` sizes, larger parts first.
fn even_split(n: usize, parts: usize) -> impl Iterator<Item = usize> {
    let base = n / parts;
    let extra = n % parts;
    (0..parts).map(move |i| base + usize::from(i < extra))
}

/// `m` contiguous half-open intervals covering `0..n`; the first `n % m` have
/// one extra point.
pub fn partition_sectors(n: usize, m: usize) -> Result<Vec<Range<usize>>, SampleError> {
    if m == 0 || m > n {
        return Err(SampleError::SectorCount { m, max: n });
    }
    let mut start = 0;
    Ok(even_split(n, m)
        .map(|len| {
            let r = start..start + len;
            start += len;
            r
        })
        .collect())
}

/// Per-sector sample counts summing to `c`; the first `c % m` sectors get one
/// extra sample.
pub fn allocate_samples(c: usize, m: usize) -> Result<Vec<usize>, SampleError> {
    if m == 0 || m > c {
        return Err(SampleError::SectorCount { m, max: c });
    }
    Ok(even_split(c, m).collect())
}
