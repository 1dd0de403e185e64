//! Reference farthest point sampling used only to check [`super::fps`].
//!
//! A literal double loop written without any of the sampler code: separate
//! update and selection passes, its own distance arithmetic, and a linear
//! membership test for already-sampled points.

/// Greedy farthest point sequence of length `c` starting at `first_index`.
/// Returns `None` when `c` or `first_index` is out of range.
#[allow(clippy::needless_range_loop)]
pub fn oracle_fps(points: &[[f64; 3]], c: usize, first_index: usize) -> Option<Vec<usize>> {
    let n = points.len();
    if c == 0 || c > n || first_index >= n {
        return None;
    }
    let mut distance = vec![f64::INFINITY; n];
    let mut sampled = vec![first_index];
    let mut sample_idx = first_index;
    while sampled.len() < c {
        for j in 0..n {
            let mut dist = 0.0;
            for axis in 0..3 {
                let diff = points[j][axis] - points[sample_idx][axis];
                dist += diff * diff;
            }
            if dist <= distance[j] {
                distance[j] = dist;
            }
        }
        let mut best: Option<usize> = None;
        for j in 0..n {
            if sampled.contains(&j) {
                continue;
            }
            match best {
                Some(b) if distance[j] <= distance[b] => {}
                _ => best = Some(j),
            }
        }
        sample_idx = best.expect("at least one unsampled point remains");
        sampled.push(sample_idx);
    }
    Some(sampled)
}
