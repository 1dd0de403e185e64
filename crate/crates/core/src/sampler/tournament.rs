//! Max tournament tree over a fixed-size key array.
//!
//! The windowed samplers change only a handful of keys per iteration, so the
//! argmax over the whole sector can be maintained in `O(window + log n)`
//! instead of rescanning. Ties resolve to the lowest index, the same answer a
//! left-to-right scan gives.

pub(crate) struct Tournament {
    /// Leaf offset; `nodes[leaves + i]` is leaf `i`.
    leaves: usize,
    /// `(key, index)` of the winner below each node. Keeping the key next to
    /// the index saves a dependent load per comparison.
    nodes: Vec<(f64, u32)>,
    len: usize,
}

impl Tournament {
    /// All real keys start at `init`; padding leaves never win.
    pub(crate) fn new(len: usize, init: f64) -> Self {
        assert!(len >= 1 && len <= u32::MAX as usize);
        let leaves = len.next_power_of_two();
        // With every real key equal, each node's winner is the leftmost leaf
        // below it, and padding sits to the right of all real leaves.
        let mut nodes = vec![(f64::NEG_INFINITY, 0u32); 2 * leaves];
        let mut span = 1;
        let mut first = leaves;
        while first >= 1 {
            for (node, slot) in nodes[first..2 * first].iter_mut().enumerate() {
                let leaf = node * span;
                *slot = (if leaf < len { init } else { f64::NEG_INFINITY }, leaf as u32);
            }
            span *= 2;
            first /= 2;
        }
        Tournament { leaves, nodes, len }
    }

    #[inline]
    fn recompute(&mut self, node: usize) {
        let l = self.nodes[2 * node];
        let r = self.nodes[2 * node + 1];
        self.nodes[node] = if r.0 > l.0 { r } else { l };
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, key: f64) {
        debug_assert!(i < self.len);
        self.nodes[self.leaves + i].0 = key;
    }

    /// Re-establishes the tree after keys in `lo..hi` changed. Returns the
    /// number of node comparisons performed.
    pub(crate) fn refresh(&mut self, lo: usize, hi: usize) -> u64 {
        debug_assert!(lo < hi && hi <= self.len);
        let mut a = (self.leaves + lo) / 2;
        let mut b = (self.leaves + hi - 1) / 2;
        let mut ops = 0u64;
        while a >= 1 {
            for node in a..=b {
                self.recompute(node);
            }
            ops += (b - a + 1) as u64;
            a /= 2;
            b /= 2;
        }
        ops
    }

    #[inline]
    pub(crate) fn argmax(&self) -> usize {
        self.nodes[1].1 as usize
    }
}
