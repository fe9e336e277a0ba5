//! Deterministic data-parallel building blocks.
//!
//! Work is cut into fixed-size ranges that do not depend on the number of
//! worker threads, so every reduction sees the same partition.

/// Vertices (or rows) per work unit.
pub(crate) const CHUNK: usize = 4096;

/// Exclusive prefix sum; the result has `counts.len() + 1` entries.
pub(crate) fn exclusive_scan(counts: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(counts.len() + 1);
    let mut running = 0usize;
    offsets.push(0);
    for &c in counts {
        running += c;
        offsets.push(running);
    }
    offsets
}

/// Splits `data` into the disjoint slices `offsets[i]..offsets[i + 1]`.
pub(crate) fn split_at_offsets<'a, T>(mut data: &'a mut [T], offsets: &[usize]) -> Vec<&'a mut [T]> {
    let mut parts = Vec::with_capacity(offsets.len().saturating_sub(1));
    for w in offsets.windows(2) {
        let (head, tail) = data.split_at_mut(w[1] - w[0]);
        parts.push(head);
        data = tail;
    }
    parts
}
