//! Execution of index-range scans.

use alloc::vec::Vec;
use core::ops::Range;

/// Runs a scan body over disjoint stripes of `0..len`.
///
/// Implementations must return one result per stripe, in ascending stripe
/// order, and the stripes must cover `0..len` exactly once. Callers merge
/// the results with a sort, so output never depends on scheduling.
pub trait Stripes {
    fn run<T, F>(&self, len: usize, body: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<usize>) -> T + Sync;
}

/// Single stripe on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Stripes for Sequential {
    fn run<T, F>(&self, len: usize, body: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<usize>) -> T + Sync,
    {
        alloc::vec![body(0..len)]
    }
}
