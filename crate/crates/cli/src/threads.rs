use std::num::NonZeroUsize;
use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use fibsum_core::Stripes;

/// Stripes per worker; more stripes than workers keeps uneven scans busy.
const STRIPES_PER_WORKER: usize = 8;

/// Runs stripes on a fixed number of scoped threads.
#[derive(Debug, Clone, Copy)]
pub struct Threads {
    workers: NonZeroUsize,
}

impl Threads {
    pub fn new(workers: NonZeroUsize) -> Self {
        Threads { workers }
    }

    pub fn available() -> Self {
        Threads::new(thread::available_parallelism().unwrap_or(NonZeroUsize::MIN))
    }

    pub fn workers(&self) -> usize {
        self.workers.get()
    }
}

fn split(len: usize, parts: usize) -> Vec<Range<usize>> {
    let parts = parts.clamp(1, len.max(1));
    (0..parts)
        .map(|i| (i * len / parts)..((i + 1) * len / parts))
        .collect()
}

impl Stripes for Threads {
    fn run<T, F>(&self, len: usize, body: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<usize>) -> T + Sync,
    {
        let workers = self.workers.get();
        if workers == 1 {
            return vec![body(0..len)];
        }
        let stripes = split(len, workers * STRIPES_PER_WORKER);
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<T>>> = Mutex::new(stripes.iter().map(|_| None).collect());
        thread::scope(|scope| {
            for _ in 0..workers.min(stripes.len()) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(range) = stripes.get(i) else { break };
                    let out = body(range.clone());
                    slots.lock().expect("stripe slot lock")[i] = Some(out);
                });
            }
        });
        slots
            .into_inner()
            .expect("stripe slot lock")
            .into_iter()
            .map(|slot| slot.expect("every stripe ran"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stripes_cover_range_in_order() {
        for workers in [1, 2, 3, 7] {
            let runner = Threads::new(NonZeroUsize::new(workers).unwrap());
            for len in [0, 1, 5, 100, 1001] {
                let parts = runner.run(len, |r| r.collect::<Vec<_>>());
                let flat: Vec<usize> = parts.into_iter().flatten().collect();
                assert_eq!(
                    flat,
                    (0..len).collect::<Vec<_>>(),
                    "workers={workers} len={len}"
                );
            }
        }
    }
}
