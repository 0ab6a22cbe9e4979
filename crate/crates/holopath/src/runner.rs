//! Bounded worker pool for sweep cells.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use holopath_core::sweeps::CellExecutor;
use holopath_core::Result;

/// Scoped threads pulling cell indices from a shared counter. Each result
/// lands in its own slot, so the output order never depends on timing.
#[derive(Clone, Copy, Debug)]
pub struct ThreadPool {
    workers: usize,
}

impl ThreadPool {
    pub fn new(workers: usize) -> Self {
        ThreadPool { workers: workers.max(1) }
    }

    /// One worker per available core.
    pub fn available() -> Self {
        Self::new(std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn workers(&self) -> usize {
        self.workers
    }
}

impl CellExecutor for ThreadPool {
    fn execute(&self, cells: usize, f: &(dyn Fn(usize) -> Result<f64> + Sync)) -> Vec<Result<f64>> {
        if self.workers == 1 || cells <= 1 {
            return (0..cells).map(f).collect();
        }
        let slots: Vec<Mutex<Option<Result<f64>>>> = (0..cells).map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..self.workers.min(cells) {
                s.spawn(|| loop {
                    let k = next.fetch_add(1, Ordering::Relaxed);
                    if k >= cells {
                        break;
                    }
                    let r = f(k);
                    *slots[k].lock().unwrap() = Some(r);
                });
            }
        });
        slots.into_iter().map(|m| m.into_inner().unwrap().expect("every cell ran")).collect()
    }
}
