//! Tracked-allocation accounting.
//!
//! Reported memory is a defined proxy — bytes of the algorithm's own
//! structures (order matrices, transactional encodings, pheromone and cost
//! matrices, populations) — not process RSS. Each miner owns one tracker
//! and reports its peak in [`crate::result::MiningResult`].

/// Running live-byte counter with peak capture.
#[derive(Debug, Clone, Default)]
pub struct MemTracker {
    current: u64,
    peak: u64,
}

impl MemTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn alloc(&mut self, bytes: u64) {
        self.current += bytes;
        if self.current > self.peak {
            self.peak = self.current;
        }
    }

    pub fn free(&mut self, bytes: u64) {
        self.current = self.current.saturating_sub(bytes);
    }

    pub fn current(&self) -> u64 {
        self.current
    }

    pub fn peak(&self) -> u64 {
        self.peak
    }
}

/// Heap bytes of a `Vec<T>`: buffer plus the header that owns it.
pub fn vec_bytes<T>(v: &alloc::vec::Vec<T>) -> u64 {
    (v.capacity() * core::mem::size_of::<T>() + 3 * core::mem::size_of::<usize>()) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn peak_survives_frees() {
        let mut t = MemTracker::new();
        t.alloc(100);
        t.alloc(50);
        t.free(120);
        assert_eq!(t.current(), 30);
        assert_eq!(t.peak(), 150);
    }

    #[test]
    fn vec_bytes_counts_buffer_and_header() {
        let v = vec![0u32; 10];
        assert_eq!(vec_bytes(&v), (10 * 4 + 24) as u64);
    }
}
