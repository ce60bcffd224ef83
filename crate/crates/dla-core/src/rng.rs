//! Minimal deterministic RNG: splitmix64 streams keyed by caller-supplied
//! context. Bit-stable across platforms and releases, which keeps seeded
//! corpora and experiment draws reproducible.

/// One splitmix64 step.
#[inline]
pub fn splitmix64(state: &mut u64) {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
}

/// Finalizer producing the output word for the current state.
#[inline]
pub fn splitmix64_output(state: u64) -> u64 {
    let mut z = state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Stateless keyed stream over splitmix64.
#[derive(Clone, Debug)]
pub struct Stream {
    state: u64,
}

impl Stream {
    /// Derive a stream from arbitrary context words (seed, ids, counters).
    pub fn from_key(words: &[u64]) -> Stream {
        let mut state = 0x243f6a8885a308d3u64; // arbitrary nonzero offset
        for &w in words {
            state ^= splitmix64_output(w ^ state);
            splitmix64(&mut state);
        }
        Stream { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        splitmix64(&mut self.state);
        splitmix64_output(self.state)
    }

    /// Uniform in `[0, 1)` with 53-bit resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound`.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        // Rejection-free multiply-shift; bias is negligible for the corpus
        // sizes used here and keeps draws platform-stable.
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}

/// FNV-1a over bytes, used to key streams by string identifiers.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
