//! Settings, statistics and the optional cache shared by computations.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::cache::GbCache;

/// Tunable limits and seeds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    /// Largest excess of an S-pair degree over the lowest input degree.
    pub degree_cap: i64,
    /// Extra table points checked after fitting a Hilbert–Samuel polynomial.
    pub fit_extra: usize,
    /// Largest `n` for which lengths are tabulated.
    pub table_cap: usize,
    /// Window length for superficiality checks.
    pub window: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { degree_cap: 40, fit_extra: 3, table_cap: 30, window: 5, trials: 20, seed: 0 }
    }
}

#[derive(Debug, Default)]
pub struct Stats {
    pub groebner: AtomicU64,
    pub cache_hits: AtomicU64,
    pub cache_misses: AtomicU64,
    pub cache_stores: AtomicU64,
    pub cache_evictions: AtomicU64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StatsSnapshot {
    pub groebner: u64,
    pub cache_hits: u64,
    pub cache_misses: u64,
    pub cache_stores: u64,
    pub cache_evictions: u64,
}

impl Stats {
    pub fn bump_groebner(&self) {
        self.groebner.fetch_add(1, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> StatsSnapshot {
        StatsSnapshot {
            groebner: self.groebner.load(Ordering::Relaxed),
            cache_hits: self.cache_hits.load(Ordering::Relaxed),
            cache_misses: self.cache_misses.load(Ordering::Relaxed),
            cache_stores: self.cache_stores.load(Ordering::Relaxed),
            cache_evictions: self.cache_evictions.load(Ordering::Relaxed),
        }
    }
}

#[derive(Debug, Default)]
pub struct Context {
    pub settings: Settings,
    pub cache: Option<GbCache>,
    pub stats: Stats,
}

impl Context {
    pub fn new(settings: Settings) -> Self {
        Context { settings, cache: None, stats: Stats::default() }
    }

    pub fn with_cache(mut self, cache: GbCache) -> Self {
        self.cache = Some(cache);
        self
    }
}
