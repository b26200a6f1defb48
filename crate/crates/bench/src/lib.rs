//! Shared fixtures for the benchmarks.

use ramsey_core::kb::BUNDLED_SEED;
use ramsey_core::{GraphSpec, KnowledgeBase};

/// The bundled seed, loaded but not propagated.
pub fn seeded_kb() -> KnowledgeBase {
    KnowledgeBase::load_seed(BUNDLED_SEED).expect("bundled seed loads")
}

pub fn spec(s: &str) -> GraphSpec {
    s.parse().expect("valid graph")
}
