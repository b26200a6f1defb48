//! Knowledge base of interval facts with provenance.

mod interval;
mod seed;
mod store;

pub use interval::Interval;
pub use seed::{parse_seed, replace_lines, Relation, SeedLine};
pub use store::{
    Derivation, DerivationId, Fact, Justification, KnowledgeBase, PairKey, Premise, RuleId, SpecId,
};

/// Seed file shipped with the crate.
pub const BUNDLED_SEED: &str = include_str!("../../data/seed.kb");
