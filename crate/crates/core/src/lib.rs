//! Deduction engine for two-color Ramsey numbers of near-complete graphs,
//! with an exhaustive-search oracle for small instances.

pub mod error;
pub mod graph;
pub mod engine;
pub mod kb;
pub mod oracle;
pub mod manifest;

pub use error::{CertificateError, GraphError, KbError, ParseError};
pub use graph::{parse_pair_expr, AdjacencyGraph, GraphSpec};
pub use kb::{Fact, Interval, KnowledgeBase, RuleId};
pub use engine::{explain, propagate, EngineConfig, RuleSet};
pub use oracle::{arrows, ramsey_small, ColoringCertificate, SearchOptions};
