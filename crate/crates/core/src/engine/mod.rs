//! Rule-based propagation to a fixpoint, and proof rendering.

mod explain;
mod propagate;
mod rules;
mod topology;

pub use explain::{derivation_depth, explain, Explanation, ProofNode};
pub use propagate::{propagate, EngineConfig, PropagationReport};
pub use rules::{base_value, theorem1_condition, theorem1_min_n, RuleApplication, RuleSet};
pub use topology::{deletions, moves_down, moves_up, spec_closure, Topology};
