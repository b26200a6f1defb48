//! Graph families, concrete realizations, and subgraph containment.

mod adjacency;
mod spec;
mod subgraph;

pub use adjacency::AdjacencyGraph;
pub use spec::{parse_pair_expr, GraphSpec};
pub use subgraph::{
    contains_subgraph, find_embedding, is_isomorphic, spec_subgraph_leq, AnchoredPattern,
    FALLBACK_VERTEX_CAP,
};
