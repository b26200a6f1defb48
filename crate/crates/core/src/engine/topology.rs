//! Target enumeration: the catalog specs reachable from the knowledge base
//! by one-step family moves, and the neighbour tables the rules consult.

use std::collections::{BTreeSet, HashMap};

use crate::graph::GraphSpec;
use crate::kb::{KnowledgeBase, PairKey, SpecId};

/// One-step supergraphs within the catalog.
pub fn moves_up(spec: &GraphSpec) -> Vec<GraphSpec> {
    use GraphSpec::*;
    let out = match *spec {
        Complete(n) => vec![Complete(n + 1), CompleteMinusStar(n + 1, n)],
        CompleteMinusStar(n, s) => {
            let fewer = if s > 1 { CompleteMinusStar(n, s - 1) } else { Complete(n) };
            vec![fewer, CompleteMinusStar(n + 1, s)]
        }
        Cycle(n) if n >= 4 => vec![CompleteMinusStar(n, n - 3), Wheel(n + 1)],
        Wheel(n) if n >= 5 => vec![CompleteMinusStar(n, n - 4)],
        _ => Vec::new(),
    };
    out.into_iter().filter(|s| s.validate().is_ok()).collect()
}

/// One-step subgraphs within the catalog; the inverses of [`moves_up`].
pub fn moves_down(spec: &GraphSpec) -> Vec<GraphSpec> {
    use GraphSpec::*;
    let mut out = Vec::new();
    match *spec {
        Complete(n) => {
            if n >= 2 {
                out.push(Complete(n - 1));
            }
            if n >= 3 {
                out.push(CompleteMinusStar(n, 1));
            }
        }
        CompleteMinusStar(n, s) => {
            if s + 1 < n {
                out.push(CompleteMinusStar(n, s + 1));
            }
            if s + 1 == n {
                out.push(Complete(n - 1));
            } else if n >= 4 {
                out.push(CompleteMinusStar(n - 1, s));
            }
            if n >= 4 && s + 3 == n {
                out.push(Cycle(n));
            }
            if n >= 5 && s + 4 == n {
                out.push(Wheel(n));
            }
        }
        Wheel(n) if n >= 5 => out.push(Cycle(n - 1)),
        _ => {}
    }
    out
}

/// Single-vertex deletions used by the recursion rule.
pub fn deletions(spec: &GraphSpec) -> Vec<GraphSpec> {
    use GraphSpec::*;
    let mut out = Vec::new();
    match *spec {
        Complete(n) if n >= 2 => out.push(Complete(n - 1)),
        CompleteMinusStar(n, s) => {
            if s + 2 <= n && n >= 4 {
                out.push(CompleteMinusStar(n - 1, s));
            }
            out.push(Complete(n - 1));
            if s >= 2 && n >= 4 {
                out.push(CompleteMinusStar(n - 1, s - 1));
            }
        }
        Wheel(n) => out.push(Cycle(n - 1)),
        _ => {}
    }
    out
}

fn in_catalog(spec: &GraphSpec, n_max: usize) -> bool {
    spec.is_catalog()
        && spec.validate().is_ok()
        && spec.vertex_count() <= n_max
        && !matches!(spec, GraphSpec::Cycle(3) | GraphSpec::Wheel(4))
}

/// Closure of the specs appearing in stored pairs (plus any extras) under the
/// family moves, bounded by `n_max` vertices. Moves from `K_n - K_{1,s}` down
/// into cycles and wheels are not followed, so those families only appear
/// when something mentions them.
pub fn spec_closure(kb: &KnowledgeBase, extra: &[GraphSpec], n_max: usize) -> Vec<GraphSpec> {
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut found: Vec<GraphSpec> = Vec::new();
    let mut stack: Vec<GraphSpec> = Vec::new();
    for key in kb.stored_pairs() {
        stack.push(kb.spec(key.left).clone());
        stack.push(kb.spec(key.right).clone());
    }
    stack.extend(extra.iter().cloned());
    while let Some(spec) = stack.pop() {
        if !in_catalog(&spec, n_max) || !seen.insert(spec.to_string()) {
            continue;
        }
        for next in moves_up(&spec) {
            stack.push(next);
        }
        for next in moves_down(&spec) {
            let into_sparse = matches!(next, GraphSpec::Cycle(_) | GraphSpec::Wheel(_))
                && matches!(spec, GraphSpec::CompleteMinusStar(..));
            if !into_sparse {
                stack.push(next);
            }
        }
        found.push(spec);
    }
    found.sort_by_key(|s| s.to_string());
    found
}

/// Interned closure with per-spec neighbour tables.
#[derive(Clone, Debug)]
pub struct Topology {
    pub specs: Vec<SpecId>,
    pub pairs: Vec<PairKey>,
    pub up: HashMap<SpecId, Vec<SpecId>>,
    pub down: HashMap<SpecId, Vec<SpecId>>,
    pub deletions: HashMap<SpecId, Vec<SpecId>>,
    pub n_max: usize,
}

impl Topology {
    pub fn build(kb: &mut KnowledgeBase, extra: &[GraphSpec], n_max: usize) -> Topology {
        let closure = spec_closure(kb, extra, n_max);
        let ids: Vec<SpecId> = closure.iter().map(|s| kb.intern(s)).collect();
        let member: BTreeSet<String> = closure.iter().map(|s| s.to_string()).collect();
        let lookup = |kb: &mut KnowledgeBase, list: Vec<GraphSpec>| -> Vec<SpecId> {
            list.into_iter()
                .filter(|s| member.contains(&s.to_string()))
                .map(|s| kb.intern(&s))
                .collect()
        };
        let mut up = HashMap::new();
        let mut down = HashMap::new();
        let mut dels = HashMap::new();
        for (spec, &id) in closure.iter().zip(&ids) {
            up.insert(id, lookup(kb, moves_up(spec)));
            down.insert(id, lookup(kb, moves_down(spec)));
            dels.insert(id, lookup(kb, deletions(spec)));
        }
        let mut pairs = Vec::with_capacity(ids.len() * (ids.len() + 1) / 2);
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i..] {
                pairs.push(kb.key(a, b));
            }
        }
        pairs.sort_by(|x, y| kb.compare_pairs(*x, *y));
        Topology {
            specs: ids,
            pairs,
            up,
            down,
            deletions: dels,
            n_max,
        }
    }

    pub fn contains(&self, id: SpecId) -> bool {
        self.up.contains_key(&id)
    }
}
