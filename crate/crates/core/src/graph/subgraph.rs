//! Non-induced subgraph containment by backtracking over bitset rows.
//!
//! Pattern vertices are placed in a connectivity-first order (most placed
//! neighbours first, then highest degree), so every candidate set is the
//! intersection of the host rows of already-placed neighbours.

use super::adjacency::{mask, AdjacencyGraph, BitIter};
use super::spec::GraphSpec;
use crate::error::GraphError;

/// Largest vertex count for which family comparisons fall back to explicit search.
pub const FALLBACK_VERTEX_CAP: usize = 12;

const UNMAPPED: usize = usize::MAX;

/// A placement order for the pattern vertices together with, for each
/// position, the set of pattern neighbours placed earlier.
#[derive(Clone, Debug)]
struct Plan {
    order: Vec<usize>,
    earlier: Vec<u64>,
    degree: Vec<usize>,
}

impl Plan {
    fn new(pattern: &AdjacencyGraph, start: &[usize]) -> Plan {
        let n = pattern.vertex_count();
        let degree: Vec<usize> = (0..n).map(|v| pattern.degree(v)).collect();
        let mut order: Vec<usize> = start.to_vec();
        let mut placed: u64 = start.iter().fold(0, |m, &v| m | 1 << v);
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    let links = (pattern.row(v) & placed).count_ones();
                    // prefer lower index on ties: reverse it into the key
                    (links, degree[v], usize::MAX - v)
                })
                .expect("unplaced vertex exists");
            order.push(next);
            placed |= 1 << next;
        }
        let mut earlier = Vec::with_capacity(n);
        let mut seen = 0u64;
        for &v in &order {
            earlier.push(pattern.row(v) & seen);
            seen |= 1 << v;
        }
        Plan { order, earlier, degree }
    }
}

struct Search<'a> {
    plan: &'a Plan,
    host: &'a AdjacencyGraph,
    host_degree: [u8; 64],
    image: [usize; 64],
    used: u64,
}

impl<'a> Search<'a> {
    fn new(plan: &'a Plan, host: &'a AdjacencyGraph) -> Self {
        let mut host_degree = [0u8; 64];
        for (v, d) in host_degree.iter_mut().enumerate().take(host.vertex_count()) {
            *d = host.degree(v) as u8;
        }
        Search {
            plan,
            host,
            host_degree,
            image: [UNMAPPED; 64],
            used: 0,
        }
    }

    fn mapping(&self) -> Vec<usize> {
        self.image[..self.plan.order.len()].to_vec()
    }

    fn candidates(&self, pos: usize) -> u64 {
        let mut cand = mask(self.host.vertex_count()) & !self.used;
        for p in BitIter(self.plan.earlier[pos]) {
            cand &= self.host.row(self.image[p]);
        }
        cand
    }

    fn assign(&mut self, pos: usize, h: usize) -> bool {
        let pv = self.plan.order[pos];
        if self.used >> h & 1 == 1 || (self.host_degree[h] as usize) < self.plan.degree[pv] {
            return false;
        }
        if self.candidates(pos) >> h & 1 == 0 {
            return false;
        }
        self.image[pv] = h;
        self.used |= 1 << h;
        true
    }

    fn unassign(&mut self, pos: usize) {
        let pv = self.plan.order[pos];
        self.used &= !(1 << self.image[pv]);
        self.image[pv] = UNMAPPED;
    }

    fn extend(&mut self, pos: usize) -> bool {
        if pos == self.plan.order.len() {
            return true;
        }
        let pv = self.plan.order[pos];
        let need = self.plan.degree[pv];
        for h in BitIter(self.candidates(pos)) {
            if (self.host_degree[h] as usize) < need {
                continue;
            }
            self.image[pv] = h;
            self.used |= 1 << h;
            if self.extend(pos + 1) {
                return true;
            }
            self.used &= !(1 << h);
        }
        self.image[pv] = UNMAPPED;
        false
    }
}

/// Returns an injective map `pattern vertex -> host vertex` carrying every
/// pattern edge onto a host edge, if one exists.
pub fn find_embedding(host: &AdjacencyGraph, pattern: &AdjacencyGraph) -> Option<Vec<usize>> {
    if pattern.vertex_count() > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return None;
    }
    let plan = Plan::new(pattern, &[]);
    let mut search = Search::new(&plan, host);
    search.extend(0).then(|| search.mapping())
}

pub fn contains_subgraph(host: &AdjacencyGraph, pattern: &AdjacencyGraph) -> bool {
    find_embedding(host, pattern).is_some()
}

/// Isomorphism via containment between graphs with equal vertex and edge counts.
pub fn is_isomorphic(a: &AdjacencyGraph, b: &AdjacencyGraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && a.degree_sequence() == b.degree_sequence()
        && contains_subgraph(a, b)
}

/// A pattern prepared for repeated "does the host contain a copy through this
/// edge" queries, as needed when colouring edges one at a time.
///
/// Only one representative per edge orbit of the pattern's automorphism group
/// is tried as the anchor.
#[derive(Clone, Debug)]
pub struct AnchoredPattern {
    graph: AdjacencyGraph,
    anchors: Vec<(usize, usize, Plan)>,
    free: Plan,
}

impl AnchoredPattern {
    pub fn new(pattern: &AdjacencyGraph) -> Self {
        let edges: Vec<(usize, usize)> = pattern.edges().collect();
        let mut covered = vec![false; edges.len()];
        let mut anchors = Vec::new();
        for i in 0..edges.len() {
            if covered[i] {
                continue;
            }
            let (a, b) = edges[i];
            let plan = Plan::new(pattern, &[a, b]);
            for j in i + 1..edges.len() {
                if covered[j] {
                    continue;
                }
                let (c, d) = edges[j];
                if anchored_embedding(&plan, pattern, c, d).is_some()
                    || anchored_embedding(&plan, pattern, d, c).is_some()
                {
                    covered[j] = true;
                }
            }
            anchors.push((a, b, plan));
        }
        AnchoredPattern {
            graph: pattern.clone(),
            anchors,
            free: Plan::new(pattern, &[]),
        }
    }

    pub fn graph(&self) -> &AdjacencyGraph {
        &self.graph
    }

    pub fn anchor_count(&self) -> usize {
        self.anchors.len()
    }

    /// Whether `host` contains a copy of the pattern that uses host edge `(u, v)`.
    /// Patterns without edges are contained whenever the host has enough vertices.
    pub fn contains_through(&self, host: &AdjacencyGraph, u: usize, v: usize) -> bool {
        if self.anchors.is_empty() {
            return self.graph.vertex_count() <= host.vertex_count();
        }
        self.anchors.iter().any(|(_, _, plan)| {
            anchored_embedding(plan, host, u, v).is_some()
                || anchored_embedding(plan, host, v, u).is_some()
        })
    }

    pub fn find_in(&self, host: &AdjacencyGraph) -> Option<Vec<usize>> {
        if self.graph.vertex_count() > host.vertex_count() {
            return None;
        }
        let mut search = Search::new(&self.free, host);
        search.extend(0).then(|| search.mapping())
    }
}

fn anchored_embedding(plan: &Plan, host: &AdjacencyGraph, u: usize, v: usize) -> Option<Vec<usize>> {
    if plan.order.len() > host.vertex_count() {
        return None;
    }
    let mut search = Search::new(plan, host);
    if !search.assign(0, u) {
        return None;
    }
    if !search.assign(1, v) {
        search.unassign(0);
        return None;
    }
    search.extend(2).then(|| search.mapping())
}

/// Decides whether `a` is a (non-induced) subgraph of `b`, allowing `b` extra
/// vertices. Closed forms cover the families; everything else falls back to
/// explicit search on realizations of at most [`FALLBACK_VERTEX_CAP`] vertices.
pub fn spec_subgraph_leq(a: &GraphSpec, b: &GraphSpec) -> Result<bool, GraphError> {
    use GraphSpec::*;
    a.validate()?;
    b.validate()?;
    let (na, nb) = (a.vertex_count(), b.vertex_count());
    if na > nb || a.edge_count() > b.edge_count() {
        return Ok(false);
    }
    let closed = match (a, b) {
        (Complete(_), Complete(_)) => Some(true),
        // clique number of K_n - K_{1,s} is n - 1
        (Complete(x), CompleteMinusStar(n, _)) => Some(*x < *n),
        (CompleteMinusStar(..), Complete(_)) => Some(true),
        (CompleteMinusStar(n, s), CompleteMinusStar(m, t)) => Some(n < m || t <= s),
        (Cycle(_), Complete(_)) | (Wheel(_), Complete(_)) => Some(true),
        // the star centre keeps n - 1 - s neighbours; a cycle vertex needs 2, a rim vertex 3
        (Cycle(x), CompleteMinusStar(n, s)) => Some(*x < *n || *s + 3 <= *n),
        (Wheel(x), CompleteMinusStar(n, s)) => Some(*x < *n || *s + 4 <= *n),
        // hub plus a rim path closes a cycle of every length up to n
        (Cycle(_), Wheel(_)) => Some(true),
        (Cycle(x), Cycle(n)) => Some(x == n),
        _ => None,
    };
    if let Some(answer) = closed {
        return Ok(answer);
    }
    if nb > FALLBACK_VERTEX_CAP {
        return Err(GraphError::Undecided(a.to_string(), b.to_string()));
    }
    Ok(contains_subgraph(&b.realize()?, &a.realize()?))
}
