//! Backtracking decision of `K_N -> (G, H)`.
//!
//! Edges are coloured vertex by vertex: every edge from vertex `k` to
//! `0..k` before any edge at `k + 1`. After each commitment the new edge is
//! checked for a monochromatic copy through it, using only committed edges,
//! so a pruned branch can never be rescued by a later colour choice.
//!
//! With symmetry reduction the first row (edges at vertex 0) is fixed to a
//! block of red edges followed by blue ones; any colouring can be relabelled
//! into this shape, so only the red degree `d` of vertex 0 is enumerated.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::certificate::ColoringCertificate;
use crate::error::GraphError;
use crate::graph::{AdjacencyGraph, AnchoredPattern, GraphSpec};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrowStatus {
    /// Every colouring contains a red `G` or a blue `H`.
    Arrows,
    /// A colouring with neither.
    NotArrows(ColoringCertificate),
    /// The node budget ran out first.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowResult {
    pub status: ArrowStatus,
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    pub threads: usize,
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            threads: 1,
            symmetry: true,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }
}

struct Problem {
    n: usize,
    edges: Vec<(usize, usize)>,
    red: AnchoredPattern,
    blue: AnchoredPattern,
    budget: u64,
}

enum Step {
    Closed,
    Found(ColoringCertificate),
    Halted,
}

struct Worker<'a> {
    p: &'a Problem,
    red: AdjacencyGraph,
    blue: AdjacencyGraph,
    /// Forced colour per edge index (`Some(true)` is red).
    forced: Vec<Option<bool>>,
    used: &'a AtomicU64,
    stop: &'a AtomicBool,
}

impl Worker<'_> {
    fn dfs(&mut self, e: usize) -> Step {
        if self.stop.load(Ordering::Relaxed) {
            return Step::Halted;
        }
        if e == self.p.edges.len() {
            return Step::Found(ColoringCertificate::from_red_graph(&self.red));
        }
        let (u, v) = self.p.edges[e];
        let choices: &[bool] = match self.forced[e] {
            Some(true) => &[true],
            Some(false) => &[false],
            None => &[false, true],
        };
        for &is_red in choices {
            if self.used.fetch_add(1, Ordering::Relaxed) >= self.p.budget {
                return Step::Halted;
            }
            let (graph, pattern) = if is_red {
                (&mut self.red, &self.p.red)
            } else {
                (&mut self.blue, &self.p.blue)
            };
            graph.add_edge(u, v);
            let dead = pattern.contains_through(graph, u, v);
            if !dead {
                match self.dfs(e + 1) {
                    Step::Closed => {}
                    other => {
                        self.uncolor(is_red, u, v);
                        return other;
                    }
                }
            }
            self.uncolor(is_red, u, v);
        }
        Step::Closed
    }

    fn uncolor(&mut self, is_red: bool, u: usize, v: usize) {
        if is_red {
            self.red.remove_edge(u, v);
        } else {
            self.blue.remove_edge(u, v);
        }
    }
}

fn edge_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|k| (0..k).map(move |j| (j, k))).collect()
}

/// Decides whether every red/blue colouring of `K_N` contains a red `G` or a
/// blue `H`. Never answers wrongly: an exhausted budget gives `Unknown`.
pub fn arrows(n: usize, g: &GraphSpec, h: &GraphSpec, opts: SearchOptions) -> Result<ArrowResult, GraphError> {
    if n > AdjacencyGraph::MAX_VERTICES {
        return Err(GraphError::TooLarge(n));
    }
    let (pg, ph) = (g.realize()?, h.realize()?);
    // an edgeless pattern appears in either colour once there are enough vertices
    if (!g.has_edge() && pg.vertex_count() <= n) || (!h.has_edge() && ph.vertex_count() <= n) {
        return Ok(ArrowResult {
            status: ArrowStatus::Arrows,
            nodes: 0,
        });
    }
    let problem = Problem {
        n,
        edges: edge_order(n),
        red: AnchoredPattern::new(&pg),
        blue: AnchoredPattern::new(&ph),
        budget: opts.budget,
    };
    let used = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let splits: Vec<Vec<Option<bool>>> = if opts.symmetry && n >= 2 {
        (0..n).map(|d| first_row(&problem, d)).collect()
    } else {
        vec![vec![None; problem.edges.len()]]
    };
    let results: Vec<Step> = if opts.threads > 1 && splits.len() > 1 {
        run_parallel(&problem, &splits, opts.threads, &used, &stop)
    } else {
        let mut out = Vec::new();
        for forced in &splits {
            let step = run_one(&problem, forced.clone(), &used, &stop);
            let done = !matches!(step, Step::Closed);
            out.push(step);
            if done {
                break;
            }
        }
        out
    };
    let nodes = used.load(Ordering::Relaxed).min(opts.budget);
    let mut halted = false;
    for step in results {
        match step {
            Step::Found(cert) => {
                return Ok(ArrowResult {
                    status: ArrowStatus::NotArrows(cert),
                    nodes,
                })
            }
            Step::Halted => halted = true,
            Step::Closed => {}
        }
    }
    let status = if halted { ArrowStatus::Unknown } else { ArrowStatus::Arrows };
    Ok(ArrowResult { status, nodes })
}

/// Forces edges `(0, k)` red for `k <= d` and blue otherwise.
fn first_row(p: &Problem, d: usize) -> Vec<Option<bool>> {
    p.edges
        .iter()
        .map(|&(u, v)| (u == 0).then_some(v <= d))
        .collect()
}

fn run_one(p: &Problem, forced: Vec<Option<bool>>, used: &AtomicU64, stop: &AtomicBool) -> Step {
    let mut worker = Worker {
        p,
        red: AdjacencyGraph::empty(p.n),
        blue: AdjacencyGraph::empty(p.n),
        forced,
        used,
        stop,
    };
    worker.dfs(0)
}

fn run_parallel(p: &Problem, splits: &[Vec<Option<bool>>], threads: usize, used: &AtomicU64, stop: &AtomicBool) -> Vec<Step> {
    let next = AtomicU64::new(0);
    let mut slots: Vec<Option<Step>> = (0..splits.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads.min(splits.len()))
            .map(|_| {
                scope.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed) as usize;
                        if i >= splits.len() {
                            break;
                        }
                        let step = run_one(p, splits[i].clone(), used, stop);
                        if !matches!(step, Step::Closed) {
                            stop.store(true, Ordering::Relaxed);
                        }
                        mine.push((i, step));
                    }
                    mine
                })
            })
            .collect();
        for handle in handles {
            for (i, step) in handle.join().expect("search worker panicked") {
                slots[i] = Some(step);
            }
        }
    });
    // prefer a found colouring over a halted split, in split order
    let mut steps: Vec<Step> = slots.into_iter().flatten().collect();
    steps.sort_by_key(|s| match s {
        Step::Found(_) => 0,
        Step::Halted => 1,
        Step::Closed => 2,
    });
    steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::certificate::is_good_coloring;

    fn g(s: &str) -> GraphSpec {
        s.parse().unwrap()
    }

    fn status(n: usize, a: &str, b: &str) -> ArrowStatus {
        arrows(n, &g(a), &g(b), SearchOptions::default()).unwrap().status
    }

    #[test]
    fn triangles() {
        assert_eq!(status(6, "K3", "K3"), ArrowStatus::Arrows);
        match status(5, "K3", "K3") {
            ArrowStatus::NotArrows(cert) => {
                assert!(is_good_coloring(&cert, &g("K3"), &g("K3")).unwrap());
                assert_eq!(cert.red_edges().len(), 5);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn path_vs_triangle() {
        assert_eq!(status(5, "K3-e", "K3"), ArrowStatus::Arrows);
        assert!(matches!(status(4, "K3-e", "K3"), ArrowStatus::NotArrows(_)));
    }

    #[test]
    fn budget_gives_unknown() {
        let r = arrows(8, &g("K3"), &g("K4"), SearchOptions::default().with_budget(50)).unwrap();
        assert_eq!(r.status, ArrowStatus::Unknown);
    }

    #[test]
    fn edgeless_and_tiny() {
        assert_eq!(status(1, "K1", "K5"), ArrowStatus::Arrows);
        assert_eq!(status(5, "K2", "K5"), ArrowStatus::Arrows);
        assert!(matches!(status(4, "K2", "K5"), ArrowStatus::NotArrows(_)));
        assert!(matches!(status(1, "K2", "K2"), ArrowStatus::NotArrows(_)));
    }

    #[test]
    fn parallel_matches_serial() {
        for (n, a, b) in [(8, "K3", "K4"), (9, "K3", "K4"), (6, "K3-e", "K4-e"), (5, "C4", "K3")] {
            let serial = arrows(n, &g(a), &g(b), SearchOptions::default()).unwrap();
            let par = arrows(n, &g(a), &g(b), SearchOptions::default().with_threads(4)).unwrap();
            assert_eq!(
                matches!(serial.status, ArrowStatus::Arrows),
                matches!(par.status, ArrowStatus::Arrows),
                "{n} {a} {b}"
            );
        }
    }
}
