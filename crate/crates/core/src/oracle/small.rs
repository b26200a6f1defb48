use super::certificate::ColoringCertificate;
use super::search::{arrows, ArrowStatus, SearchOptions};
use crate::error::GraphError;
use crate::graph::GraphSpec;
use crate::kb::{Interval, KnowledgeBase};

/// Result of a capped upward scan for `r(G, H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallRamsey {
    pub interval: Interval,
    /// A good colouring on `interval.lo - 1` vertices, when one was found.
    pub witness: Option<ColoringCertificate>,
    /// Whether the value was pinned down exactly.
    pub complete: bool,
    pub nodes: u64,
}

/// Trivial lower bound: `max(|V(G)|, |V(H)|)` when both graphs have an edge.
pub fn trivial_lower_bound(g: &GraphSpec, h: &GraphSpec) -> usize {
    if g.has_edge() && h.has_edge() {
        g.vertex_count().max(h.vertex_count())
    } else {
        1
    }
}

/// Scans `N` upward from the trivial lower bound until `K_N` arrows
/// `(G, H)`, stopping early at `n_cap` or on an exhausted budget.
pub fn ramsey_small(g: &GraphSpec, h: &GraphSpec, n_cap: usize, opts: SearchOptions) -> Result<SmallRamsey, GraphError> {
    let mut lo = trivial_lower_bound(g, h);
    let mut witness = None;
    let mut nodes = 0;
    let mut n = lo;
    while n <= n_cap {
        let r = arrows(n, g, h, opts)?;
        nodes += r.nodes;
        match r.status {
            ArrowStatus::Arrows => {
                return Ok(SmallRamsey {
                    interval: Interval::exact(n as u64),
                    witness,
                    complete: true,
                    nodes,
                })
            }
            ArrowStatus::NotArrows(cert) => {
                witness = Some(cert);
                lo = n + 1;
            }
            ArrowStatus::Unknown => break,
        }
        n += 1;
    }
    Ok(SmallRamsey {
        interval: Interval::at_least(lo as u64),
        witness,
        complete: false,
        nodes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditKind {
    /// The oracle's interval is disjoint from the stored one.
    Soundness,
    /// The stored interval strictly contains the oracle's.
    Looser,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditEntry {
    pub pair: String,
    pub kind: AuditKind,
    pub stored: Interval,
    pub oracle: Interval,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub checked: usize,
    /// Pairs whose search ran out of budget or cap before an answer.
    pub undecided: usize,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn soundness_failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| e.kind == AuditKind::Soundness)
    }
}

/// Largest value the audit tries to compute.
pub const AUDIT_VALUE_CAP: usize = 10;

/// Compares stored intervals against exhaustive search for every stored pair
/// whose graphs have at most `vertex_cap` vertices and whose stored lower
/// bound is at most [`AUDIT_VALUE_CAP`].
pub fn audit(kb: &KnowledgeBase, vertex_cap: usize, opts: SearchOptions) -> Result<AuditReport, GraphError> {
    let mut report = AuditReport::default();
    for key in kb.stored_pairs() {
        let (g, h) = (kb.spec(key.left), kb.spec(key.right));
        if g.vertex_count() > vertex_cap || h.vertex_count() > vertex_cap {
            continue;
        }
        let stored = kb.interval(key);
        if stored.lo > AUDIT_VALUE_CAP as u64 {
            continue;
        }
        report.checked += 1;
        let found = ramsey_small(g, h, AUDIT_VALUE_CAP, opts)?;
        let oracle = found.interval;
        if !found.complete {
            report.undecided += 1;
        }
        let disjoint = stored.intersect(&oracle).is_empty();
        let kind = if disjoint {
            Some(AuditKind::Soundness)
        } else if found.complete && stored != oracle {
            Some(AuditKind::Looser)
        } else {
            None
        };
        if let Some(kind) = kind {
            report.entries.push(AuditEntry {
                pair: kb.pair_text(key),
                kind,
                stored,
                oracle,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GraphSpec {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        let opts = SearchOptions::default();
        for (a, b, v) in [("K3-e", "K4-e", 5), ("K3-e", "K4", 7), ("K2", "K5", 5), ("K3", "K3", 6)] {
            let r = ramsey_small(&g(a), &g(b), 10, opts).unwrap();
            assert_eq!(r.interval, Interval::exact(v), "{a} {b}");
            assert!(r.complete);
        }
    }

    #[test]
    fn witness_is_on_one_fewer_vertex() {
        let r = ramsey_small(&g("K3"), &g("K3"), 10, SearchOptions::default()).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.n(), 5);
        assert!(super::super::is_good_coloring(&w, &g("K3"), &g("K3")).unwrap());
    }

    #[test]
    fn cap_gives_partial_interval() {
        let r = ramsey_small(&g("K3"), &g("K4"), 6, SearchOptions::default()).unwrap();
        assert_eq!(r.interval, Interval::at_least(7));
        assert!(!r.complete);
    }

    #[test]
    fn audit_cases() {
        let opts = SearchOptions::default();
        assert_eq!(audit(&KnowledgeBase::new(), 4, opts).unwrap(), AuditReport::default());
        let good = KnowledgeBase::load_seed("K3 K3 = 6 src=Rad\nK3-e K3 = 5 src=Rad\nK3-e K3-e = 3 src=Rad\n").unwrap();
        assert_eq!(audit(&good, 4, opts).unwrap().soundness_failures().count(), 0);
        let bad = KnowledgeBase::load_seed("K3 K3 = 5 src=bad\n").unwrap();
        let report = audit(&bad, 4, opts).unwrap();
        assert_eq!(report.soundness_failures().count(), 1);
    }
}
