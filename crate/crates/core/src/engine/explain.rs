//! Proof trees over the derivation arena.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::graph::GraphSpec;
use crate::kb::{DerivationId, Interval, KnowledgeBase, RuleId};

/// A derivation and the derivations that justified its premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub derivation: DerivationId,
    pub rule: RuleId,
    /// `lo`, `hi`, `lo+hi` or `merge` at the top level; `premise` below.
    pub role: &'static str,
    pub pair: String,
    pub equal_to: Option<String>,
    pub params: Vec<(&'static str, u64)>,
    pub source: Option<String>,
    pub interval: Interval,
    /// Set when this derivation was already expanded elsewhere in the tree.
    pub repeated: bool,
    pub children: Vec<ProofNode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Explanation {
    pub pair: String,
    pub interval: Interval,
    /// Other pairs in the same equality class.
    pub class: Vec<String>,
    pub roots: Vec<ProofNode>,
}

struct Builder<'a> {
    kb: &'a KnowledgeBase,
    expanded: HashSet<DerivationId>,
}

impl Builder<'_> {
    fn node(&mut self, id: DerivationId, role: &'static str) -> ProofNode {
        let d = self.kb.derivation(id);
        let repeated = !self.expanded.insert(id);
        let mut children = Vec::new();
        if !repeated {
            let mut seen = HashSet::new();
            for p in &d.premises {
                for why in [p.lo_why, p.hi_why].into_iter().flatten() {
                    if seen.insert(why) {
                        children.push(self.node(why, "premise"));
                    }
                }
            }
        }
        ProofNode {
            derivation: id,
            rule: d.rule,
            role,
            pair: self.kb.pair_text(d.target),
            equal_to: d.equal_to.map(|k| self.kb.pair_text(k)),
            params: d.params.clone(),
            source: d.source.clone(),
            interval: d.after,
            repeated,
            children,
        }
    }
}

/// Explains the current interval of `r(a,b)`. Unknown pairs yield the
/// default interval and no roots.
pub fn explain(kb: &KnowledgeBase, a: &GraphSpec, b: &GraphSpec) -> Explanation {
    let fact = kb.lookup(a, b);
    let pair = format!("r({a},{b})");
    let Some(key) = kb.find_pair(a, b) else {
        return Explanation {
            pair,
            interval: fact.interval,
            class: Vec::new(),
            roots: Vec::new(),
        };
    };
    let mut builder = Builder {
        kb,
        expanded: HashSet::new(),
    };
    let mut roots = Vec::new();
    match (fact.lo_why, fact.hi_why) {
        (Some(l), Some(h)) if l == h => roots.push(builder.node(l, "lo+hi")),
        (l, h) => {
            if let Some(l) = l {
                roots.push(builder.node(l, "lo"));
            }
            if let Some(h) = h {
                roots.push(builder.node(h, "hi"));
            }
        }
    }
    for m in kb.class_merges(key) {
        roots.push(builder.node(m, "merge"));
    }
    let class = kb
        .class_members(key)
        .into_iter()
        .filter(|&k| k != key)
        .map(|k| kb.pair_text(k))
        .collect();
    Explanation {
        pair,
        interval: fact.interval,
        class,
        roots,
    }
}

fn render_node(out: &mut String, node: &ProofNode, depth: usize) {
    let _ = write!(out, "{}[{}] {}", "  ".repeat(depth), node.role, node.rule);
    if !node.params.is_empty() {
        let ps: Vec<String> = node.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = write!(out, "{{{}}}", ps.join(","));
    }
    let _ = write!(out, " {}", node.pair);
    if let Some(eq) = &node.equal_to {
        let _ = write!(out, " = {eq}");
    }
    let _ = write!(out, " {}", node.interval);
    if let Some(src) = &node.source {
        let _ = write!(out, " src={src}");
    }
    if node.repeated {
        out.push_str(" (shown above)");
    }
    out.push('\n');
    for child in &node.children {
        render_node(out, child, depth + 1);
    }
}

impl Explanation {
    pub fn render(&self) -> String {
        let mut out = format!("{} in {}\n", self.pair, self.interval);
        if !self.class.is_empty() {
            let _ = writeln!(out, "equal to: {}", self.class.join(", "));
        }
        if self.roots.is_empty() {
            out.push_str("(default interval, no derivation)\n");
        }
        for root in &self.roots {
            render_node(&mut out, root, 1);
        }
        out
    }

    /// Line-oriented `key=value` records, one per distinct derivation in
    /// pre-order.
    pub fn log(&self) -> String {
        let mut out = String::new();
        for root in &self.roots {
            log_node(&mut out, root, 0);
        }
        out
    }
}

fn log_node(out: &mut String, node: &ProofNode, depth: usize) {
    if node.repeated {
        return;
    }
    let params = if node.params.is_empty() {
        "-".to_string()
    } else {
        let ps: Vec<String> = node.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        ps.join(",")
    };
    let _ = write!(
        out,
        "depth={depth} role={} rule={} pair={} params={params} new={}",
        node.role, node.rule, node.pair, node.interval
    );
    if let Some(eq) = &node.equal_to {
        let _ = write!(out, " eq={eq}");
    }
    if let Some(src) = &node.source {
        let _ = write!(out, " src={src}");
    }
    out.push('\n');
    for child in &node.children {
        log_node(out, child, depth + 1);
    }
}

/// Length of the longest chain of derivations behind the pair's interval.
pub fn derivation_depth(kb: &KnowledgeBase, a: &GraphSpec, b: &GraphSpec) -> usize {
    let fact = kb.lookup(a, b);
    let mut memo = HashMap::new();
    let mut ids: Vec<DerivationId> = fact.lo_why.into_iter().chain(fact.hi_why).collect();
    if let Some(key) = kb.find_pair(a, b) {
        ids.extend(kb.class_merges(key));
    }
    ids.into_iter().map(|id| depth_of(kb, id, &mut memo)).max().unwrap_or(0)
}

fn depth_of(kb: &KnowledgeBase, id: DerivationId, memo: &mut HashMap<DerivationId, usize>) -> usize {
    if let Some(&d) = memo.get(&id) {
        return d;
    }
    // premises always point at older derivations, so this terminates
    let d = kb.derivation(id);
    let below = d
        .premises
        .iter()
        .flat_map(|p| [p.lo_why, p.hi_why])
        .flatten()
        .map(|w| depth_of(kb, w, memo))
        .max()
        .unwrap_or(0);
    memo.insert(id, below + 1);
    below + 1
}
