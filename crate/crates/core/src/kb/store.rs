//! Interval facts about Ramsey numbers, grouped into equality classes.
//!
//! Every pair `(G, H)` is stored once in canonical order (the side whose
//! canonical text sorts first is on the left), so `r(G,H)` and `r(H,G)`
//! share one slot. Slots are nodes of a union-find forest; the interval and
//! its justification live at the class root.

use std::collections::HashMap;
use std::fmt;

use super::interval::Interval;
use crate::error::KbError;
use crate::graph::GraphSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecId(u32);

/// Canonically ordered pair of interned specs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairKey {
    pub left: SpecId,
    pub right: SpecId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivationId(pub usize);

/// Inference rules, in the order the engine applies them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Seed,
    Monotone,
    Recursion,
    Parity,
    Theorem1,
    Be89,
    Bbh98,
    Base,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::Seed,
        RuleId::Monotone,
        RuleId::Recursion,
        RuleId::Parity,
        RuleId::Theorem1,
        RuleId::Be89,
        RuleId::Bbh98,
        RuleId::Base,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Seed => "SEED",
            RuleId::Monotone => "MONOTONE",
            RuleId::Recursion => "RECURSION",
            RuleId::Parity => "PARITY",
            RuleId::Theorem1 => "THEOREM1",
            RuleId::Be89 => "BE89",
            RuleId::Bbh98 => "BBH98",
            RuleId::Base => "BASE",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Snapshot of a premise at the moment a derivation was recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Premise {
    pub pair: PairKey,
    pub interval: Interval,
    pub lo_why: Option<DerivationId>,
    pub hi_why: Option<DerivationId>,
}

/// One recorded inference step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub id: DerivationId,
    pub rule: RuleId,
    pub target: PairKey,
    /// Set for class merges: the pair `target` was declared equal to.
    pub equal_to: Option<PairKey>,
    pub params: Vec<(&'static str, u64)>,
    /// Literature tag for seeds.
    pub source: Option<String>,
    pub premises: Vec<Premise>,
    pub before: Interval,
    pub after: Interval,
}

/// What a rule hands to [`KnowledgeBase::tighten`] or
/// [`KnowledgeBase::assert_equal`] to justify a change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Justification {
    pub rule: RuleId,
    pub params: Vec<(&'static str, u64)>,
    pub premises: Vec<PairKey>,
    pub source: Option<String>,
}

impl Justification {
    pub fn new(rule: RuleId) -> Self {
        Justification {
            rule,
            params: Vec::new(),
            premises: Vec::new(),
            source: None,
        }
    }

    pub fn seed(source: impl Into<String>) -> Self {
        Justification {
            source: Some(source.into()),
            ..Justification::new(RuleId::Seed)
        }
    }

    pub fn param(mut self, name: &'static str, value: u64) -> Self {
        self.params.push((name, value));
        self
    }

    pub fn premise(mut self, pair: PairKey) -> Self {
        self.premises.push(pair);
        self
    }
}

/// Public view of a stored (or default) fact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub left: GraphSpec,
    pub right: GraphSpec,
    pub interval: Interval,
    pub lo_why: Option<DerivationId>,
    pub hi_why: Option<DerivationId>,
    /// Every derivation that changed this pair's class, oldest first.
    pub provenance: Vec<DerivationId>,
}

#[derive(Clone, Debug)]
struct SpecInfo {
    spec: GraphSpec,
    name: String,
    vertices: u64,
    has_edge: bool,
}

#[derive(Clone, Debug, Default)]
struct ClassState {
    interval: Option<Interval>,
    lo_why: Option<DerivationId>,
    hi_why: Option<DerivationId>,
    history: Vec<DerivationId>,
    members: Vec<usize>,
    merges: Vec<DerivationId>,
}

#[derive(Clone, Debug, Default)]
pub struct KnowledgeBase {
    specs: Vec<SpecInfo>,
    spec_ids: HashMap<GraphSpec, SpecId>,
    slots: HashMap<(SpecId, SpecId), usize>,
    pairs: Vec<PairKey>,
    parent: Vec<usize>,
    classes: Vec<ClassState>,
    derivations: Vec<Derivation>,
}

impl KnowledgeBase {
    pub fn new() -> Self {
        Self::default()
    }

    // ---- specs -------------------------------------------------------------

    pub fn intern(&mut self, spec: &GraphSpec) -> SpecId {
        if let Some(&id) = self.spec_ids.get(spec) {
            return id;
        }
        let id = SpecId(self.specs.len() as u32);
        self.specs.push(SpecInfo {
            spec: spec.clone(),
            name: spec.to_string(),
            vertices: spec.vertex_count() as u64,
            has_edge: spec.has_edge(),
        });
        self.spec_ids.insert(spec.clone(), id);
        id
    }

    pub fn spec_id(&self, spec: &GraphSpec) -> Option<SpecId> {
        self.spec_ids.get(spec).copied()
    }

    pub fn spec(&self, id: SpecId) -> &GraphSpec {
        &self.specs[id.0 as usize].spec
    }

    pub fn spec_name(&self, id: SpecId) -> &str {
        &self.specs[id.0 as usize].name
    }

    pub fn spec_ids(&self) -> impl Iterator<Item = SpecId> {
        (0..self.specs.len() as u32).map(SpecId)
    }

    // ---- pairs -------------------------------------------------------------

    /// Canonical key for the unordered pair `{a, b}`.
    pub fn key(&self, a: SpecId, b: SpecId) -> PairKey {
        if self.spec_name(a) <= self.spec_name(b) {
            PairKey { left: a, right: b }
        } else {
            PairKey { left: b, right: a }
        }
    }

    pub fn pair(&mut self, a: &GraphSpec, b: &GraphSpec) -> PairKey {
        let (a, b) = (self.intern(a), self.intern(b));
        self.key(a, b)
    }

    pub fn find_pair(&self, a: &GraphSpec, b: &GraphSpec) -> Option<PairKey> {
        Some(self.key(self.spec_id(a)?, self.spec_id(b)?))
    }

    pub fn pair_text(&self, key: PairKey) -> String {
        format!("r({},{})", self.spec_name(key.left), self.spec_name(key.right))
    }

    /// Default interval: `max(|V(G)|, |V(H)|)` when both sides have an edge,
    /// otherwise 1.
    pub fn base_interval(&self, key: PairKey) -> Interval {
        let (a, b) = (&self.specs[key.left.0 as usize], &self.specs[key.right.0 as usize]);
        if a.has_edge && b.has_edge {
            Interval::at_least(a.vertices.max(b.vertices))
        } else {
            Interval::at_least(1)
        }
    }

    fn slot(&self, key: PairKey) -> Option<usize> {
        self.slots.get(&(key.left, key.right)).copied()
    }

    fn ensure_slot(&mut self, key: PairKey) -> usize {
        if let Some(s) = self.slot(key) {
            return s;
        }
        let s = self.pairs.len();
        self.pairs.push(key);
        self.parent.push(s);
        self.classes.push(ClassState {
            interval: Some(self.base_interval(key)),
            members: vec![s],
            ..Default::default()
        });
        self.slots.insert((key.left, key.right), s);
        self.slots.insert((key.right, key.left), s);
        s
    }

    fn root(&self, mut s: usize) -> usize {
        while self.parent[s] != s {
            s = self.parent[s];
        }
        s
    }

    /// Current interval of the pair's class, or its default.
    pub fn interval(&self, key: PairKey) -> Interval {
        match self.slot(key) {
            Some(s) => self.classes[self.root(s)].interval.expect("root has interval"),
            None => self.base_interval(key),
        }
    }

    pub fn interval_of(&self, a: SpecId, b: SpecId) -> Interval {
        self.interval(self.key(a, b))
    }

    pub fn why(&self, key: PairKey) -> (Option<DerivationId>, Option<DerivationId>) {
        match self.slot(key) {
            Some(s) => {
                let c = &self.classes[self.root(s)];
                (c.lo_why, c.hi_why)
            }
            None => (None, None),
        }
    }

    pub fn same_class(&self, a: PairKey, b: PairKey) -> bool {
        if a == b {
            return true;
        }
        match (self.slot(a), self.slot(b)) {
            (Some(x), Some(y)) => self.root(x) == self.root(y),
            _ => false,
        }
    }

    /// Members of the pair's equality class (just the pair itself if unmerged).
    pub fn class_members(&self, key: PairKey) -> Vec<PairKey> {
        match self.slot(key) {
            Some(s) => self.classes[self.root(s)].members.iter().map(|&m| self.pairs[m]).collect(),
            None => vec![key],
        }
    }

    /// Merge derivations that built the pair's class.
    pub fn class_merges(&self, key: PairKey) -> Vec<DerivationId> {
        match self.slot(key) {
            Some(s) => self.classes[self.root(s)].merges.clone(),
            None => Vec::new(),
        }
    }

    /// All pairs with a stored slot, in canonical text order.
    pub fn stored_pairs(&self) -> Vec<PairKey> {
        let mut keys = self.pairs.clone();
        keys.sort_by(|a, b| self.compare_pairs(*a, *b));
        keys
    }

    pub fn compare_pairs(&self, a: PairKey, b: PairKey) -> std::cmp::Ordering {
        (self.spec_name(a.left), self.spec_name(a.right))
            .cmp(&(self.spec_name(b.left), self.spec_name(b.right)))
    }

    pub fn lookup(&self, a: &GraphSpec, b: &GraphSpec) -> Fact {
        let (left, right) = if a.to_string() <= b.to_string() { (a, b) } else { (b, a) };
        match self.find_pair(a, b) {
            Some(key) => self.fact(key),
            None => {
                let base = if a.has_edge() && b.has_edge() {
                    Interval::at_least(a.vertex_count().max(b.vertex_count()) as u64)
                } else {
                    Interval::at_least(1)
                };
                Fact {
                    left: left.clone(),
                    right: right.clone(),
                    interval: base,
                    lo_why: None,
                    hi_why: None,
                    provenance: Vec::new(),
                }
            }
        }
    }

    pub fn fact(&self, key: PairKey) -> Fact {
        let (lo_why, hi_why) = self.why(key);
        let provenance = match self.slot(key) {
            Some(s) => self.classes[self.root(s)].history.clone(),
            None => Vec::new(),
        };
        Fact {
            left: self.spec(key.left).clone(),
            right: self.spec(key.right).clone(),
            interval: self.interval(key),
            lo_why,
            hi_why,
            provenance,
        }
    }

    // ---- derivations -------------------------------------------------------

    pub fn derivation(&self, id: DerivationId) -> &Derivation {
        &self.derivations[id.0]
    }

    pub fn derivations(&self) -> &[Derivation] {
        &self.derivations
    }

    fn snapshot(&self, pair: PairKey) -> Premise {
        let (lo_why, hi_why) = self.why(pair);
        Premise {
            pair,
            interval: self.interval(pair),
            lo_why,
            hi_why,
        }
    }

    fn describe(&self, id: Option<DerivationId>, fallback: PairKey) -> String {
        match id {
            Some(id) => self.describe_derivation(id),
            None => format!("default bound of {}", self.pair_text(fallback)),
        }
    }

    /// One-line rendering such as `THEOREM1{N=11,n=4,s=3} r(K4-e,K5-K1,3) [11,11]`.
    pub fn describe_derivation(&self, id: DerivationId) -> String {
        let d = self.derivation(id);
        let mut out = d.rule.to_string();
        if !d.params.is_empty() {
            let ps: Vec<String> = d.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("{{{}}}", ps.join(",")));
        }
        out.push(' ');
        out.push_str(&self.pair_text(d.target));
        if let Some(other) = d.equal_to {
            out.push_str(" = ");
            out.push_str(&self.pair_text(other));
        }
        out.push(' ');
        out.push_str(&d.after.to_string());
        if let Some(src) = &d.source {
            out.push_str(&format!(" src={src}"));
        }
        out
    }

    fn record(&mut self, key: PairKey, equal_to: Option<PairKey>, why: Justification, before: Interval, after: Interval) -> DerivationId {
        let premises = why.premises.iter().map(|&p| self.snapshot(p)).collect();
        let id = DerivationId(self.derivations.len());
        self.derivations.push(Derivation {
            id,
            rule: why.rule,
            target: key,
            equal_to,
            params: why.params,
            source: why.source,
            premises,
            before,
            after,
        });
        id
    }

    /// Intersects the pair's interval with `[new_lo, new_hi]`. Returns whether
    /// the interval shrank; a derivation is recorded only in that case.
    pub fn tighten(&mut self, key: PairKey, new_lo: Option<u64>, new_hi: Option<u64>, why: Justification) -> Result<bool, KbError> {
        let current = self.interval(key);
        let next = current.intersect(&Interval::new(new_lo.unwrap_or(0), new_hi));
        if next.is_empty() {
            let (lo_why, hi_why) = self.why(key);
            let existing = if next.lo > current.lo { hi_why } else { lo_why };
            return Err(KbError::Contradiction {
                pair: self.pair_text(key),
                existing: format!("{} ({})", self.describe(existing, key), current),
                incoming: format!("{} {}", why.rule, Interval::new(new_lo.unwrap_or(0), new_hi)),
            });
        }
        if next == current {
            return Ok(false);
        }
        let slot = self.ensure_slot(key);
        let root = self.root(slot);
        let id = self.record(key, None, why, current, next);
        let class = &mut self.classes[root];
        if next.lo != current.lo {
            class.lo_why = Some(id);
        }
        if next.hi != current.hi {
            class.hi_why = Some(id);
        }
        class.interval = Some(next);
        class.history.push(id);
        Ok(true)
    }

    /// Declares `r(a) = r(b)`: merges the two classes and intersects their
    /// intervals. Returns `false` when they already share a class.
    pub fn assert_equal(&mut self, a: PairKey, b: PairKey, why: Justification) -> Result<bool, KbError> {
        let sa = self.ensure_slot(a);
        let sb = self.ensure_slot(b);
        let (ra, rb) = (self.root(sa), self.root(sb));
        if ra == rb {
            return Ok(false);
        }
        let ia = self.classes[ra].interval.expect("root");
        let ib = self.classes[rb].interval.expect("root");
        let merged = ia.intersect(&ib);
        if merged.is_empty() {
            let (ca, cb) = (&self.classes[ra], &self.classes[rb]);
            let (left_why, right_why) = if ia.lo > ib.hi.unwrap_or(u64::MAX) {
                (ca.lo_why, cb.hi_why)
            } else {
                (ca.hi_why, cb.lo_why)
            };
            return Err(KbError::Contradiction {
                pair: format!("{} = {}", self.pair_text(a), self.pair_text(b)),
                existing: format!("{} ({ia}) vs {} ({ib})", self.describe(left_why, a), self.describe(right_why, b)),
                incoming: why.rule.to_string(),
            });
        }
        let id = self.record(a, Some(b), why, ia, merged);
        let (big, small) = if self.classes[ra].members.len() >= self.classes[rb].members.len() {
            (ra, rb)
        } else {
            (rb, ra)
        };
        let small_state = std::mem::take(&mut self.classes[small]);
        let big_state = std::mem::take(&mut self.classes[big]);
        let pick_lo = |x: &ClassState, y: &ClassState| {
            if x.interval.unwrap().lo >= y.interval.unwrap().lo { x.lo_why } else { y.lo_why }
        };
        let hi_key = |c: &ClassState| c.interval.unwrap().hi.unwrap_or(u64::MAX);
        let lo_why = pick_lo(&big_state, &small_state);
        let hi_why = if hi_key(&big_state) <= hi_key(&small_state) { big_state.hi_why } else { small_state.hi_why };
        let mut history = big_state.history;
        history.extend(small_state.history);
        history.push(id);
        let mut members = big_state.members;
        members.extend(small_state.members);
        let mut merges = big_state.merges;
        merges.extend(small_state.merges);
        merges.push(id);
        self.classes[big] = ClassState {
            interval: Some(merged),
            lo_why,
            hi_why,
            history,
            members,
            merges,
        };
        self.parent[small] = big;
        Ok(true)
    }

    /// Number of equality classes among stored pairs.
    pub fn class_count(&self) -> usize {
        (0..self.pairs.len()).filter(|&s| self.parent[s] == s).count()
    }
}
