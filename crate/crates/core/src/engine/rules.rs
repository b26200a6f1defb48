//! The inference rules. Each rule reads premise intervals from the knowledge
//! base and tightens or merges a target pair.
//!
//! Theorem-style hypotheses mention true Ramsey numbers; the rules substitute
//! the stored upper bounds, which is sound because every side condition used
//! here is monotone in the premise value.

use std::fmt;

use super::topology::Topology;
use crate::error::KbError;
use crate::graph::GraphSpec;
use crate::kb::{DerivationId, Interval, Justification, KnowledgeBase, PairKey, RuleId, SpecId};

/// Set of enabled rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleSet(u16);

impl RuleSet {
    pub fn all() -> Self {
        RuleSet(u16::MAX)
    }

    pub fn none() -> Self {
        RuleSet(0)
    }

    fn bit(rule: RuleId) -> u16 {
        1 << RuleId::ALL.iter().position(|&r| r == rule).unwrap()
    }

    pub fn with(self, rule: RuleId) -> Self {
        RuleSet(self.0 | Self::bit(rule))
    }

    pub fn without(self, rule: RuleId) -> Self {
        RuleSet(self.0 & !Self::bit(rule))
    }

    pub fn contains(&self, rule: RuleId) -> bool {
        self.0 & Self::bit(rule) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = RuleId> + '_ {
        RuleId::ALL.into_iter().filter(|&r| self.contains(r))
    }
}

impl Default for RuleSet {
    fn default() -> Self {
        Self::all()
    }
}

/// One change made by a rule, rendered for the application log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub target: String,
    pub equal_to: Option<String>,
    pub params: Vec<(&'static str, u64)>,
    pub old: Interval,
    pub new: Interval,
    pub derivation: DerivationId,
}

impl fmt::Display for RuleApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = if self.params.is_empty() {
            "-".to_string()
        } else {
            let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            ps.join(",")
        };
        write!(
            f,
            "rule={} pair={} params={} old={} new={}",
            self.rule, self.target, params, self.old, self.new
        )?;
        if let Some(eq) = &self.equal_to {
            write!(f, " eq={eq}")?;
        }
        Ok(())
    }
}

/// Mutable context shared by the rules during one propagation.
pub struct Ctx<'a> {
    pub kb: &'a mut KnowledgeBase,
    pub topo: &'a Topology,
    pub rules: RuleSet,
    pub log: &'a mut Vec<RuleApplication>,
}

impl Ctx<'_> {
    fn record(&mut self, rule: RuleId, target: PairKey, equal_to: Option<PairKey>, params: Vec<(&'static str, u64)>, old: Interval) {
        let derivation = DerivationId(self.kb.derivations().len() - 1);
        let app = RuleApplication {
            rule,
            target: self.kb.pair_text(target),
            equal_to: equal_to.map(|k| self.kb.pair_text(k)),
            params,
            old,
            new: self.kb.interval(target),
            derivation,
        };
        self.log.push(app);
    }

    pub fn tighten(&mut self, key: PairKey, lo: Option<u64>, hi: Option<u64>, why: Justification) -> Result<bool, KbError> {
        let old = self.kb.interval(key);
        let (rule, params) = (why.rule, why.params.clone());
        let changed = self.kb.tighten(key, lo, hi, why)?;
        if changed {
            self.record(rule, key, None, params, old);
        }
        Ok(changed)
    }

    pub fn assert_equal(&mut self, a: PairKey, b: PairKey, why: Justification) -> Result<bool, KbError> {
        let old = self.kb.interval(a);
        let (rule, params) = (why.rule, why.params.clone());
        let changed = self.kb.assert_equal(a, b, why)?;
        if changed {
            self.record(rule, a, Some(b), params, old);
        }
        Ok(changed)
    }

    fn hi(&self, a: SpecId, b: SpecId) -> Option<u64> {
        self.kb.interval_of(a, b).hi
    }
}

// ---- BASE --------------------------------------------------------------------

/// Exact value for pairs with an edgeless side or a `K_2` side.
pub fn base_value(a: &GraphSpec, b: &GraphSpec) -> Option<u64> {
    let edgeless = |g: &GraphSpec| !g.has_edge();
    let is_k2 = |g: &GraphSpec| *g == GraphSpec::Complete(2);
    let (va, vb) = (a.vertex_count() as u64, b.vertex_count() as u64);
    match (edgeless(a), edgeless(b)) {
        (true, true) => Some(va.min(vb)),
        (true, false) => Some(va),
        (false, true) => Some(vb),
        (false, false) if is_k2(a) => Some(vb),
        (false, false) if is_k2(b) => Some(va),
        _ => None,
    }
}

pub fn rule_base(ctx: &mut Ctx<'_>, key: PairKey) -> Result<(), KbError> {
    let value = base_value(ctx.kb.spec(key.left), ctx.kb.spec(key.right));
    if let Some(v) = value {
        ctx.tighten(key, Some(v), Some(v), Justification::new(RuleId::Base))?;
    }
    Ok(())
}

/// Applies BASE to a premise pair outside the target set so rules can use it.
fn ensure_base(ctx: &mut Ctx<'_>, a: SpecId, b: SpecId) -> Result<(), KbError> {
    if !ctx.rules.contains(RuleId::Base) {
        return Ok(());
    }
    let key = ctx.kb.key(a, b);
    rule_base(ctx, key)
}

// ---- MONOTONE ----------------------------------------------------------------

/// Pulls bounds from one-step neighbours: a supergraph pair bounds `hi` from
/// above, a subgraph pair bounds `lo` from below.
pub fn rule_monotone(ctx: &mut Ctx<'_>, key: PairKey) -> Result<(), KbError> {
    let (a, b) = (key.left, key.right);
    let mut best_hi: Option<(u64, PairKey)> = None;
    let mut best_lo: Option<(u64, PairKey)> = None;
    let topo = ctx.topo;
    let neighbours = |side: &std::collections::HashMap<SpecId, Vec<SpecId>>| {
        let mut out = Vec::new();
        for &x in side.get(&a).map(Vec::as_slice).unwrap_or(&[]) {
            out.push((x, b));
        }
        for &y in side.get(&b).map(Vec::as_slice).unwrap_or(&[]) {
            out.push((a, y));
        }
        out
    };
    for (x, y) in neighbours(&topo.up) {
        let other = ctx.kb.key(x, y);
        if let Some(h) = ctx.kb.interval(other).hi {
            if best_hi.is_none_or(|(v, _)| h < v) {
                best_hi = Some((h, other));
            }
        }
    }
    for (x, y) in neighbours(&topo.down) {
        let other = ctx.kb.key(x, y);
        let l = ctx.kb.interval(other).lo;
        if best_lo.is_none_or(|(v, _)| l > v) {
            best_lo = Some((l, other));
        }
    }
    if let Some((h, other)) = best_hi {
        ctx.tighten(key, None, Some(h), Justification::new(RuleId::Monotone).premise(other))?;
    }
    if let Some((l, other)) = best_lo {
        ctx.tighten(key, Some(l), None, Justification::new(RuleId::Monotone).premise(other))?;
    }
    Ok(())
}

// ---- RECURSION / PARITY --------------------------------------------------------

/// Best `(a, b, premise_a, premise_b)` over all deletion choices, where `a`
/// bounds `r(G-u, H)` and `b` bounds `r(G, H-w)`. With `even_only` only
/// combinations with both bounds even are considered.
fn best_split(ctx: &mut Ctx<'_>, g: SpecId, h: SpecId, even_only: bool) -> Result<Option<(u64, u64, PairKey, PairKey)>, KbError> {
    let topo = ctx.topo;
    let dg = topo.deletions.get(&g).map(Vec::as_slice).unwrap_or(&[]);
    let dh = topo.deletions.get(&h).map(Vec::as_slice).unwrap_or(&[]);
    let mut best: Option<(u64, u64, PairKey, PairKey)> = None;
    for &gu in dg {
        ensure_base(ctx, gu, h)?;
        let Some(a) = ctx.hi(gu, h) else { continue };
        for &hw in dh {
            ensure_base(ctx, g, hw)?;
            let Some(b) = ctx.hi(g, hw) else { continue };
            if even_only && (a % 2 != 0 || b % 2 != 0) {
                continue;
            }
            if best.is_none_or(|(x, y, _, _)| a + b < x + y) {
                best = Some((a, b, ctx.kb.key(gu, h), ctx.kb.key(g, hw)));
            }
        }
    }
    Ok(best)
}

pub fn rule_recursion(ctx: &mut Ctx<'_>, key: PairKey) -> Result<(), KbError> {
    for (g, h) in [(key.left, key.right), (key.right, key.left)] {
        if let Some((a, b, pa, pb)) = best_split(ctx, g, h, false)? {
            let why = Justification::new(RuleId::Recursion).param("a", a).param("b", b).premise(pa).premise(pb);
            ctx.tighten(key, None, Some(a + b), why)?;
        }
    }
    Ok(())
}

/// `r(G,H) <= a + b - 1` when both recursion premises are even.
pub fn rule_parity(ctx: &mut Ctx<'_>, key: PairKey) -> Result<(), KbError> {
    for (g, h) in [(key.left, key.right), (key.right, key.left)] {
        if let Some((a, b, pa, pb)) = best_split(ctx, g, h, true)? {
            let why = Justification::new(RuleId::Parity).param("a", a).param("b", b).premise(pa).premise(pb);
            ctx.tighten(key, None, Some(a + b - 1), why)?;
        }
    }
    Ok(())
}

// ---- THEOREM1 ------------------------------------------------------------------

/// Whether `ceil((s+1)(N-n)/n) >= ub2`.
pub fn theorem1_condition(n: u64, s: u64, big_n: u64, ub2: u64) -> bool {
    if big_n <= n {
        return ub2 == 0;
    }
    ((s + 1) * (big_n - n)).div_ceil(n) >= ub2
}

/// Least `N >= ub1` satisfying [`theorem1_condition`].
pub fn theorem1_min_n(n: u64, s: u64, ub1: u64, ub2: u64) -> u64 {
    let needed = if ub2 == 0 { 0 } else { n + (n * (ub2 - 1) + 1).div_ceil(s + 1) };
    ub1.max(needed)
}

/// Cone rule for a target `(G, K_{n+1} - K_{1,s})` where `G` has a universal
/// vertex. Tightens `hi` to the least admissible `N`, and when the condition
/// already holds at `lo(G, K_n)` (a lower bound on the true `r(G, K_n)`),
/// merges the target with `(G, K_n)`.
pub fn rule_theorem1(ctx: &mut Ctx<'_>, key: PairKey) -> Result<(), KbError> {
    for (left, right) in [(key.left, key.right), (key.right, key.left)] {
        theorem1_oriented(ctx, key, left, right)?;
        if key.left == key.right {
            break;
        }
    }
    Ok(())
}

fn theorem1_oriented(ctx: &mut Ctx<'_>, key: PairKey, left: SpecId, right: SpecId) -> Result<(), KbError> {
    let GraphSpec::CompleteMinusStar(n1, s) = *ctx.kb.spec(right) else {
        return Ok(());
    };
    let Some(g1) = ctx.kb.spec(left).decone() else {
        return Ok(());
    };
    let n = n1 - 1;
    let g1 = ctx.kb.intern(&g1);
    let kn = ctx.kb.intern(&GraphSpec::Complete(n));
    ensure_base(ctx, g1, right)?;
    let Some(ub2) = ctx.hi(g1, right) else {
        return Ok(());
    };
    let lower_pair = ctx.kb.key(left, kn);
    let premise2 = ctx.kb.key(g1, right);
    let (n, s) = (n as u64, s as u64);
    if let Some(ub1) = ctx.kb.interval(lower_pair).hi {
        let big_n = theorem1_min_n(n, s, ub1, ub2);
        let why = Justification::new(RuleId::Theorem1)
            .param("N", big_n)
            .param("n", n)
            .param("s", s)
            .premise(lower_pair)
            .premise(premise2);
        ctx.tighten(key, None, Some(big_n), why)?;
    }
    let lo = ctx.kb.interval(lower_pair).lo;
    if lower_pair != key && theorem1_condition(n, s, lo, ub2) {
        let why = Justification::new(RuleId::Theorem1)
            .param("N", lo)
            .param("n", n)
            .param("s", s)
            .premise(lower_pair)
            .premise(premise2);
        ctx.assert_equal(key, lower_pair, why)?;
    }
    Ok(())
}

// ---- BE89 ----------------------------------------------------------------------

/// Equalities `r(K_{m+1}-K_{1,m-p}, K_{n+1}-K_{1,n-q}) = r(K_m, K_{n+1}-K_{1,n-q})
/// = r(K_{m+1}-K_{1,m-p}, K_n) = r(K_m, K_n)` for `n >= m >= 3`, `m + n >= 8`.
pub fn rule_be89(ctx: &mut Ctx<'_>, m: usize, n: usize) -> Result<(), KbError> {
    if !(n >= m && m >= 3 && m + n >= 8) {
        return Ok(());
    }
    let p = m.div_ceil(n - 1);
    let q = n.div_ceil(m - 1);
    let km = ctx.kb.intern(&GraphSpec::Complete(m));
    let kn = ctx.kb.intern(&GraphSpec::Complete(n));
    let base = ctx.kb.key(km, kn);
    let left_star = (m > p).then(|| GraphSpec::CompleteMinusStar(m + 1, m - p));
    let right_star = (n > q).then(|| GraphSpec::CompleteMinusStar(n + 1, n - q));
    let mut pairs = Vec::new();
    if let (Some(l), Some(r)) = (&left_star, &right_star) {
        pairs.push((l.clone(), r.clone()));
    }
    if let Some(r) = &right_star {
        pairs.push((GraphSpec::Complete(m), r.clone()));
    }
    if let Some(l) = &left_star {
        pairs.push((l.clone(), GraphSpec::Complete(n)));
    }
    for (x, y) in pairs {
        if x.vertex_count() > ctx.topo.n_max || y.vertex_count() > ctx.topo.n_max {
            continue;
        }
        let target = ctx.kb.pair(&x, &y);
        let why = Justification::new(RuleId::Be89)
            .param("m", m as u64)
            .param("n", n as u64)
            .param("p", p as u64)
            .param("q", q as u64)
            .premise(base);
        ctx.assert_equal(target, base, why)?;
    }
    Ok(())
}

// ---- BBH98 ---------------------------------------------------------------------

pub const BBH98_MIN_N: usize = 5;


/// `r(K_3, K_{n+1}-K_{1,s}) = r(K_3, K_n)` when `r(K_3,K_n) = R` is known
/// exactly and `n >= s+1 > (n-1)(n-2)/(R-n)`.
///
/// Only applied for `n >= BBH98_MIN_N` and `s >= 2`: the bare inequality also
/// holds for `r(K_3, K_3-e)`, `r(K_3, K_4-e)` and `r(K_3, K_6-e)`, whose true
/// values (5, 7, 17) exceed `r(K_3, K_n)`.
pub fn rule_bbh98(ctx: &mut Ctx<'_>, n: usize, s: usize) -> Result<(), KbError> {
    if s < 2 || n < BBH98_MIN_N || n < s + 1 || n + 1 > ctx.topo.n_max {
        return Ok(());
    }
    let k3 = ctx.kb.intern(&GraphSpec::Complete(3));
    let kn = ctx.kb.intern(&GraphSpec::Complete(n));
    let base = ctx.kb.key(k3, kn);
    let Some(r) = ctx.kb.interval(base).exact_value() else {
        return Ok(());
    };
    let (nn, ss) = (n as u64, s as u64);
    if r <= nn || (ss + 1) * (r - nn) <= (nn - 1) * (nn - 2) {
        return Ok(());
    }
    let target = ctx.kb.pair(&GraphSpec::Complete(3), &GraphSpec::CompleteMinusStar(n + 1, s));
    let why = Justification::new(RuleId::Bbh98).param("n", nn).param("s", ss).param("R", r).premise(base);
    ctx.assert_equal(target, base, why)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem1_min_n_matches_scan() {
        for n in 3..=12u64 {
            for s in 1..=10u64 {
                for ub2 in 1..=50u64 {
                    for ub1 in [1, n, n + 5, 40] {
                        let closed = theorem1_min_n(n, s, ub1, ub2);
                        let scan = (ub1..).find(|&big| theorem1_condition(n, s, big, ub2)).unwrap();
                        assert_eq!(closed, scan, "n={n} s={s} ub1={ub1} ub2={ub2}");
                        if closed > ub1 {
                            assert!(!theorem1_condition(n, s, closed - 1, ub2));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theorem1_worked_examples() {
        assert_eq!(theorem1_min_n(4, 3, 11, 7), 11);
        assert_eq!(theorem1_min_n(6, 3, 21, 11), 22);
        assert_eq!(theorem1_min_n(5, 3, 27, 18), 27);
        assert!(theorem1_condition(6, 3, 22, 11));
        assert!(!theorem1_condition(6, 3, 21, 11));
    }

    #[test]
    fn base_values() {
        let e2 = GraphSpec::Explicit(crate::AdjacencyGraph::empty(2));
        assert_eq!(base_value(&e2, &GraphSpec::Complete(5)), Some(2));
        assert_eq!(base_value(&GraphSpec::Complete(1), &GraphSpec::Complete(7)), Some(1));
        assert_eq!(base_value(&GraphSpec::Complete(2), &GraphSpec::Wheel(6)), Some(6));
        assert_eq!(base_value(&GraphSpec::Complete(2), &GraphSpec::Complete(2)), Some(2));
        assert_eq!(base_value(&GraphSpec::Complete(3), &GraphSpec::Complete(3)), None);
    }

    #[test]
    fn rule_sets() {
        let rs = RuleSet::all().without(RuleId::Parity);
        assert!(!rs.contains(RuleId::Parity));
        assert!(rs.contains(RuleId::Recursion));
        assert_eq!(RuleSet::none().with(RuleId::Base).iter().collect::<Vec<_>>(), vec![RuleId::Base]);
    }
}
