//! Built-in table of claims checked by `reproduce`.
//!
//! Claims sharing a rule set and overlay run against one propagated
//! knowledge base.

use std::fmt;

use crate::engine::{derivation_depth, propagate, EngineConfig, RuleSet};
use crate::error::KbError;
use crate::graph::GraphSpec;
use crate::kb::{parse_seed, replace_lines, Interval, KnowledgeBase, RuleId, SeedLine};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Exact(u64),
    AtMost(u64),
    AtLeast(u64),
    Within(u64, u64),
    /// Same equality class as the given pair.
    SameClass(GraphSpec, GraphSpec),
    /// Not known to be equal to the given pair.
    DistinctClass(GraphSpec, GraphSpec),
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Exact(v) => write!(f, "= {v}"),
            Expected::AtMost(v) => write!(f, "<= {v}"),
            Expected::AtLeast(v) => write!(f, ">= {v}"),
            Expected::Within(lo, hi) => write!(f, "in [{lo},{hi}]"),
            Expected::SameClass(a, b) => write!(f, "same-class r({a},{b})"),
            Expected::DistinctClass(a, b) => write!(f, "distinct-class r({a},{b})"),
        }
    }
}

/// Rule selection for a claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Full,
    /// Everything except THEOREM1.
    NoTheorem1,
    /// Plain sum recursion: no THEOREM1, no parity refinement.
    RecursionOnly,
}

impl Mode {
    pub fn rules(self) -> RuleSet {
        match self {
            Mode::Full => RuleSet::all(),
            Mode::NoTheorem1 => RuleSet::all().without(RuleId::Theorem1),
            Mode::RecursionOnly => RuleSet::all().without(RuleId::Theorem1).without(RuleId::Parity),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::NoTheorem1 => "no-theorem1",
            Mode::RecursionOnly => "recursion-only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub left: GraphSpec,
    pub right: GraphSpec,
    pub expected: Expected,
    pub locus: &'static str,
    pub mode: Mode,
    /// Seed lines replacing any bundled line for the same pair.
    pub overlay: Vec<&'static str>,
}

impl Claim {
    pub fn pair_text(&self) -> String {
        format!("r({},{})", self.left, self.right)
    }

    fn in_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    fn with_overlay(mut self, lines: &[&'static str]) -> Self {
        self.overlay = lines.to_vec();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: String,
    pub pair: String,
    pub expected: String,
    pub got: Interval,
    pub pass: bool,
    pub depth: usize,
}

impl Outcome {
    /// One `key=value` record.
    pub fn line(&self) -> String {
        format!(
            "{} id={} pair={} expect=\"{}\" got={} depth={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.pair,
            self.expected,
            self.got,
            self.depth
        )
    }
}

fn spec(s: &str) -> GraphSpec {
    s.parse().unwrap_or_else(|e| panic!("bad built-in graph '{s}': {e}"))
}

fn k(n: usize) -> String {
    format!("K{n}")
}

fn kms(n: usize, s: usize) -> String {
    match s {
        1 => format!("K{n}-e"),
        2 => format!("K{n}-P3"),
        _ => format!("K{n}-K1,{s}"),
    }
}

fn claim(id: impl Into<String>, locus: &'static str, left: &str, right: &str, expected: Expected) -> Claim {
    Claim {
        id: id.into(),
        left: spec(left),
        right: spec(right),
        expected,
        locus,
        mode: Mode::Full,
        overlay: Vec::new(),
    }
}

fn same(id: impl Into<String>, locus: &'static str, pair: (&str, &str), other: (&str, &str)) -> Claim {
    claim(id, locus, pair.0, pair.1, Expected::SameClass(spec(other.0), spec(other.1)))
}

const COND_K6K4: &str = "K4 K6 = 37 src=hypothesis";
const COND_K5E: &str = "K5-e K5 >= 32 src=hypothesis";

/// Every built-in claim, in reporting order.
pub fn builtin_claims() -> Vec<Claim> {
    use Expected::*;
    let mut out = Vec::new();

    const NEAR4: &str = "exact values against K4-e";
    out.push(claim("k4e.1", NEAR4, "K4-e", "K5-K1,3", Exact(11)));
    for s in [3, 4] {
        out.push(claim(format!("k4e.2.s{s}"), NEAR4, "K4-e", &kms(6, s), Exact(16)));
    }
    for s in [4, 5] {
        out.push(claim(format!("k4e.3.s{s}"), NEAR4, "K4-e", &kms(7, s), Exact(21)));
    }
    const NEAR4B: &str = "improved bounds against K4-e";
    out.push(claim("k4e.4", NEAR4B, "K4-e", "K7-K1,3", Within(21, 22)));
    out.push(claim("k4e.5", NEAR4B, "K4-e", "K7-P3", Within(21, 27)));

    const NEAR5: &str = "results against K5-e";
    out.push(claim("k5e.1", NEAR5, "K5-e", "K5-K1,3", Exact(19)));
    for s in [3, 4] {
        out.push(same(format!("k5e.2.s{s}"), NEAR5, ("K5-e", &kms(6, s)), ("K5-e", "K5")));
    }

    // sandwiched between r(K3-e, K_{m-1}) and r(K3-e, K_m - e)
    const PATH: &str = "K3-e against K_m - K_{1,s}";
    for m in 3..=16 {
        for s in 1..m {
            let v = 2 * m as u64 - 3;
            out.push(claim(format!("path.m{m}.s{s}"), PATH, "K3-e", &kms(m, s), Exact(v)));
        }
    }

    const TRI: &str = "triangle against K_{n+1} - K_{1,s}";
    out.push(claim("tri.1", TRI, "K3", "K6-P3", Exact(14)));
    out.push(same("tri.1.class", TRI, ("K3", "K6-P3"), ("K3", "K5")));
    out.push(claim("tri.2", TRI, "K3", "K7-K1,3", Exact(18)));
    out.push(same("tri.2.class", TRI, ("K3", "K7-K1,3"), ("K3", "K6")));
    for s in 2..=9 {
        out.push(same(format!("tri.3.s{s}"), TRI, ("K3", &kms(10, s)), ("K3", "K9")));
    }
    for s in 3..=10 {
        out.push(same(format!("tri.4.s{s}"), TRI, ("K3", &kms(11, s)), ("K3", "K10")));
    }

    const SHIFT: &str = "clique against K_{n+1} - K_{1,n-q}";
    out.push(claim("shift.k4", SHIFT, "K4", "K5-P3", Exact(18)));
    out.push(same("shift.k4.class", SHIFT, ("K4", "K5-P3"), ("K4", "K4")));
    out.push(claim("shift.k5", SHIFT, "K5", "K5-P3", Exact(25)));
    for (m, v) in [(6, 18), (7, 23), (8, 28), (9, 36)] {
        out.push(claim(format!("shift.k{m}"), SHIFT, &k(m), "K4-P3", Exact(v)));
        out.push(same(format!("shift.k{m}.class"), SHIFT, (&k(m), "K4-P3"), (&k(m), "K3")));
    }
    out.push(claim("shift.k10", SHIFT, "K10", "K4-P3", AtMost(43)));
    out.push(same("shift.k10.class", SHIFT, ("K10", "K4-P3"), ("K10", "K3")));

    const P3_5: &str = "upper bounds for K_m against K5-P3";
    for (m, v) in [(6, 41), (7, 61), (8, 85), (9, 117), (10, 159)] {
        out.push(claim(format!("k5p3.k{m}"), P3_5, &k(m), "K5-P3", AtMost(v)));
    }
    out.push(claim("k5p3.k11", P3_5, "K11", "K5-P3", AtMost(210)));

    const P3_6: &str = "bounds for K_m against K6-P3";
    out.push(claim("k6p3.k4", P3_6, "K4", "K6-P3", Within(25, 27)));
    out.push(claim("k6p3.k5", P3_6, "K5", "K6-P3", AtMost(49)));
    out.push(claim("k6p3.k6", P3_6, "K6", "K6-P3", AtMost(87)));
    out.push(claim("k6p3.k7", P3_6, "K7", "K6-P3", AtMost(148)));

    const GRID: &str = "upper-bound table u(m,n) for K_m against K_n - P3";
    let grid: [(usize, &[(usize, u64)]); 3] = [
        (3, &[(11, 44), (12, 52), (13, 61), (14, 70), (15, 80), (16, 91)]),
        (4, &[(7, 41), (8, 61), (10, 115), (11, 154), (12, 199), (13, 253), (14, 313), (15, 383), (16, 466)]),
        (5, &[(7, 87), (8, 143), (9, 222)]),
    ];
    for (m, row) in grid {
        for &(n, v) in row {
            out.push(claim(format!("grid.m{m}.n{n}"), GRID, &k(m), &kms(n, 2), AtMost(v)));
        }
    }

    const STAR6: &str = "upper bounds for K_m against K6-K1,3";
    for (m, v) in [(6, 87), (7, 143), (8, 216), (9, 316), (10, 442), (11, 633), (12, 848), (13, 1139), (14, 1461), (15, 1878)] {
        out.push(claim(format!("k6k13.k{m}"), STAR6, &k(m), "K6-K1,3", AtMost(v)));
    }
    const STAR7: &str = "upper bounds for K_m against K7-K1,3";
    for (m, v) in [(4, 41), (5, 87), (6, 165), (7, 298), (8, 495), (9, 780), (10, 1175), (11, 1804)] {
        out.push(claim(format!("k7k13.k{m}"), STAR7, &k(m), "K7-K1,3", AtMost(v)));
    }

    const K4EQ: &str = "K4 against K_{n+1} - K_{1,s} equals K4 against K_n";
    let k4eq: [(usize, &[usize]); 10] = [
        (7, &[3]),
        (8, &[3, 4]),
        (9, &[4]),
        (10, &[4, 5]),
        (11, &[5]),
        (12, &[6]),
        (13, &[6, 7]),
        (14, &[7]),
        (15, &[8]),
        (16, &[9]),
    ];
    for (case, (n, ss)) in k4eq.into_iter().enumerate() {
        for &s in ss {
            out.push(same(format!("k4eq.{}.s{s}", case + 1), K4EQ, ("K4", &kms(n, s)), ("K4", &k(n - 1))));
        }
    }

    const WHEEL: &str = "W5 against K_n - K_{1,s}";
    for s in [3, 4, 5] {
        out.push(claim(format!("wheel.1.s{s}"), WHEEL, "W5", &kms(6, s), Exact(27)));
    }
    for s in 4..=6 {
        out.push(same(format!("wheel.2.s{s}"), WHEEL, ("W5", &kms(7, s)), ("W5", "K6")));
    }
    for s in 4..=7 {
        out.push(same(format!("wheel.3.s{s}"), WHEEL, ("W5", &kms(8, s)), ("W5", "K7")));
    }

    const CHAIN: &str = "sum recursion before improvement";
    // the older bound r(K3,K10) <= 43 reproduces the last link
    for (m, v) in [(6, 43), (7, 66), (8, 94), (9, 130), (10, 173)] {
        out.push(
            claim(format!("chain.k{m}"), CHAIN, &k(m), "K5-P3", AtMost(v))
                .in_mode(Mode::RecursionOnly)
                .with_overlay(&["K3 K10 in [40,43] src=Rad-old"]),
        );
    }
    out.push(
        claim("chain.k4e.1", CHAIN, "K4-e", "K7-K1,3", AtMost(27))
            .in_mode(Mode::RecursionOnly)
            .with_overlay(&["K4-e K6-K1,3 <= 16 src=exact-k4e"]),
    );
    out.push(claim("chain.k4e.2", CHAIN, "K4-e", "K7-P3", AtMost(28)).in_mode(Mode::RecursionOnly));
    out.push(claim("chain.parity", CHAIN, "K4", "K6-P3", AtMost(31)).in_mode(Mode::NoTheorem1));

    const COND: &str = "conditional equalities";
    out.push(same("cond.k6k4", COND, ("K6", "K5-P3"), ("K6", "K4")).with_overlay(&[COND_K6K4]));
    out.push(same("cond.k5e", COND, ("K5-e", "K6-P3"), ("K5-e", "K5")).with_overlay(&[COND_K5E]));
    out.push(claim("cond.k6k4.absent", COND, "K6", "K5-P3", DistinctClass(spec("K6"), spec("K4"))));
    out.push(claim("cond.k5e.absent", COND, "K5-e", "K6-P3", DistinctClass(spec("K5-e"), spec("K5"))));

    out
}

/// Claims whose id equals `selector` or starts with `selector.`.
pub fn select<'a>(claims: &'a [Claim], selector: &str) -> Vec<&'a Claim> {
    claims
        .iter()
        .filter(|c| c.id == selector || c.id.strip_prefix(selector).is_some_and(|rest| rest.starts_with('.')))
        .collect()
}

/// Propagated knowledge base for one mode and overlay.
pub fn scenario_kb(base: &[SeedLine], mode: Mode, overlay: &[SeedLine], extra: &[GraphSpec]) -> Result<KnowledgeBase, KbError> {
    let lines = replace_lines(base, overlay);
    let mut kb = KnowledgeBase::new();
    kb.apply_seed_lines(&lines)?;
    let config = EngineConfig::default().with_rules(mode.rules()).with_extra(extra.iter().cloned());
    propagate(&mut kb, &config)?;
    Ok(kb)
}

fn evaluate(kb: &KnowledgeBase, c: &Claim) -> Outcome {
    let got = kb.interval_for(&c.left, &c.right);
    let class_of = |a: &GraphSpec, b: &GraphSpec| match (kb.find_pair(&c.left, &c.right), kb.find_pair(a, b)) {
        (Some(x), Some(y)) => kb.same_class(x, y),
        _ => false,
    };
    let pass = match &c.expected {
        Expected::Exact(v) => got == Interval::exact(*v),
        Expected::AtMost(v) => got.hi.is_some_and(|hi| hi <= *v),
        Expected::AtLeast(v) => got.lo >= *v,
        Expected::Within(lo, hi) => got.within(&Interval::new(*lo, Some(*hi))),
        Expected::SameClass(a, b) => class_of(a, b),
        Expected::DistinctClass(a, b) => !class_of(a, b),
    };
    Outcome {
        id: c.id.clone(),
        pair: c.pair_text(),
        expected: c.expected.to_string(),
        got,
        pass,
        depth: derivation_depth(kb, &c.left, &c.right),
    }
}

/// Runs the claims against `base_seed`, with `extra_overlay` applied on top
/// of every claim's own overlay. Outcomes come back in input order.
pub fn reproduce(claims: &[&Claim], base_seed: &str, extra_overlay: &[SeedLine]) -> Result<Vec<Outcome>, KbError> {
    let base = parse_seed(base_seed)?;
    let mut groups: Vec<(Mode, Vec<&'static str>, Vec<usize>)> = Vec::new();
    for (i, c) in claims.iter().enumerate() {
        match groups.iter_mut().find(|(m, o, _)| *m == c.mode && *o == c.overlay) {
            Some(g) => g.2.push(i),
            None => groups.push((c.mode, c.overlay.clone(), vec![i])),
        }
    }
    let mut outcomes: Vec<Option<Outcome>> = vec![None; claims.len()];
    for (mode, overlay, members) in groups {
        let mut lines = parse_seed(&overlay.join("\n"))?;
        lines = replace_lines(&lines, extra_overlay);
        let mut extra = Vec::new();
        for &i in &members {
            let c = claims[i];
            extra.extend([c.left.clone(), c.right.clone()]);
            if let Expected::SameClass(a, b) | Expected::DistinctClass(a, b) = &c.expected {
                extra.extend([a.clone(), b.clone()]);
            }
        }
        let kb = scenario_kb(&base, mode, &lines, &extra)?;
        for i in members {
            outcomes[i] = Some(evaluate(&kb, claims[i]));
        }
    }
    Ok(outcomes.into_iter().flatten().collect())
}
