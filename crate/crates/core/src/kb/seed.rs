//! Seed-file text format.
//!
//! ```text
//! line := graph WS graph WS rel WS value ["src=" TAG]
//! rel  := "=" | ">=" | "<=" | "in"
//! value := INT | "[" INT "," INT "]"
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::collections::BTreeMap;

use super::interval::Interval;
use super::store::{Justification, KnowledgeBase, PairKey, RuleId};
use crate::error::KbError;
use crate::graph::GraphSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Le,
    In,
}

impl Relation {
    fn token(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::In => "in",
        }
    }
}

/// One parsed seed fact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedLine {
    pub left: GraphSpec,
    pub right: GraphSpec,
    pub relation: Relation,
    pub lo: Option<u64>,
    pub hi: Option<u64>,
    pub source: String,
    /// 1-based line number in the originating text.
    pub line: usize,
}

impl SeedLine {
    fn same_pair(&self, other: &SeedLine) -> bool {
        (self.left == other.left && self.right == other.right)
            || (self.left == other.right && self.right == other.left)
    }

    /// Renders the line back into seed syntax.
    pub fn render(&self) -> String {
        let value = match (self.relation, self.lo, self.hi) {
            (Relation::In, Some(lo), Some(hi)) => format!("[{lo},{hi}]"),
            (Relation::Le, _, Some(hi)) => hi.to_string(),
            (_, Some(lo), _) => lo.to_string(),
            _ => unreachable!("validated on parse"),
        };
        format!("{} {} {} {} src={}", self.left, self.right, self.relation.token(), value, self.source)
    }
}

fn seed_err(line: usize, message: impl Into<String>) -> KbError {
    KbError::Seed {
        line,
        message: message.into(),
    }
}

fn positive(line: usize, s: &str) -> Result<u64, KbError> {
    match s.trim().parse::<u64>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(seed_err(line, format!("expected a positive integer, found '{s}'"))),
    }
}

fn parse_line(no: usize, text: &str) -> Result<Option<SeedLine>, KbError> {
    let body = text.split('#').next().unwrap_or("");
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if tokens.is_empty() {
        return Ok(None);
    }
    if tokens.len() < 4 || tokens.len() > 5 {
        return Err(seed_err(no, format!("expected 4 or 5 fields, found {}", tokens.len())));
    }
    let graph = |s: &str| -> Result<GraphSpec, KbError> {
        s.parse::<GraphSpec>().map_err(|e| seed_err(no, format!("graph '{s}': {e}")))
    };
    let left = graph(tokens[0])?;
    let right = graph(tokens[1])?;
    let relation = match tokens[2] {
        "=" => Relation::Eq,
        ">=" => Relation::Ge,
        "<=" => Relation::Le,
        "in" => Relation::In,
        other => return Err(seed_err(no, format!("unknown relation '{other}'"))),
    };
    let value = tokens[3];
    let (lo, hi) = match relation {
        Relation::In => {
            let inner = value
                .strip_prefix('[')
                .and_then(|v| v.strip_suffix(']'))
                .ok_or_else(|| seed_err(no, format!("expected [lo,hi], found '{value}'")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| seed_err(no, format!("expected [lo,hi], found '{value}'")))?;
            let (a, b) = (positive(no, a)?, positive(no, b)?);
            if a > b {
                return Err(seed_err(no, format!("empty interval [{a},{b}]")));
            }
            (Some(a), Some(b))
        }
        Relation::Eq => {
            let v = positive(no, value)?;
            (Some(v), Some(v))
        }
        Relation::Ge => (Some(positive(no, value)?), None),
        Relation::Le => (None, Some(positive(no, value)?)),
    };
    let source = match tokens.get(4) {
        Some(tag) => tag
            .strip_prefix("src=")
            .filter(|t| !t.is_empty())
            .ok_or_else(|| seed_err(no, format!("expected src=TAG, found '{tag}'")))?
            .to_string(),
        None => "unspecified".to_string(),
    };
    Ok(Some(SeedLine {
        left,
        right,
        relation,
        lo,
        hi,
        source,
        line: no,
    }))
}

/// Parses seed text into facts, reporting the first malformed line.
pub fn parse_seed(text: &str) -> Result<Vec<SeedLine>, KbError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(fact) = parse_line(i + 1, line)? {
            out.push(fact);
        }
    }
    Ok(out)
}

/// Replaces every base line about a pair mentioned in `replacements` with
/// the replacement lines.
pub fn replace_lines(base: &[SeedLine], replacements: &[SeedLine]) -> Vec<SeedLine> {
    let mut out: Vec<SeedLine> = base
        .iter()
        .filter(|b| !replacements.iter().any(|r| r.same_pair(b)))
        .cloned()
        .collect();
    out.extend(replacements.iter().cloned());
    out
}

impl KnowledgeBase {
    /// Builds a knowledge base from seed text.
    pub fn load_seed(text: &str) -> Result<KnowledgeBase, KbError> {
        let mut kb = KnowledgeBase::new();
        kb.apply_seed_lines(&parse_seed(text)?)?;
        Ok(kb)
    }

    /// Adds seed facts to an existing knowledge base.
    pub fn apply_seed_lines(&mut self, lines: &[SeedLine]) -> Result<(), KbError> {
        for line in lines {
            let key = self.pair(&line.left, &line.right);
            let why = Justification::seed(line.source.clone());
            match self.tighten(key, line.lo, line.hi, why) {
                Ok(_) => {}
                Err(KbError::Contradiction { pair, existing, incoming }) => {
                    return Err(KbError::Contradiction {
                        pair,
                        existing,
                        incoming: format!("{incoming} from seed line {}", line.line),
                    })
                }
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }

    /// Source tag for a dumped pair: the seed tags that touched it, or
    /// `derived:<RULE>` for facts that only inference produced.
    fn dump_tag(&self, key: PairKey) -> String {
        let mut tags: Vec<&str> = Vec::new();
        for d in self.derivations() {
            if d.rule == RuleId::Seed && d.target == key {
                let tag = d.source.as_deref().unwrap_or("unspecified");
                if !tags.contains(&tag) {
                    tags.push(tag);
                }
            }
        }
        if !tags.is_empty() {
            return tags.join("+");
        }
        let (lo, hi) = self.why(key);
        let rule = hi.or(lo).map(|d| self.derivation(d).rule).unwrap_or(RuleId::Seed);
        format!("derived:{rule}")
    }

    /// Serializes every stored non-default fact, one line per pair, in
    /// canonical order. Pairs involving explicit graphs have no seed syntax
    /// and are left out.
    pub fn dump(&self) -> String {
        let mut rows = BTreeMap::new();
        for key in self.stored_pairs() {
            if !self.spec(key.left).is_catalog() || !self.spec(key.right).is_catalog() {
                continue;
            }
            let interval = self.interval(key);
            let base = self.base_interval(key);
            if interval == base {
                continue;
            }
            let value = match (interval.lo, interval.hi) {
                (lo, Some(hi)) if lo == hi => format!("= {lo}"),
                (lo, None) => format!(">= {lo}"),
                (lo, Some(hi)) if lo == base.lo => format!("<= {hi}"),
                (lo, Some(hi)) => format!("in [{lo},{hi}]"),
            };
            let sort_key = (self.spec_name(key.left).to_string(), self.spec_name(key.right).to_string());
            let line = format!("{} {} {} src={}", sort_key.0, sort_key.1, value, self.dump_tag(key));
            rows.insert(sort_key, line);
        }
        let mut out = String::new();
        for line in rows.into_values() {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Interval for a pair given as specs, for callers that hold no keys.
    pub fn interval_for(&self, a: &GraphSpec, b: &GraphSpec) -> Interval {
        self.lookup(a, b).interval
    }
}
