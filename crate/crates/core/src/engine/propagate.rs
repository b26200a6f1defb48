use super::rules::{
    rule_base, rule_be89, rule_bbh98, rule_monotone, rule_parity, rule_recursion, rule_theorem1,
    Ctx, RuleApplication, RuleSet,
};
use super::topology::Topology;
use crate::error::KbError;
use crate::graph::GraphSpec;
use crate::kb::{KnowledgeBase, RuleId};

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub rules: RuleSet,
    /// Largest vertex count of a generated target spec.
    pub n_max: usize,
    pub max_rounds: usize,
    /// Specs added to the target closure (for example a queried pair).
    pub extra_specs: Vec<GraphSpec>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            rules: RuleSet::all(),
            n_max: 16,
            max_rounds: 100,
            extra_specs: Vec::new(),
        }
    }
}

impl EngineConfig {
    pub fn with_rules(mut self, rules: RuleSet) -> Self {
        self.rules = rules;
        self
    }

    pub fn with_extra(mut self, specs: impl IntoIterator<Item = GraphSpec>) -> Self {
        self.extra_specs.extend(specs);
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct PropagationReport {
    pub rounds: usize,
    pub converged: bool,
    pub log: Vec<RuleApplication>,
    pub target_pairs: usize,
}

impl PropagationReport {
    pub fn log_text(&self) -> String {
        let mut out = String::new();
        for app in &self.log {
            out.push_str(&app.to_string());
            out.push('\n');
        }
        out
    }
}

fn run_rule(ctx: &mut Ctx<'_>, rule: RuleId) -> Result<(), KbError> {
    let topo = ctx.topo;
    match rule {
        RuleId::Seed => {}
        RuleId::Monotone => {
            for &key in &topo.pairs {
                rule_monotone(ctx, key)?;
            }
        }
        RuleId::Recursion => {
            for &key in &topo.pairs {
                rule_recursion(ctx, key)?;
            }
        }
        RuleId::Parity => {
            for &key in &topo.pairs {
                rule_parity(ctx, key)?;
            }
        }
        RuleId::Theorem1 => {
            for &key in &topo.pairs {
                rule_theorem1(ctx, key)?;
            }
        }
        RuleId::Be89 => {
            for (m, n) in complete_orders(ctx) {
                rule_be89(ctx, m, n)?;
            }
        }
        RuleId::Bbh98 => {
            let has_k3 = complete_orders_present(ctx).contains(&3);
            if has_k3 {
                for n in complete_orders_present(ctx) {
                    for s in 1..n {
                        rule_bbh98(ctx, n, s)?;
                    }
                }
            }
        }
        RuleId::Base => {
            for &key in &topo.pairs {
                rule_base(ctx, key)?;
            }
        }
    }
    Ok(())
}

/// Orders `n` with `K_n` in the target closure, ascending.
fn complete_orders_present(ctx: &Ctx<'_>) -> Vec<usize> {
    let mut out: Vec<usize> = ctx
        .topo
        .specs
        .iter()
        .filter_map(|&id| match *ctx.kb.spec(id) {
            GraphSpec::Complete(n) => Some(n),
            _ => None,
        })
        .collect();
    out.sort_unstable();
    out
}

fn complete_orders(ctx: &Ctx<'_>) -> Vec<(usize, usize)> {
    let ns = complete_orders_present(ctx);
    let mut out = Vec::new();
    for &m in &ns {
        for &n in &ns {
            if n >= m {
                out.push((m, n));
            }
        }
    }
    out
}

/// Applies the enabled rules, in rule order and then canonical pair order,
/// until a full round changes nothing.
pub fn propagate(kb: &mut KnowledgeBase, config: &EngineConfig) -> Result<PropagationReport, KbError> {
    let topo = Topology::build(kb, &config.extra_specs, config.n_max);
    let mut report = PropagationReport {
        target_pairs: topo.pairs.len(),
        ..Default::default()
    };
    let mut log = Vec::new();
    for round in 1..=config.max_rounds.max(1) {
        let before = log.len();
        let mut ctx = Ctx {
            kb: &mut *kb,
            topo: &topo,
            rules: config.rules,
            log: &mut log,
        };
        for rule in config.rules.iter() {
            run_rule(&mut ctx, rule)?;
        }
        report.rounds = round;
        if log.len() == before {
            report.converged = true;
            break;
        }
    }
    report.log = log;
    Ok(report)
}
