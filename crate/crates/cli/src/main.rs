use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ramsey_core::engine::{derivation_depth, explain, propagate, EngineConfig, RuleSet};
use ramsey_core::kb::{parse_seed, KnowledgeBase, RuleId, BUNDLED_SEED};
use ramsey_core::manifest::{builtin_claims, reproduce, select};
use ramsey_core::oracle::{check_coloring, ramsey_small, ColoringCertificate, SearchOptions, Verdict, DEFAULT_BUDGET};
use ramsey_core::{parse_pair_expr, GraphSpec, KbError};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NO_INFO: u8 = 3;
const EXIT_CONTRADICTION: u8 = 4;

/// Ramsey bounds for near-complete graphs: deduction engine and small-case oracle.
#[derive(Parser)]
#[command(name = "ramsey", version)]
struct Cli {
    /// Seed file; overrides RAMSEY_KB and the bundled seed.
    #[arg(long, global = true)]
    kb: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct RuleArgs {
    /// Comma-separated rule names to switch off, e.g. THEOREM1,PARITY.
    #[arg(long, value_delimiter = ',')]
    disable: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derived interval for r(A,B).
    Query {
        expr: String,
        #[command(flatten)]
        rules: RuleArgs,
    },
    /// Print the proof tree behind r(A,B).
    Explain {
        expr: String,
        /// Emit key=value records instead of the indented tree.
        #[arg(long)]
        log: bool,
        #[command(flatten)]
        rules: RuleArgs,
    },
    /// Check the built-in claims.
    Reproduce {
        /// Claim id or id prefix.
        #[arg(long)]
        claim: Option<String>,
        /// Extra seed lines applied on top of every claim.
        #[arg(long)]
        overlay: Option<PathBuf>,
    },
    /// Check a colouring certificate against (G, H).
    Verify { cert: PathBuf, g: String, h: String },
    /// Compute r(G,H) by exhaustive search.
    Search {
        g: String,
        h: String,
        #[arg(long, default_value_t = 10)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Disable first-row symmetry reduction.
        #[arg(long)]
        no_symmetry: bool,
        /// Write the largest good colouring found into this directory.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Seed file import and export.
    #[command(subcommand)]
    Kb(KbCommand),
}

#[derive(Subcommand)]
enum KbCommand {
    /// Write the knowledge base in seed format.
    Export {
        /// Run propagation first and include derived facts.
        #[arg(long)]
        propagate: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        rules: RuleArgs,
    },
    /// Validate a seed file and write it back in canonical form.
    Import {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl ToString) -> Self {
        Failure::new(EXIT_USAGE, message.to_string())
    }
}

impl From<KbError> for Failure {
    fn from(e: KbError) -> Self {
        let code = match e {
            KbError::Contradiction { .. } => EXIT_CONTRADICTION,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `--kb`, then `RAMSEY_KB`, then the bundled seed.
fn seed_text(flag: Option<&Path>) -> Result<String, Failure> {
    if let Some(path) = flag {
        return read_file(path);
    }
    match std::env::var_os("RAMSEY_KB") {
        Some(path) if !path.is_empty() => read_file(Path::new(&path)),
        _ => Ok(BUNDLED_SEED.to_string()),
    }
}

fn rule_set(args: &RuleArgs) -> Result<RuleSet, Failure> {
    let mut rules = RuleSet::all();
    for name in args.disable.iter().filter(|n| !n.is_empty()) {
        let rule = RuleId::from_name(name).ok_or_else(|| Failure::usage(format!("unknown rule '{name}'")))?;
        rules = rules.without(rule);
    }
    Ok(rules)
}

fn parse_graph(s: &str) -> Result<GraphSpec, Failure> {
    s.parse::<GraphSpec>().map_err(|e| Failure::usage(format!("bad graph '{s}': {e}")))
}

fn load_and_propagate(flag: Option<&Path>, rules: &RuleArgs, extra: &[GraphSpec]) -> Result<KnowledgeBase, Failure> {
    let text = seed_text(flag)?;
    let rules = rule_set(rules)?;
    let mut kb = KnowledgeBase::load_seed(&text)?;
    propagate(&mut kb, &EngineConfig::default().with_rules(rules).with_extra(extra.iter().cloned()))?;
    Ok(kb)
}

fn cmd_query(kb_flag: Option<&Path>, expr: &str, rules: &RuleArgs) -> Outcome {
    let (a, b) = parse_pair_expr(expr).map_err(Failure::usage)?;
    let kb = load_and_propagate(kb_flag, rules, &[a.clone(), b.clone()])?;
    let fact = kb.lookup(&a, &b);
    let pair = format!("r({a},{b})");
    match fact.interval.exact_value() {
        Some(v) => println!("{pair} = {v}"),
        None => println!("{pair} in {}", fact.interval),
    }
    let merges = kb.find_pair(&a, &b).map(|k| kb.class_merges(k)).unwrap_or_default();
    if fact.lo_why.is_none() && fact.hi_why.is_none() && merges.is_empty() {
        println!("why: no information");
        return Ok(EXIT_NO_INFO);
    }
    let describe = |id: Option<_>| id.map_or("default".to_string(), |id| kb.describe_derivation(id));
    println!(
        "why: lo={} ; hi={} ; depth={}",
        describe(fact.lo_why),
        describe(fact.hi_why),
        derivation_depth(&kb, &a, &b)
    );
    Ok(0)
}

fn cmd_explain(kb_flag: Option<&Path>, expr: &str, log: bool, rules: &RuleArgs) -> Outcome {
    let (a, b) = parse_pair_expr(expr).map_err(Failure::usage)?;
    let kb = load_and_propagate(kb_flag, rules, &[a.clone(), b.clone()])?;
    let e = explain(&kb, &a, &b);
    if log {
        print!("{}", e.log());
    } else {
        print!("{}", e.render());
    }
    Ok(if e.roots.is_empty() { EXIT_NO_INFO } else { 0 })
}

fn cmd_reproduce(kb_flag: Option<&Path>, claim: Option<&str>, overlay: Option<&Path>) -> Outcome {
    let base = seed_text(kb_flag)?;
    let extra = match overlay {
        Some(path) => parse_seed(&read_file(path)?)?,
        None => Vec::new(),
    };
    let claims = builtin_claims();
    let chosen = match claim {
        Some(id) => select(&claims, id),
        None => claims.iter().collect(),
    };
    if chosen.is_empty() {
        return Err(Failure::usage(format!("no claim matches '{}'", claim.unwrap_or_default())));
    }
    let outcomes = reproduce(&chosen, &base, &extra)?;
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    for o in &outcomes {
        println!("{}", o.line());
    }
    println!("summary total={} pass={} fail={failed}", outcomes.len(), outcomes.len() - failed);
    Ok(if failed > 0 { EXIT_FAIL } else { 0 })
}

fn cmd_verify(cert: &Path, g: &str, h: &str) -> Outcome {
    let (g, h) = (parse_graph(g)?, parse_graph(h)?);
    let cert = ColoringCertificate::parse(&read_file(cert)?).map_err(Failure::usage)?;
    let join = |vs: &[usize]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    match check_coloring(&cert, &g, &h).map_err(Failure::usage)? {
        Verdict::Good => {
            println!("good N={}", cert.n());
            Ok(0)
        }
        Verdict::RedCopy(vs) => {
            println!("bad colour=red graph={g} vertices={}", join(&vs));
            Ok(EXIT_FAIL)
        }
        Verdict::BlueCopy(vs) => {
            println!("bad colour=blue graph={h} vertices={}", join(&vs));
            Ok(EXIT_FAIL)
        }
    }
}

fn witness_name(g: &GraphSpec, h: &GraphSpec, n: usize) -> String {
    let clean = |s: String| s.replace(',', "_");
    format!("{}__{}__N{n}.txt", clean(g.to_string()), clean(h.to_string()))
}

fn cmd_search(g: &str, h: &str, cap: usize, opts: SearchOptions, witness_dir: Option<&Path>) -> Outcome {
    let (g, h) = (parse_graph(g)?, parse_graph(h)?);
    let r = ramsey_small(&g, &h, cap, opts).map_err(Failure::usage)?;
    let value = match r.interval.exact_value() {
        Some(v) => format!("= {v}"),
        None => format!("in {}", r.interval),
    };
    println!("r({g},{h}) {value} complete={} nodes={}", r.complete, r.nodes);
    if let (Some(dir), Some(w)) = (witness_dir, &r.witness) {
        std::fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
        let path = dir.join(witness_name(&g, &h, w.n()));
        write_output(Some(&path), &w.to_text())?;
        println!("witness={}", path.display());
    }
    Ok(0)
}

fn cmd_kb(kb_flag: Option<&Path>, command: &KbCommand) -> Outcome {
    match command {
        KbCommand::Export { propagate, out, rules } => {
            let kb = if *propagate {
                load_and_propagate(kb_flag, rules, &[])?
            } else {
                KnowledgeBase::load_seed(&seed_text(kb_flag)?)?
            };
            write_output(out.as_deref(), &kb.dump())?;
        }
        KbCommand::Import { file, out } => {
            let kb = KnowledgeBase::load_seed(&read_file(file)?)?;
            write_output(out.as_deref(), &kb.dump())?;
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Outcome {
    let kb = cli.kb.as_deref();
    match &cli.command {
        Command::Query { expr, rules } => cmd_query(kb, expr, rules),
        Command::Explain { expr, log, rules } => cmd_explain(kb, expr, *log, rules),
        Command::Reproduce { claim, overlay } => cmd_reproduce(kb, claim.as_deref(), overlay.as_deref()),
        Command::Verify { cert, g, h } => cmd_verify(cert, g, h),
        Command::Search {
            g,
            h,
            cap,
            budget,
            threads,
            no_symmetry,
            witness_dir,
        } => {
            let opts = SearchOptions::default()
                .with_budget(*budget)
                .with_threads(*threads)
                .with_symmetry(!no_symmetry);
            cmd_search(g, h, *cap, opts, witness_dir.as_deref())
        }
        Command::Kb(command) => cmd_kb(kb, command),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
