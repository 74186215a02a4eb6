//! `antiunify`: anti-unification of logic-programming goals from the
//! command line.
//!
//! Exit codes: 0 success, 1 a checked relation does not hold or a bench
//! invariant failed, 2 usage or input errors, 3 an instance exceeds the
//! exhaustive-search bounds.

mod bench;
mod genconf;
mod input;
mod report;

use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use antiunify::{
    brute_lcg_inj, check_generalization, greedy_lcg, inj_subsumes, kswap_generalize, min_var_generalization, msg,
    scp_to_goals, GenRelation, GoalDocument, MinVarMode, OracleBounds, Relation, ScpInstance, Variabilizer,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize, Serializer};

use crate::genconf::GenArgs;
use crate::report::{bindings, CheckResult, Decision, Generalization};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] antiunify::Error),
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        source: antiunify::Error,
    },
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("bad configuration: {0}")]
    Config(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(antiunify::Error::InstanceTooLarge { .. }) => 3,
            _ => 2,
        }
    }
}

/// A swap budget: a count or `inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KValue {
    Finite(usize),
    Inf,
}

impl KValue {
    pub fn get(self) -> usize {
        match self {
            KValue::Finite(k) => k,
            KValue::Inf => usize::MAX,
        }
    }
}

impl FromStr for KValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(KValue::Inf),
            n => n
                .parse()
                .map(KValue::Finite)
                .map_err(|_| format!("`{n}` is neither a count nor `inf`")),
        }
    }
}

impl fmt::Display for KValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KValue::Finite(k) => write!(f, "{k}"),
            KValue::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for KValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlainRelation {
    Subseteq,
    Preceq,
}

impl From<PlainRelation> for GenRelation {
    fn from(r: PlainRelation) -> Self {
        match r {
            PlainRelation::Subseteq => GenRelation::Subseteq,
            PlainRelation::Preceq => GenRelation::Preceq,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InjRelation {
    SubseteqInj,
    PreceqInj,
}

impl From<InjRelation> for Relation {
    fn from(r: InjRelation) -> Self {
        match r {
            InjRelation::SubseteqInj => Relation::SubseteqInj,
            InjRelation::PreceqInj => Relation::PreceqInj,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Problem {
    /// Largest injective common generalization.
    InjLcg,
    /// Injective subsumption of the first goal into the second.
    InjSubsumes,
    /// Generalization with the fewest variables.
    MinVars,
    /// Set cover through the minimum-variable reduction; input is JSON.
    Scp,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MinMode {
    Msg,
    Lcg,
}

#[derive(Debug, Parser)]
#[command(name = "antiunify", version, about = "Anti-unification of logic-programming goals")]
struct Cli {
    /// Structured output.
    #[arg(long, global = true)]
    json: bool,
    /// Print only the essential result.
    #[arg(long, global = true)]
    quiet: bool,
    /// Reject a predicate name used with two arities.
    #[arg(long, global = true)]
    strict_arity: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Largest common generalization by the greedy scan.
    Lcg {
        #[arg(long, value_enum, default_value = "subseteq")]
        rel: PlainRelation,
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// Most specific common generalization.
    Msg {
        #[arg(long, value_enum, default_value = "subseteq")]
        rel: PlainRelation,
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// k-swap stable injective variable generalization.
    Kswap {
        /// Swap budget, a count or `inf`.
        #[arg(short, default_value = "inf")]
        k: KValue,
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// Exhaustive solvers for the hard variants.
    Oracle {
        #[arg(long, value_enum)]
        problem: Problem,
        /// Relation for inj-lcg and inj-subsumes.
        #[arg(long, value_enum, default_value = "preceq-inj")]
        rel: InjRelation,
        /// Base relation for min-vars.
        #[arg(long, value_enum, default_value = "subseteq")]
        base: PlainRelation,
        /// Which generalizations min-vars minimizes over.
        #[arg(long, value_enum, default_value = "msg")]
        mode: MinMode,
        /// Threshold for the decision question: fewer than `p` variables.
        #[arg(short, long)]
        p: Option<usize>,
        /// Run even above the instance bounds.
        #[arg(long)]
        force: bool,
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// Does the first goal generalize the second? Prints a witness or "no".
    Check {
        #[arg(long)]
        rel: Relation,
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// Emit random goal pairs.
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        /// Number of pairs; pair i uses seed + i.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Compare greedy, k-swap and exhaustive search on random pairs (CSV).
    Bench {
        #[command(flatten)]
        gen: GenArgs,
        /// Swap budgets, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,4,inf")]
        k: Vec<KValue>,
        #[arg(long, default_value_t = 10)]
        instances: usize,
        /// Run the exhaustive search even above its bounds.
        #[arg(long)]
        force: bool,
        /// Write the CSV here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScpFile {
    universe: Vec<String>,
    sets: Vec<Vec<String>>,
    p: usize,
}

enum Outcome {
    Done,
    No,
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
    let out = if json {
        serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))? + "\n"
    } else {
        text()
    };
    io::stdout()
        .write_all(out.as_bytes())
        .map_err(|e| CliError::Output(e.to_string()))
}

fn bounds(force: bool) -> OracleBounds {
    if force {
        eprintln!("warning: --force lifts the instance bounds; the search may run for a long time");
        OracleBounds::unbounded()
    } else {
        OracleBounds::default()
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let strict = cli.strict_arity;
    let show = |r: &Generalization| emit(cli.json, r, || r.text(cli.quiet));
    match &cli.command {
        Command::Lcg { rel, files } => {
            let (g1, g2) = input::disjoint_pair(files, strict)?;
            let out = greedy_lcg(&g1, &g2, (*rel).into(), &mut Variabilizer::for_goals(&g1, &g2))?;
            show(&Generalization::new("lcg", Relation::from(GenRelation::from(*rel)).name(), &out))?;
        }
        Command::Msg { rel, files } => {
            let (g1, g2) = input::disjoint_pair(files, strict)?;
            let out = msg(&g1, &g2, (*rel).into(), &mut Variabilizer::for_goals(&g1, &g2))?;
            show(&Generalization::new("msg", Relation::from(GenRelation::from(*rel)).name(), &out))?;
        }
        Command::Kswap { k, files } => {
            let (g1, g2) = input::disjoint_pair(files, strict)?;
            let out = kswap_generalize(&g1, &g2, k.get(), &mut Variabilizer::for_goals(&g1, &g2))?;
            let mut r = Generalization::new("kswap", Relation::PreceqInj.name(), &out);
            r.k = Some(k.to_string());
            show(&r)?;
        }
        Command::Check { rel, files } => {
            let (g1, g2) = input::pair(files, strict)?;
            let witness = check_generalization(&g1, &g2, *rel);
            let r = CheckResult {
                relation: rel.name().into(),
                holds: witness.is_some(),
                witness: witness.as_ref().map(bindings),
            };
            emit(cli.json, &r, || r.text(cli.quiet))?;
            if !r.holds {
                return Ok(Outcome::No);
            }
        }
        Command::Oracle {
            problem,
            rel,
            base,
            mode,
            p,
            force,
            files,
        } => return oracle(cli, *problem, (*rel).into(), (*base).into(), *mode, *p, *force, files),
        Command::Gen { gen, count } => {
            let cfg = gen.resolve()?;
            let mut doc = GoalDocument::default();
            let mut pairs = Vec::new();
            for i in 0..*count {
                let seed = cfg.seed.wrapping_add(i as u64);
                let (g1, g2) = antiunify::generate_goals(&antiunify::GeneratorConfig { seed, ..cfg.clone() })?;
                doc.push(Some(format!("g{i}_1")), g1.clone());
                doc.push(Some(format!("g{i}_2")), g2.clone());
                pairs.push(serde_json::json!({
                    "seed": seed,
                    "g1": g1.to_string(),
                    "g2": g2.to_string(),
                }));
            }
            emit(cli.json, &pairs, || doc.to_string())?;
        }
        Command::Bench {
            gen,
            k,
            instances,
            force,
            output,
        } => {
            let cfg = gen.resolve()?;
            let b = bounds(*force);
            let violations = match output {
                Some(path) => {
                    let file = File::create(path).map_err(|source| CliError::Io {
                        path: path.clone(),
                        source,
                    })?;
                    bench::run(&cfg, *instances, k, b, file)?
                }
                None => bench::run(&cfg, *instances, k, b, io::stdout().lock())?,
            };
            for v in &violations {
                eprintln!("violation: {v}");
            }
            if !violations.is_empty() {
                return Ok(Outcome::No);
            }
        }
    }
    Ok(Outcome::Done)
}

#[allow(clippy::too_many_arguments)]
fn oracle(
    cli: &Cli,
    problem: Problem,
    rel: Relation,
    base: GenRelation,
    mode: MinMode,
    p: Option<usize>,
    force: bool,
    files: &[PathBuf],
) -> Result<Outcome, CliError> {
    let strict = cli.strict_arity;
    let b = bounds(force);
    let show = |r: &Generalization| emit(cli.json, r, || r.text(cli.quiet));
    let mode = match mode {
        MinMode::Msg => MinVarMode::MsgMin,
        MinMode::Lcg => MinVarMode::LcgMin,
    };
    match problem {
        Problem::InjLcg => {
            let (g1, g2) = input::disjoint_pair(files, strict)?;
            let out = brute_lcg_inj(&g1, &g2, rel, b)?;
            show(&Generalization::new("oracle inj-lcg", rel.name(), &out))?;
        }
        Problem::InjSubsumes => {
            let (g1, g2) = input::pair(files, strict)?;
            let witness = inj_subsumes(&g1, &g2, rel, b)?;
            let r = CheckResult {
                relation: rel.name().into(),
                holds: witness.is_some(),
                witness: witness.as_ref().map(bindings),
            };
            emit(cli.json, &r, || r.text(cli.quiet))?;
            if !r.holds {
                return Ok(Outcome::No);
            }
        }
        Problem::MinVars => {
            let (g1, g2) = input::disjoint_pair(files, strict)?;
            let out = min_var_generalization(&g1, &g2, mode, base, b)?;
            let mut r = Generalization::new("oracle min-vars", Relation::from(base).name(), &out.outcome);
            r.decision = p.map(|p| Decision {
                question: "fewer than p variables".into(),
                p,
                answer: out.below(p),
                min_cover: None,
            });
            show(&r)?;
        }
        Problem::Scp => {
            let [path] = files else {
                return Err(CliError::Usage("scp takes a single JSON instance file".into()));
            };
            let file: ScpFile = serde_json::from_str(&input::read(path)?)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            let inst = ScpInstance::new(file.universe, file.sets, p.unwrap_or(file.p))?;
            let (g1, g2) = scp_to_goals(&inst)?;
            let out = min_var_generalization(&g1, &g2, MinVarMode::MsgMin, GenRelation::Subseteq, b)?;
            let mut r = Generalization::new("oracle scp", Relation::Subseteq.name(), &out.outcome);
            r.decision = Some(Decision {
                question: "cover with at most p sets".into(),
                p: inst.p,
                answer: out.var_count <= inst.p,
                min_cover: Some(out.var_count),
            });
            show(&r)?;
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(antiunify::Error::InstanceTooLarge { .. }) = e {
                eprintln!("hint: pass --force to search anyway");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
