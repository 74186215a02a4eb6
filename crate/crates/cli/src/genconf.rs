//! Generator settings from a TOML file, overridden by command-line flags.

use std::path::Path;
use std::str::FromStr;

use antiunify::GeneratorConfig;
use clap::Args;
use serde::Deserialize;

use crate::{input, CliError};

/// Inclusive range written `LO..HI` or a single `N` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub struct Span(pub usize, pub usize);

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
        match s.split_once("..") {
            Some((lo, hi)) => Ok(Span(num(lo)?, num(hi.trim_start_matches('='))?)),
            None => num(s).map(|n| Span(n, n)),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    atoms: Option<Span>,
    arity: Option<Span>,
    predicates: Option<usize>,
    depth: Option<Span>,
    var_pool: Option<usize>,
    sharing: Option<f64>,
    overlap: Option<f64>,
    seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// TOML file with generator settings; flags below override it.
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    #[arg(long, env = "ANTIUNIFY_SEED")]
    pub seed: Option<u64>,
    /// Atoms per goal, `LO..HI` or `N`.
    #[arg(long)]
    pub atoms: Option<Span>,
    #[arg(long)]
    pub arity: Option<Span>,
    /// Number of predicate names.
    #[arg(long)]
    pub predicates: Option<usize>,
    /// Term nesting depth.
    #[arg(long)]
    pub depth: Option<Span>,
    /// Distinct variables per goal, 0 for no cap.
    #[arg(long)]
    pub var_pool: Option<usize>,
    /// Chance that a variable occurrence repeats an earlier one.
    #[arg(long)]
    pub sharing: Option<f64>,
    /// Chance that an atom of the second goal copies one of the first.
    #[arg(long)]
    pub overlap: Option<f64>,
}

impl GenArgs {
    pub fn resolve(&self) -> Result<GeneratorConfig, CliError> {
        let file = match &self.config {
            Some(path) => load(path)?,
            None => FileConfig::default(),
        };
        let base = GeneratorConfig::default();
        let range = |flag: Option<Span>, file: Option<Span>, default: std::ops::RangeInclusive<usize>| {
            flag.or(file).map_or(default, |Span(lo, hi)| lo..=hi)
        };
        let cfg = GeneratorConfig {
            atoms: range(self.atoms, file.atoms, base.atoms),
            arity: range(self.arity, file.arity, base.arity),
            predicates: self.predicates.or(file.predicates).unwrap_or(base.predicates),
            depth: range(self.depth, file.depth, base.depth),
            var_pool: self.var_pool.or(file.var_pool).unwrap_or(base.var_pool),
            sharing: self.sharing.or(file.sharing).unwrap_or(base.sharing),
            overlap: self.overlap.or(file.overlap).unwrap_or(base.overlap),
            seed: self.seed.or(file.seed).unwrap_or(base.seed),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn load(path: &Path) -> Result<FileConfig, CliError> {
    let text = input::read(path)?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
