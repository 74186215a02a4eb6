//! Seeded random goal pairs for tests and benchmarks.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::goal::Goal;
use crate::term::{Atom, Term};

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    /// Atom count of each goal.
    pub atoms: RangeInclusive<usize>,
    /// Arity of each predicate symbol.
    pub arity: RangeInclusive<usize>,
    /// Number of predicate names, `p0` to `p{n-1}`.
    pub predicates: usize,
    /// Nesting depth of argument terms; 0 is a bare variable or constant.
    pub depth: RangeInclusive<usize>,
    /// Cap on distinct variables per goal; 0 means no cap.
    pub var_pool: usize,
    /// Chance that a variable occurrence reuses an earlier variable.
    pub sharing: f64,
    /// Chance that an atom of the second goal is a renamed copy of an atom
    /// of the first.
    pub overlap: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            atoms: 4..=6,
            arity: 1..=3,
            predicates: 3,
            depth: 0..=1,
            var_pool: 0,
            sharing: 0.3,
            overlap: 0.5,
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.atoms.is_empty() {
            return bad("atom range is empty");
        }
        if self.arity.is_empty() {
            return bad("arity range is empty");
        }
        if self.depth.is_empty() {
            return bad("depth range is empty");
        }
        if self.predicates == 0 {
            return bad("at least one predicate is needed");
        }
        for (name, p) in [("sharing", self.sharing), ("overlap", self.overlap)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} probability {p} is outside [0, 1]")));
            }
        }
        Ok(())
    }
}

const FUNCTORS: [(&str, usize); 3] = [("f", 1), ("g", 2), ("h", 2)];
const MAX_ATTEMPTS: usize = 10_000;

struct VarSource {
    prefix: &'static str,
    issued: usize,
    pool: usize,
    sharing: f64,
}

impl VarSource {
    fn next(&mut self, rng: &mut ChaCha8Rng) -> Term {
        let exhausted = self.pool > 0 && self.issued >= self.pool;
        if self.issued > 0 && (exhausted || rng.gen_bool(self.sharing)) {
            let i = rng.gen_range(1..=self.issued);
            return Term::var(format!("{}{i}", self.prefix));
        }
        self.issued += 1;
        Term::var(format!("{}{}", self.prefix, self.issued))
    }
}

struct Builder<'c> {
    cfg: &'c GeneratorConfig,
    rng: ChaCha8Rng,
    arities: Vec<usize>,
}

impl Builder<'_> {
    fn term(&mut self, depth: usize, vars: &mut VarSource) -> Term {
        if depth == 0 {
            return if self.rng.gen_bool(0.7) {
                vars.next(&mut self.rng)
            } else {
                Term::int(self.rng.gen_range(0..3))
            };
        }
        let (f, n) = *FUNCTORS.choose(&mut self.rng).expect("functors");
        let args = (0..n).map(|_| self.term(depth - 1, vars)).collect();
        Term::app(f, args)
    }

    fn atom(&mut self, vars: &mut VarSource) -> Atom {
        let p = self.rng.gen_range(0..self.cfg.predicates);
        let args = (0..self.arities[p])
            .map(|_| {
                let d = self.rng.gen_range(self.cfg.depth.clone());
                self.term(d, vars)
            })
            .collect();
        Atom::new(format!("p{p}"), args)
    }

    fn fill(&mut self, target: usize, mut next: impl FnMut(&mut Self) -> Atom) -> Result<Goal> {
        let mut goal = Goal::new();
        let mut attempts = 0;
        while goal.len() < target {
            attempts += 1;
            if attempts > MAX_ATTEMPTS {
                return Err(Error::InvalidConfig(format!(
                    "could not draw {target} distinct atoms; widen the predicate, arity or depth ranges"
                )));
            }
            goal.insert(next(self));
        }
        Ok(goal)
    }
}

/// Renaming of left variables onto right ones by position in `order`.
fn rename(atom: &Atom, order: &[usize]) -> Atom {
    fn go(t: &Term, order: &[usize]) -> Term {
        match t {
            Term::Var(name) => {
                let i: usize = name[1..].parse().expect("generated variable name");
                Term::var(format!("Y{}", order[i - 1]))
            }
            Term::Const(_) => t.clone(),
            Term::App(f, xs) => Term::App(f.clone(), xs.iter().map(|x| go(x, order)).collect()),
        }
    }
    Atom::new(atom.predicate.clone(), atom.args.iter().map(|t| go(t, order)).collect())
}

/// A variable-disjoint pair of goals: the first uses `X1, X2, ...`, the
/// second `Y1, Y2, ...`. Copies of first-goal atoms go through one of two
/// random renamings, so some copies conflict with each other.
pub fn generate_goals(cfg: &GeneratorConfig) -> Result<(Goal, Goal)> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let arities = (0..cfg.predicates).map(|_| rng.gen_range(cfg.arity.clone())).collect();
    let mut b = Builder { cfg, rng, arities };

    let n1 = b.rng.gen_range(cfg.atoms.clone());
    let n2 = b.rng.gen_range(cfg.atoms.clone());
    let mut left_vars = VarSource {
        prefix: "X",
        issued: 0,
        pool: cfg.var_pool,
        sharing: cfg.sharing,
    };
    let g1 = b.fill(n1, |b| b.atom(&mut left_vars))?;

    let width = left_vars.issued;
    let straight: Vec<usize> = (1..=width).collect();
    let mut shuffled = straight.clone();
    shuffled.shuffle(&mut b.rng);
    let source: Vec<&Atom> = g1.atoms().collect();
    let mut right_vars = VarSource {
        prefix: "Y",
        issued: width,
        pool: if cfg.var_pool == 0 { 0 } else { cfg.var_pool.max(width) },
        sharing: cfg.sharing,
    };
    let g2 = b.fill(n2, |b| {
        if !source.is_empty() && b.rng.gen_bool(cfg.overlap) {
            let a = source[b.rng.gen_range(0..source.len())];
            let order = if b.rng.gen_bool(0.5) { &straight } else { &shuffled };
            rename(a, order)
        } else {
            b.atom(&mut right_vars)
        }
    })?;
    Ok((g1, g2))
}
