//! Exhaustive solvers for the intractable variants, meant for small inputs:
//! injective largest common generalization, injective subsumption, variable
//! minimization among most specific or largest generalizations, and the
//! set-cover encoding used to exercise the latter.

use std::collections::{BTreeSet, HashMap};

use crate::atomic::weight;
use crate::check::{check_generalization, Relation};
use crate::error::{Error, Result};
use crate::generalize::{GenOutcome, GenRelation};
use crate::goal::Goal;
use crate::matching::{max_weight_matching, WeightMatrix};
use crate::subst::Substitution;
use crate::syntax::is_valid_predicate_name;
use crate::term::{Atom, Term};
use crate::variabilizer::Variabilizer;

/// Size limits for the exhaustive solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    /// Bound on the smaller goal's atom count.
    pub max_atoms: usize,
    /// Bound on the number of partner atoms any single atom of the first
    /// goal can be paired with.
    pub max_candidates_per_atom: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_atoms: 8,
            max_candidates_per_atom: 10,
        }
    }
}

impl OracleBounds {
    pub fn unbounded() -> Self {
        OracleBounds {
            max_atoms: usize::MAX,
            max_candidates_per_atom: usize::MAX,
        }
    }

    fn check(&self, g1: &Goal, g2: &Goal) -> Result<()> {
        let smaller = g1.len().min(g2.len());
        if smaller > self.max_atoms {
            return Err(Error::InstanceTooLarge {
                what: "smaller goal size",
                actual: smaller,
                bound: self.max_atoms,
            });
        }
        let widest = g1
            .atoms()
            .map(|a| g2.atoms().filter(|b| a.same_symbol(b)).count())
            .max()
            .unwrap_or(0);
        if widest > self.max_candidates_per_atom {
            return Err(Error::InstanceTooLarge {
                what: "candidate partners of one atom",
                actual: widest,
                bound: self.max_candidates_per_atom,
            });
        }
        Ok(())
    }
}

/// The common structure of two terms with variable positions marked by the
/// term pair they generalize.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Shape {
    Keep(Term),
    Var(Term, Term),
    Node(String, Vec<Shape>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ShapeMode {
    /// Deepest common structure only.
    Deep,
    /// Every way of cutting the common structure back to variables.
    Cuts,
    /// Same non-variable structure required, variables only at variables.
    Renaming,
}

impl Shape {
    fn pairs<'s>(&'s self, out: &mut Vec<(&'s Term, &'s Term)>) {
        match self {
            Shape::Keep(_) => {}
            Shape::Var(t, u) => out.push((t, u)),
            Shape::Node(_, xs) => xs.iter().for_each(|x| x.pairs(out)),
        }
    }

    fn build(&self, v: &mut Variabilizer) -> Term {
        match self {
            Shape::Keep(t) => t.clone(),
            Shape::Var(t, u) => v.fresh(t, u),
            Shape::Node(f, xs) => Term::App(f.clone(), xs.iter().map(|x| x.build(v)).collect()),
        }
    }
}

fn product(options: Vec<Vec<Shape>>) -> Vec<Vec<Shape>> {
    options.into_iter().fold(vec![Vec::new()], |acc, opts| {
        acc.into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect()
    })
}

fn term_shapes(t: &Term, u: &Term, mode: ShapeMode) -> Vec<Shape> {
    match (t, u) {
        (Term::Const(c), Term::Const(d)) if c == d => vec![Shape::Keep(t.clone())],
        (Term::Var(_), Term::Var(_)) => vec![Shape::Var(t.clone(), u.clone())],
        (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
            let children: Vec<Vec<Shape>> = xs.iter().zip(ys).map(|(x, y)| term_shapes(x, y, mode)).collect();
            let mut out = Vec::new();
            if mode == ShapeMode::Cuts {
                out.push(Shape::Var(t.clone(), u.clone()));
            }
            out.extend(product(children).into_iter().map(|args| Shape::Node(f.clone(), args)));
            out
        }
        _ if mode == ShapeMode::Renaming => Vec::new(),
        _ => vec![Shape::Var(t.clone(), u.clone())],
    }
}

/// All argument shapes for a pair of atoms; empty when they do not
/// anti-unify in the given mode.
fn atom_shapes(a: &Atom, b: &Atom, mode: ShapeMode) -> Vec<Vec<Shape>> {
    if !a.same_symbol(b) {
        return Vec::new();
    }
    let per_arg: Vec<Vec<Shape>> = a.args.iter().zip(&b.args).map(|(t, u)| term_shapes(t, u, mode)).collect();
    product(per_arg)
}

/// One way to generalize a pair: argument shapes plus their variable pairs.
#[derive(Debug, Clone)]
struct PairChoice {
    args: Vec<Shape>,
    pairs: Vec<(Term, Term)>,
}

fn options(a: &Atom, b: &Atom, mode: ShapeMode) -> Vec<PairChoice> {
    let mut seen = BTreeSet::new();
    atom_shapes(a, b, mode)
        .into_iter()
        .filter_map(|args| {
            let mut refs = Vec::new();
            args.iter().for_each(|s| s.pairs(&mut refs));
            let pairs: BTreeSet<(Term, Term)> = refs.into_iter().map(|(t, u)| (t.clone(), u.clone())).collect();
            seen.insert(pairs.clone()).then(|| PairChoice {
                args,
                pairs: pairs.into_iter().collect(),
            })
        })
        .collect()
}

fn assemble(g1: &Goal, chosen: &[(usize, usize, Vec<Shape>)], v: &mut Variabilizer) -> GenOutcome {
    let atoms = chosen
        .iter()
        .map(|(i, j, args)| {
            let pred = g1.get(*i).expect("row").predicate.clone();
            let atom = Atom::new(pred, args.iter().map(|s| s.build(v)).collect());
            (atom, (*i, *j))
        })
        .collect();
    GenOutcome::assemble(atoms, v)
}

/// Partial bijection between left and right terms, with multiplicities so
/// that choices can be undone.
#[derive(Default)]
struct Bijection {
    fwd: HashMap<Term, (Term, usize)>,
    bwd: HashMap<Term, (Term, usize)>,
}

impl Bijection {
    fn admits(&self, pairs: &[(Term, Term)]) -> bool {
        let mut local: HashMap<&Term, &Term> = HashMap::new();
        let mut local_back: HashMap<&Term, &Term> = HashMap::new();
        pairs.iter().all(|(t, u)| {
            self.fwd.get(t).map_or(true, |(img, _)| img == u)
                && self.bwd.get(u).map_or(true, |(pre, _)| pre == t)
                && *local.entry(t).or_insert(u) == u
                && *local_back.entry(u).or_insert(t) == t
        })
    }

    fn push(&mut self, pairs: &[(Term, Term)]) {
        for (t, u) in pairs {
            self.fwd.entry(t.clone()).or_insert((u.clone(), 0)).1 += 1;
            self.bwd.entry(u.clone()).or_insert((t.clone(), 0)).1 += 1;
        }
    }

    fn pop(&mut self, pairs: &[(Term, Term)]) {
        for (t, u) in pairs {
            for (map, key) in [(&mut self.fwd, t), (&mut self.bwd, u)] {
                let e = map.get_mut(key).expect("pushed pair");
                e.1 -= 1;
                if e.1 == 0 {
                    map.remove(key);
                }
            }
        }
    }
}

struct InjSearch<'a> {
    used: Vec<bool>,
    bij: Bijection,
    current: Vec<(usize, usize, &'a PairChoice)>,
    best: Vec<(usize, usize, &'a PairChoice)>,
}

impl<'a> InjSearch<'a> {
    fn run(&mut self, table: &'a [Vec<(usize, Vec<PairChoice>)>], row: usize) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if row == table.len() || self.best.len() == self.used.len().min(table.len()) {
            return;
        }
        let rows_left = table[row..].iter().filter(|r| !r.is_empty()).count();
        if self.current.len() + rows_left <= self.best.len() {
            return;
        }
        for (j, opts) in &table[row] {
            if self.used[*j] {
                continue;
            }
            for opt in opts {
                if !self.bij.admits(&opt.pairs) {
                    continue;
                }
                self.used[*j] = true;
                self.bij.push(&opt.pairs);
                self.current.push((row, *j, opt));
                self.run(table, row + 1);
                self.current.pop();
                self.bij.pop(&opt.pairs);
                self.used[*j] = false;
            }
        }
        self.run(table, row + 1);
    }
}

/// A largest common generalization under an injective relation, by branch
/// and bound over atom pairings and, for `⊑ι`, over how deep each pair's
/// common structure is kept.
pub fn brute_lcg_inj(g1: &Goal, g2: &Goal, relation: Relation, bounds: OracleBounds) -> Result<GenOutcome> {
    let mode = match relation {
        Relation::PreceqInj => ShapeMode::Renaming,
        Relation::SubseteqInj => ShapeMode::Cuts,
        other => {
            return Err(Error::InvalidConfig(format!(
                "brute_lcg_inj needs an injective relation, got {other}"
            )))
        }
    };
    g1.ensure_disjoint(g2)?;
    bounds.check(g1, g2)?;
    let table: Vec<Vec<(usize, Vec<PairChoice>)>> = g1
        .atoms()
        .map(|a| {
            g2.atoms()
                .enumerate()
                .map(|(j, b)| (j, options(a, b, mode)))
                .filter(|(_, o)| !o.is_empty())
                .collect()
        })
        .collect();
    let mut search = InjSearch {
        used: vec![false; g2.len()],
        bij: Bijection::default(),
        current: Vec::new(),
        best: Vec::new(),
    };
    search.run(&table, 0);
    let chosen: Vec<(usize, usize, Vec<Shape>)> =
        search.best.iter().map(|(i, j, o)| (*i, *j, o.args.clone())).collect();
    Ok(assemble(g1, &chosen, &mut Variabilizer::for_goals(g1, g2)))
}

/// Decides whether `g1` generalizes `g2` under an injective relation and
/// returns a witness.
pub fn inj_subsumes(g1: &Goal, g2: &Goal, relation: Relation, bounds: OracleBounds) -> Result<Option<Substitution>> {
    if !relation.injective() {
        return Err(Error::InvalidConfig(format!(
            "inj_subsumes needs an injective relation, got {relation}"
        )));
    }
    bounds.check(g1, g2)?;
    if g1.len() > g2.len() {
        return Ok(None);
    }
    Ok(check_generalization(g1, g2, relation))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinVarMode {
    /// Fewest variables among the most specific generalizations.
    MsgMin,
    /// Fewest variables among the largest generalizations.
    LcgMin,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinVarOutcome {
    pub outcome: GenOutcome,
    pub var_count: usize,
}

impl MinVarOutcome {
    /// The decision version: is there one with fewer than `p` variables?
    pub fn below(&self, p: usize) -> bool {
        self.var_count < p
    }
}

struct MinSearch<'a> {
    table: &'a [Vec<(usize, i64, Vec<PairChoice>)>],
    row_best: Vec<i64>,
    target: i64,
    used: Vec<bool>,
    counts: HashMap<&'a (Term, Term), usize>,
    current: Vec<(usize, usize, &'a PairChoice)>,
    best: Option<(usize, Vec<(usize, usize, &'a PairChoice)>)>,
}

impl<'a> MinSearch<'a> {
    fn run(&mut self, row: usize, score: i64) {
        let distinct = self.counts.len();
        if self.best.as_ref().is_some_and(|(b, _)| distinct >= *b) {
            return;
        }
        let reachable: i64 = self.row_best[row..].iter().sum();
        if score + reachable < self.target {
            return;
        }
        if row == self.table.len() {
            if score == self.target {
                self.best = Some((distinct, self.current.clone()));
            }
            return;
        }
        let table = self.table;
        for (j, w, opts) in &table[row] {
            if self.used[*j] {
                continue;
            }
            self.used[*j] = true;
            for opt in opts {
                for p in &opt.pairs {
                    *self.counts.entry(p).or_insert(0) += 1;
                }
                self.current.push((row, *j, opt));
                self.run(row + 1, score + w);
                self.current.pop();
                for p in &opt.pairs {
                    let c = self.counts.get_mut(p).expect("counted pair");
                    *c -= 1;
                    if *c == 0 {
                        self.counts.remove(p);
                    }
                }
            }
            self.used[*j] = false;
        }
        self.run(row + 1, score);
    }
}

/// Keeps only options whose variable pairs are not a strict superset of
/// another option's; those can never give fewer variables.
fn minimal_options(opts: Vec<PairChoice>) -> Vec<PairChoice> {
    let sets: Vec<BTreeSet<&(Term, Term)>> = opts.iter().map(|o| o.pairs.iter().collect()).collect();
    let keep: Vec<bool> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| !sets.iter().enumerate().any(|(j, t)| j != i && t.is_subset(s) && t.len() < s.len()))
        .collect();
    opts.into_iter().zip(keep).filter_map(|(o, k)| k.then_some(o)).collect()
}

/// A most specific (or largest) common generalization with as few distinct
/// variables as possible. Every optimal pairing is enumerated; for
/// largest generalizations under `⊑` every cut depth is tried as well.
pub fn min_var_generalization(
    g1: &Goal,
    g2: &Goal,
    mode: MinVarMode,
    relation: GenRelation,
    bounds: OracleBounds,
) -> Result<MinVarOutcome> {
    g1.ensure_disjoint(g2)?;
    bounds.check(g1, g2)?;
    let shape_mode = match (relation, mode) {
        (GenRelation::Preceq, _) => ShapeMode::Renaming,
        (GenRelation::Subseteq, MinVarMode::MsgMin) => ShapeMode::Deep,
        (GenRelation::Subseteq, MinVarMode::LcgMin) => ShapeMode::Cuts,
    };
    // Scores: τ-value for most specific under ⊑, one per atom otherwise.
    let by_weight = relation == GenRelation::Subseteq && mode == MinVarMode::MsgMin;
    let table: Vec<Vec<(usize, i64, Vec<PairChoice>)>> = g1
        .atoms()
        .map(|a| {
            g2.atoms()
                .enumerate()
                .filter_map(|(j, b)| {
                    let opts = minimal_options(options(a, b, shape_mode));
                    if opts.is_empty() {
                        return None;
                    }
                    let score = if by_weight { weight(a, b) } else { 1 };
                    Some((j, score, opts))
                })
                .collect()
        })
        .collect();
    let mut scores = WeightMatrix::new(g1.len(), g2.len(), -1);
    for (i, row) in table.iter().enumerate() {
        for (j, w, _) in row {
            scores.set(i, *j, *w);
        }
    }
    let target = max_weight_matching(&scores).total;
    let row_best = table
        .iter()
        .map(|r| r.iter().map(|(_, w, _)| *w).max().unwrap_or(0))
        .chain([0])
        .collect();
    let mut search = MinSearch {
        table: &table,
        row_best,
        target,
        used: vec![false; g2.len()],
        counts: HashMap::new(),
        current: Vec::new(),
        best: None,
    };
    search.run(0, 0);
    let (var_count, chosen) = search.best.expect("the optimal matching itself is a candidate");
    let chosen: Vec<(usize, usize, Vec<Shape>)> = chosen.iter().map(|(i, j, o)| (*i, *j, o.args.clone())).collect();
    let outcome = assemble(g1, &chosen, &mut Variabilizer::for_goals(g1, g2));
    debug_assert_eq!(outcome.goal.vars().len(), var_count);
    Ok(MinVarOutcome { outcome, var_count })
}

/// A set-cover instance: can `universe` be covered by at most `p` of
/// `sets`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScpInstance {
    pub universe: Vec<String>,
    pub sets: Vec<Vec<String>>,
    pub p: usize,
}

impl ScpInstance {
    pub fn new(universe: Vec<String>, sets: Vec<Vec<String>>, p: usize) -> Result<Self> {
        let inst = ScpInstance { universe, sets, p };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        for x in self.universe.iter().chain(self.sets.iter().flatten()) {
            if !is_valid_predicate_name(x) {
                return Err(Error::InvalidIdentifier(x.clone()));
            }
        }
        let universe: BTreeSet<&String> = self.universe.iter().collect();
        let covered: BTreeSet<&String> = self.sets.iter().flatten().collect();
        if universe != covered {
            return Err(Error::InvalidConfig("the sets must cover exactly the universe".into()));
        }
        if self.p == 0 {
            return Err(Error::InvalidConfig("p must be positive".into()));
        }
        Ok(())
    }
}

/// Encodes set cover as variable minimization: one atom `x(V)` per element
/// on the left, one atom `x(Wi)` per membership of `x` in set `i` on the
/// right.
pub fn scp_to_goals(inst: &ScpInstance) -> Result<(Goal, Goal)> {
    inst.validate()?;
    let v = Term::var("V");
    let g1 = inst
        .universe
        .iter()
        .map(|x| Atom::new(x.clone(), vec![v.clone()]))
        .collect();
    let g2 = inst
        .sets
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            let w = Term::var(format!("W{}", i + 1));
            s.iter().map(move |x| Atom::new(x.clone(), vec![w.clone()]))
        })
        .collect();
    Ok((g1, g2))
}

/// Smallest number of sets covering the universe, by increasing subset
/// size.
pub fn min_cover_size(inst: &ScpInstance) -> usize {
    let n = inst.sets.len();
    let universe: BTreeSet<&String> = inst.universe.iter().collect();
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    masks
        .into_iter()
        .find(|m| {
            let covered: BTreeSet<&String> = (0..n)
                .filter(|i| m & (1 << i) != 0)
                .flat_map(|i| inst.sets[i].iter())
                .collect();
            covered == universe
        })
        .map_or(n, |m| m.count_ones() as usize)
}
