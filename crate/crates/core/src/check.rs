//! Deciding the generalization relations by backtracking search.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::goal::Goal;
use crate::subst::Substitution;
use crate::term::{Atom, Term};

/// The four generalization relations between goals.
///
/// `G ⊑ G'` holds when some substitution θ gives `Gθ ⊆ G'`; `≼` restricts θ
/// to renamings. The injective variants additionally require distinct
/// variables of `G` to be sent to distinct terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Subseteq,
    Preceq,
    SubseteqInj,
    PreceqInj,
}

impl Relation {
    pub const ALL: [Relation; 4] = [
        Relation::Subseteq,
        Relation::Preceq,
        Relation::SubseteqInj,
        Relation::PreceqInj,
    ];

    pub fn renaming_only(self) -> bool {
        matches!(self, Relation::Preceq | Relation::PreceqInj)
    }

    pub fn injective(self) -> bool {
        matches!(self, Relation::SubseteqInj | Relation::PreceqInj)
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::Subseteq => "subseteq",
            Relation::Preceq => "preceq",
            Relation::SubseteqInj => "subseteq-inj",
            Relation::PreceqInj => "preceq-inj",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == s || r.name().replace('-', "_") == s)
            .ok_or_else(|| format!("unknown relation `{s}` (expected subseteq, preceq, subseteq-inj or preceq-inj)"))
    }
}

/// One-way matcher carrying the partial witness. Every variable of the
/// pattern side is recorded, including ones mapped to themselves, so the
/// injectivity test sees the whole mapping.
struct Matcher<'a> {
    relation: Relation,
    bound: HashMap<&'a str, &'a Term>,
    images: HashMap<&'a Term, &'a str>,
    trail: Vec<&'a str>,
}

impl<'a> Matcher<'a> {
    fn new(relation: Relation) -> Self {
        Matcher {
            relation,
            bound: HashMap::new(),
            images: HashMap::new(),
            trail: Vec::new(),
        }
    }

    fn mark(&self) -> usize {
        self.trail.len()
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail entry");
            if let Some(t) = self.bound.remove(v) {
                if self.images.get(t) == Some(&v) {
                    self.images.remove(t);
                }
            }
        }
    }

    fn term(&mut self, pattern: &'a Term, target: &'a Term) -> bool {
        match pattern {
            Term::Var(v) => {
                if let Some(prev) = self.bound.get(v.as_str()) {
                    return *prev == target;
                }
                if self.relation.renaming_only() && !target.is_var() {
                    return false;
                }
                if self.relation.injective() && self.images.contains_key(target) {
                    return false;
                }
                self.bound.insert(v, target);
                self.images.entry(target).or_insert(v);
                self.trail.push(v);
                true
            }
            Term::Const(c) => matches!(target, Term::Const(d) if c == d),
            Term::App(f, xs) => match target {
                Term::App(g, ys) if f == g && xs.len() == ys.len() => {
                    xs.iter().zip(ys).all(|(x, y)| self.term(x, y))
                }
                _ => false,
            },
        }
    }

    fn atom(&mut self, pattern: &'a Atom, target: &'a Atom) -> bool {
        if !pattern.same_symbol(target) {
            return false;
        }
        let mark = self.mark();
        let ok = pattern
            .args
            .iter()
            .zip(&target.args)
            .all(|(x, y)| self.term(x, y));
        if !ok {
            self.undo(mark);
        }
        ok
    }

    fn witness(&self) -> Substitution {
        Substitution::from_pairs(self.bound.iter().map(|(v, t)| (*v, (*t).clone())))
    }
}

fn search<'a>(m: &mut Matcher<'a>, pattern: &[&'a Atom], target: &[&'a Atom]) -> bool {
    let Some((first, rest)) = pattern.split_first() else {
        return true;
    };
    for candidate in target {
        let mark = m.mark();
        if m.atom(first, candidate) {
            if search(m, rest, target) {
                return true;
            }
            m.undo(mark);
        }
    }
    false
}

/// Searches for a witness θ with `gθ ⊆ g2` under `relation`.
///
/// Atoms of `g` are tried in goal order against atoms of `g2` in goal order;
/// the first witness found is returned. Atoms of `g` may share an image
/// atom, since `gθ` is a set.
pub fn check_generalization(g: &Goal, g2: &Goal, relation: Relation) -> Option<Substitution> {
    let pattern: Vec<&Atom> = g.atoms().collect();
    let target: Vec<&Atom> = g2.atoms().collect();
    let mut m = Matcher::new(relation);
    search(&mut m, &pattern, &target).then(|| m.witness())
}

/// Checks a given witness against a relation: `gθ ⊆ g2`, θ a renaming for
/// the `≼` relations and injective on `vars(g)` for the injective ones.
pub fn is_witness(g: &Goal, g2: &Goal, theta: &Substitution, relation: Relation) -> bool {
    use crate::subst::Substitutable;
    if !g.apply(theta).is_subset(g2) {
        return false;
    }
    let vars = g.vars();
    let image = |v: &str| theta.get(v).cloned().unwrap_or_else(|| Term::var(v));
    if relation.renaming_only() && !vars.iter().all(|v| image(v).is_var()) {
        return false;
    }
    if relation.injective() {
        let mut seen = std::collections::HashSet::new();
        if !vars.iter().all(|v| seen.insert(image(v))) {
            return false;
        }
    }
    true
}

/// Goals equal up to a bijective variable renaming.
pub fn are_variants(g1: &Goal, g2: &Goal) -> bool {
    g1.len() == g2.len()
        && check_generalization(g1, g2, Relation::PreceqInj).is_some()
        && check_generalization(g2, g1, Relation::PreceqInj).is_some()
}
