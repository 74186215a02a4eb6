//! Substitutions and their application.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::goal::Goal;
use crate::term::{Atom, Term};

/// A finite mapping from variable names to terms. Identity bindings are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn from_map(map: BTreeMap<String, Term>) -> Self {
        let mut s = Substitution::new();
        for (v, t) in map {
            s.bind(v, t);
        }
        s
    }

    pub fn from_pairs<I, V>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (V, Term)>,
        V: Into<String>,
    {
        let mut s = Substitution::new();
        for (v, t) in pairs {
            s.bind(v, t);
        }
        s
    }

    /// Adds or replaces a binding; `X ↦ X` removes any binding of `X`.
    pub fn bind(&mut self, var: impl Into<String>, term: Term) {
        let var = var.into();
        if term.as_var() == Some(var.as_str()) {
            self.bindings.remove(&var);
        } else {
            self.bindings.insert(var, term);
        }
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.bindings.iter().map(|(v, t)| (v.as_str(), t))
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    pub fn is_renaming(&self) -> bool {
        self.bindings.values().all(Term::is_var)
    }

    /// No two domain variables share an image.
    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.bindings.values().all(|t| seen.insert(t))
    }

    /// The substitution equivalent to applying `self` and then `then`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.bindings {
            out.bind(v.clone(), t.apply(then));
        }
        for (v, t) in &then.bindings {
            if !self.bindings.contains_key(v) {
                out.bind(v.clone(), t.clone());
            }
        }
        out
    }

    /// Keeps only the bindings for the given variables.
    pub fn restrict<'a>(&self, vars: impl IntoIterator<Item = &'a str>) -> Substitution {
        let mut out = Substitution::new();
        for v in vars {
            if let Some(t) = self.bindings.get(v) {
                out.bindings.insert(v.to_string(), t.clone());
            }
        }
        out
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} ↦ {t}")?;
        }
        f.write_str("]")
    }
}

/// Simultaneous, non-iterated application of a substitution.
pub trait Substitutable {
    fn apply(&self, s: &Substitution) -> Self;
}

impl Substitutable for Term {
    fn apply(&self, s: &Substitution) -> Term {
        match self {
            Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.apply(s)).collect()),
        }
    }
}

impl Substitutable for Atom {
    fn apply(&self, s: &Substitution) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|a| a.apply(s)).collect(),
        }
    }
}

impl Substitutable for Goal {
    /// May shrink the goal when atoms collapse.
    fn apply(&self, s: &Substitution) -> Goal {
        self.atoms().map(|a| a.apply(s)).collect()
    }
}
