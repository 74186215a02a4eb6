use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::subst::{Substitutable, Substitution};
use crate::term::{Atom, Term};

/// A finite set of atoms in first-appearance order.
#[derive(Debug, Clone, Default)]
pub struct Goal {
    atoms: IndexSet<Atom>,
}

impl Goal {
    pub fn new() -> Self {
        Goal::default()
    }

    /// Returns false if the atom was already present.
    pub fn insert(&mut self, atom: Atom) -> bool {
        self.atoms.insert(atom)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl ExactSizeIterator<Item = &Atom> + '_ {
        self.atoms.iter()
    }

    pub fn get(&self, index: usize) -> Option<&Atom> {
        self.atoms.get_index(index)
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.atoms.get_index_of(atom)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.atoms.contains(atom)
    }

    pub fn is_subset(&self, other: &Goal) -> bool {
        self.atoms.iter().all(|a| other.contains(a))
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for atom in &self.atoms {
            for arg in &atom.args {
                arg.collect_vars(&mut out);
            }
        }
        out
    }

    pub fn shared_vars(&self, other: &Goal) -> Vec<String> {
        let theirs = other.vars();
        self.vars()
            .intersection(&theirs)
            .map(|v| v.to_string())
            .collect()
    }

    /// Errors with [`Error::SharedVariables`] unless the goals are renamed apart.
    pub fn ensure_disjoint(&self, other: &Goal) -> Result<()> {
        let shared = self.shared_vars(other);
        if shared.is_empty() {
            Ok(())
        } else {
            Err(Error::SharedVariables(shared))
        }
    }
}

impl PartialEq for Goal {
    /// Set equality; order is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }
}

impl Eq for Goal {}

impl FromIterator<Atom> for Goal {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Goal {
            atoms: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Goal {
    type Item = &'a Atom;
    type IntoIter = indexmap::set::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.atoms.iter()
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            atom.fmt(f)?;
        }
        f.write_str(".")
    }
}

/// Renames the variables of `g2` that also occur in `g1`, so the two goals
/// become variable-disjoint. A clashing `X` becomes `X_2` (or `X_3`, ...),
/// skipping names already used by either goal. Disjoint inputs come back
/// unchanged.
pub fn rename_apart(g1: &Goal, g2: &Goal) -> (Goal, Goal) {
    let shared = g1.shared_vars(g2);
    if shared.is_empty() {
        return (g1.clone(), g2.clone());
    }
    let mut taken: BTreeSet<String> = g1.vars().into_iter().map(String::from).collect();
    taken.extend(g2.vars().into_iter().map(String::from));
    let mut renaming = BTreeMap::new();
    for v in shared {
        let mut n = 2;
        let fresh = loop {
            let candidate = format!("{v}_{n}");
            if !taken.contains(&candidate) {
                break candidate;
            }
            n += 1;
        };
        taken.insert(fresh.clone());
        renaming.insert(v, Term::Var(fresh));
    }
    let renaming = Substitution::from_map(renaming);
    (g1.clone(), g2.apply(&renaming))
}
