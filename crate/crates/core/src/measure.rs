//! Size measures: the τ multiset (atoms and non-variable term occurrences),
//! `ter` (the same, variables included) and variable sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::goal::Goal;
use crate::term::{Atom, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TauEntry {
    Atom(Atom),
    Term(Term),
}

impl fmt::Display for TauEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TauEntry::Atom(a) => a.fmt(f),
            TauEntry::Term(t) => t.fmt(f),
        }
    }
}

/// A multiset kept as a pre-order occurrence list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TauMultiset {
    pub entries: Vec<TauEntry>,
}

impl TauMultiset {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, entry: &TauEntry) -> usize {
        self.entries.iter().filter(|e| *e == entry).count()
    }
}

pub trait Measure {
    fn for_each_entry(&self, visit: &mut dyn FnMut(TauEntryRef<'_>));

    fn tau(&self) -> TauMultiset {
        let mut entries = Vec::new();
        self.for_each_entry(&mut |e| match e {
            TauEntryRef::Term(Term::Var(_)) => {}
            other => entries.push(other.to_owned()),
        });
        TauMultiset { entries }
    }

    fn tau_value(&self) -> usize {
        let mut n = 0;
        self.for_each_entry(&mut |e| {
            if !matches!(e, TauEntryRef::Term(Term::Var(_))) {
                n += 1;
            }
        });
        n
    }

    fn ter(&self) -> TauMultiset {
        let mut entries = Vec::new();
        self.for_each_entry(&mut |e| entries.push(e.to_owned()));
        TauMultiset { entries }
    }

    fn ter_len(&self) -> usize {
        let mut n = 0;
        self.for_each_entry(&mut |_| n += 1);
        n
    }

    fn var_set(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.for_each_entry(&mut |e| {
            if let TauEntryRef::Term(Term::Var(v)) = e {
                out.insert(v.clone());
            }
        });
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub enum TauEntryRef<'a> {
    Atom(&'a Atom),
    Term(&'a Term),
}

impl TauEntryRef<'_> {
    fn to_owned(self) -> TauEntry {
        match self {
            TauEntryRef::Atom(a) => TauEntry::Atom(a.clone()),
            TauEntryRef::Term(t) => TauEntry::Term(t.clone()),
        }
    }
}

impl Measure for Term {
    fn for_each_entry(&self, visit: &mut dyn FnMut(TauEntryRef<'_>)) {
        self.walk(&mut |t| visit(TauEntryRef::Term(t)));
    }
}

impl Measure for Atom {
    fn for_each_entry(&self, visit: &mut dyn FnMut(TauEntryRef<'_>)) {
        visit(TauEntryRef::Atom(self));
        for arg in &self.args {
            arg.for_each_entry(visit);
        }
    }
}

impl Measure for Goal {
    fn for_each_entry(&self, visit: &mut dyn FnMut(TauEntryRef<'_>)) {
        for atom in self {
            atom.for_each_entry(visit);
        }
    }
}
