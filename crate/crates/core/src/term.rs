//! Terms and atoms.
//!
//! Variables, constants and functor applications are kept in disjoint
//! lexical classes: variables start with an uppercase letter or `_`,
//! everything else is a constant or a functor. Zero-arity symbols are
//! always [`Term::Const`]; a [`Term::App`] has at least one argument.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    Int(i64),
    Sym(String),
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Int(n) => write!(f, "{n}"),
            Constant::Sym(s) => f.write_str(&syntax::quote_functor(s)),
        }
    }
}

impl From<i64> for Constant {
    fn from(n: i64) -> Self {
        Constant::Int(n)
    }
}

impl From<&str> for Constant {
    fn from(s: &str) -> Self {
        Constant::Sym(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(Constant),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn int(n: i64) -> Self {
        Term::Const(Constant::Int(n))
    }

    pub fn sym(name: impl Into<String>) -> Self {
        Term::Const(Constant::Sym(name.into()))
    }

    /// Functor application. An empty argument list yields a constant.
    pub fn app(functor: impl Into<String>, args: Vec<Term>) -> Self {
        let functor = functor.into();
        if args.is_empty() {
            Term::Const(Constant::Sym(functor))
        } else {
            Term::App(functor, args)
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }

    /// Functor name and arity for non-variable terms; constants have arity 0.
    pub fn head(&self) -> Option<(&str, usize)> {
        match self {
            Term::Var(_) => None,
            Term::Const(Constant::Sym(s)) => Some((s, 0)),
            Term::Const(Constant::Int(_)) => None,
            Term::App(f, args) => Some((f, args.len())),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::App(_, args) => args,
            _ => &[],
        }
    }

    /// Visits every subterm occurrence in pre-order, including `self`.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Term)) {
        visit(self);
        for arg in self.args() {
            arg.walk(visit);
        }
    }

    pub fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        self.walk(&mut |t| {
            if let Term::Var(v) = t {
                out.insert(v);
            }
        });
    }

    /// Variable occurrences in pre-order, with repetitions.
    pub fn var_occurrences<'a>(&'a self, out: &mut Vec<&'a str>) {
        self.walk(&mut |t| {
            if let Term::Var(v) = t {
                out.push(v);
            }
        });
    }

    pub fn is_ground(&self) -> bool {
        let mut ground = true;
        self.walk(&mut |t| ground &= !t.is_var());
        ground
    }

    /// True when both terms have the same non-variable structure, i.e. they
    /// differ only in which variables occupy the variable positions.
    pub fn same_skeleton(&self, other: &Term) -> bool {
        match (self, other) {
            (Term::Var(_), Term::Var(_)) => true,
            (Term::Const(a), Term::Const(b)) => a == b,
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.same_skeleton(y))
            }
            _ => false,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => c.fmt(f),
            Term::App(name, args) => {
                f.write_str(&syntax::quote_functor(name))?;
                write_args(f, args)
            }
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    f.write_str("(")?;
    for (i, arg) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        fmt::Display::fmt(arg, f)?;
    }
    f.write_str(")")
}

/// A predicate applied to terms. The predicate symbol is the pair
/// `(predicate, args.len())`, so `p/1` and `p/2` are unrelated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn same_symbol(&self, other: &Atom) -> bool {
        self.predicate == other.predicate && self.arity() == other.arity()
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for arg in &self.args {
            arg.collect_vars(&mut out);
        }
        out
    }

    pub fn var_occurrences(&self) -> Vec<&str> {
        let mut out = Vec::new();
        for arg in &self.args {
            arg.var_occurrences(&mut out);
        }
        out
    }

    pub fn same_skeleton(&self, other: &Atom) -> bool {
        self.same_symbol(other)
            && self
                .args
                .iter()
                .zip(&other.args)
                .all(|(a, b)| a.same_skeleton(b))
    }

    /// The bijective variable correspondence making `self` and `other`
    /// variants, listed by first occurrence in `self`.
    pub fn variant_renaming(&self, other: &Atom) -> Option<Vec<(String, String)>> {
        if !self.same_skeleton(other) {
            return None;
        }
        let left = self.var_occurrences();
        let right = other.var_occurrences();
        let mut links: Vec<(String, String)> = Vec::new();
        for (x, y) in left.iter().zip(&right) {
            match links.iter().find(|(a, b)| a == x || b == y) {
                Some((a, b)) if a == x && b == y => {}
                Some(_) => return None,
                None => links.push((x.to_string(), y.to_string())),
            }
        }
        Some(links)
    }

    pub fn is_variant(&self, other: &Atom) -> bool {
        self.variant_renaming(other).is_some()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::quote_predicate(&self.predicate))?;
        if self.args.is_empty() {
            Ok(())
        } else {
            write_args(f, &self.args)
        }
    }
}
