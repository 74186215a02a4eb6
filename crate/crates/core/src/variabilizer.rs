//! Fresh-variable source for anti-unification.
//!
//! A [`Variabilizer`] maps ordered term pairs to generalization variables.
//! It satisfies three conditions:
//!
//! 1. issued variables never belong to the reserved set;
//! 2. distinct pairs never receive the same variable;
//! 3. the result is a constant exactly when both inputs are that same
//!    constant.
//!
//! Names are `V1, V2, ...` in first-request order, skipping reserved names.

use std::collections::HashSet;

use indexmap::IndexMap;

use crate::goal::Goal;
use crate::subst::Substitution;
use crate::term::Term;

#[derive(Debug, Clone, Default)]
pub struct Variabilizer {
    reserved: HashSet<String>,
    memo: IndexMap<(Term, Term), Term>,
    counter: usize,
}

/// Saved state for [`Variabilizer::rollback`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    memo_len: usize,
    counter: usize,
}

impl Variabilizer {
    pub fn new() -> Self {
        Variabilizer::default()
    }

    pub fn with_reserved<I, S>(reserved: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Variabilizer {
            reserved: reserved.into_iter().map(Into::into).collect(),
            ..Variabilizer::default()
        }
    }

    /// Reserves every variable of both goals.
    pub fn for_goals(g1: &Goal, g2: &Goal) -> Self {
        Variabilizer::with_reserved(g1.vars().into_iter().chain(g2.vars()))
    }

    pub fn reserve(&mut self, name: impl Into<String>) {
        self.reserved.insert(name.into());
    }

    pub fn is_reserved(&self, name: &str) -> bool {
        self.reserved.contains(name)
    }

    pub fn fresh(&mut self, t1: &Term, t2: &Term) -> Term {
        if let (Term::Const(a), Term::Const(b)) = (t1, t2) {
            if a == b {
                return t1.clone();
            }
        }
        if let Some(v) = self.memo.get(&(t1.clone(), t2.clone())) {
            return v.clone();
        }
        let name = loop {
            self.counter += 1;
            let candidate = format!("V{}", self.counter);
            if !self.reserved.contains(&candidate) {
                break candidate;
            }
        };
        let v = Term::Var(name);
        self.memo.insert((t1.clone(), t2.clone()), v.clone());
        v
    }

    /// The variable already issued for a pair, if any.
    pub fn lookup(&self, t1: &Term, t2: &Term) -> Option<&Term> {
        self.memo.get(&(t1.clone(), t2.clone()))
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            memo_len: self.memo.len(),
            counter: self.counter,
        }
    }

    /// Forgets every binding issued after `cp`.
    pub fn rollback(&mut self, cp: Checkpoint) {
        self.memo.truncate(cp.memo_len);
        self.counter = cp.counter;
    }

    /// Issued bindings in issue order.
    pub fn bindings(&self) -> impl Iterator<Item = (&Term, &Term, &Term)> {
        self.memo.iter().map(|((a, b), v)| (a, b, v))
    }

    /// Bindings issued after `cp`, in issue order.
    pub fn bindings_since(&self, cp: Checkpoint) -> impl Iterator<Item = (&Term, &Term, &Term)> {
        self.bindings().skip(cp.memo_len)
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Witness substitutions `(θ1, θ2)` sending every issued variable to the
    /// left and right term of its pair.
    pub fn witnesses(&self) -> (Substitution, Substitution) {
        let mut left = Substitution::new();
        let mut right = Substitution::new();
        for ((a, b), v) in &self.memo {
            if let Term::Var(name) = v {
                left.bind(name.clone(), a.clone());
                right.bind(name.clone(), b.clone());
            }
        }
        (left, right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identical_constants_pass_through() {
        let mut v = Variabilizer::new();
        assert_eq!(v.fresh(&Term::int(5), &Term::int(5)), Term::int(5));
        assert_eq!(v.fresh(&Term::sym("a"), &Term::sym("a")), Term::sym("a"));
        assert!(v.is_empty());
    }

    #[test]
    fn memoized_per_ordered_pair() {
        let mut v = Variabilizer::new();
        let (x, y, z) = (Term::var("X"), Term::var("Y"), Term::var("Z"));
        let a = v.fresh(&x, &y);
        assert_eq!(v.fresh(&x, &y), a);
        assert_ne!(v.fresh(&x, &z), a);
        assert_ne!(v.fresh(&y, &x), a);
    }

    #[test]
    fn same_variable_pair_gets_fresh_variable() {
        let mut v = Variabilizer::new();
        let x = Term::var("X");
        assert_eq!(v.fresh(&x, &x), Term::var("V1"));
    }

    #[test]
    fn constant_against_variable_is_fresh() {
        let mut v = Variabilizer::new();
        assert!(v.fresh(&Term::int(5), &Term::var("Z")).is_var());
    }

    #[test]
    fn reserved_names_are_skipped() {
        let mut v = Variabilizer::with_reserved(["V1", "V3"]);
        assert_eq!(v.fresh(&Term::var("A"), &Term::var("B")), Term::var("V2"));
        assert_eq!(v.fresh(&Term::var("A"), &Term::var("C")), Term::var("V4"));
    }

    #[test]
    fn rollback_forgets_staged_pairs() {
        let mut v = Variabilizer::new();
        let first = v.fresh(&Term::var("A"), &Term::var("B"));
        let cp = v.checkpoint();
        v.fresh(&Term::var("C"), &Term::var("D"));
        v.rollback(cp);
        assert_eq!(v.len(), 1);
        assert!(v.lookup(&Term::var("C"), &Term::var("D")).is_none());
        assert_eq!(v.fresh(&Term::var("A"), &Term::var("B")), first);
        assert_eq!(v.fresh(&Term::var("E"), &Term::var("F")), Term::var("V2"));
    }

    fn small_term() -> impl Strategy<Value = Term> {
        prop_oneof![
            (0..6u8).prop_map(|i| Term::var(format!("X{i}"))),
            (0..3i64).prop_map(Term::int),
            (0..3u8).prop_map(|i| Term::sym(format!("c{i}"))),
            (0..4u8).prop_map(|i| Term::app("f", vec![Term::var(format!("V{i}"))])),
        ]
    }

    proptest! {
        #[test]
        fn variabilization_conditions(
            reqs in proptest::collection::vec((small_term(), small_term()), 1..200),
            reserved in proptest::collection::hash_set((1..20usize).prop_map(|i| format!("V{i}")), 0..8),
        ) {
            let mut v = Variabilizer::with_reserved(reserved.iter().cloned());
            let mut seen: std::collections::HashMap<(Term, Term), Term> = Default::default();
            let mut owner: std::collections::HashMap<Term, (Term, Term)> = Default::default();
            for (a, b) in reqs {
                let out = v.fresh(&a, &b);
                // functionality
                if let Some(prev) = seen.get(&(a.clone(), b.clone())) {
                    prop_assert_eq!(prev, &out);
                }
                seen.insert((a.clone(), b.clone()), out.clone());
                match &out {
                    Term::Var(name) => {
                        prop_assert!(!reserved.contains(name));
                        let same_const = matches!((&a, &b), (Term::Const(x), Term::Const(y)) if x == y);
                        prop_assert!(!same_const);
                        if let Some(pair) = owner.get(&out) {
                            prop_assert_eq!(pair, &(a.clone(), b.clone()));
                        }
                        owner.insert(out.clone(), (a, b));
                    }
                    other => {
                        prop_assert_eq!(other, &a);
                        prop_assert_eq!(&a, &b);
                        prop_assert!(matches!(a, Term::Const(_)));
                    }
                }
            }
        }
    }
}
