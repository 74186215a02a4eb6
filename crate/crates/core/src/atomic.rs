//! Atomic anti-unification operators and the matching edge weight.

use crate::measure::Measure;
use crate::term::{Atom, Term};
use crate::variabilizer::Variabilizer;

/// Outcome of one atomic operator call. `value` is `None` for ⊥; `delta`
/// lists the `(t1, t2, variable)` bindings the call added to the
/// variabilizer, in issue order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicResult {
    pub value: Option<Atom>,
    pub delta: Vec<(Term, Term, Term)>,
}

impl AtomicResult {
    fn bottom() -> Self {
        AtomicResult {
            value: None,
            delta: Vec::new(),
        }
    }

    pub fn is_bottom(&self) -> bool {
        self.value.is_none()
    }
}

fn finish(v: &Variabilizer, cp: crate::variabilizer::Checkpoint, value: Atom) -> AtomicResult {
    let delta = v
        .bindings_since(cp)
        .map(|(a, b, x)| (a.clone(), b.clone(), x.clone()))
        .collect();
    AtomicResult {
        value: Some(value),
        delta,
    }
}

/// Shallow operator: same symbol gives `a(Φ(t1, u1), ..., Φ(tn, un))`.
pub fn au_subseteq(a: &Atom, b: &Atom, v: &mut Variabilizer) -> AtomicResult {
    if !a.same_symbol(b) {
        return AtomicResult::bottom();
    }
    let cp = v.checkpoint();
    let args = a.args.iter().zip(&b.args).map(|(t, u)| v.fresh(t, u)).collect();
    finish(v, cp, Atom::new(a.predicate.clone(), args))
}

/// Variable-only term anti-unification: succeeds only where both terms have
/// the same non-variable structure. Bindings are left in `v` even on ⊥;
/// the atom-level wrapper rolls them back.
pub fn au_preceq_term(t: &Term, u: &Term, v: &mut Variabilizer) -> Option<Term> {
    match (t, u) {
        (Term::Var(_), Term::Var(_)) => Some(v.fresh(t, u)),
        (Term::Const(c), Term::Const(d)) if c == d => Some(t.clone()),
        (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
            let args = xs
                .iter()
                .zip(ys)
                .map(|(x, y)| au_preceq_term(x, y, v))
                .collect::<Option<Vec<_>>>()?;
            Some(Term::App(f.clone(), args))
        }
        _ => None,
    }
}

pub fn au_preceq(a: &Atom, b: &Atom, v: &mut Variabilizer) -> AtomicResult {
    if !a.same_symbol(b) {
        return AtomicResult::bottom();
    }
    let cp = v.checkpoint();
    let args = a
        .args
        .iter()
        .zip(&b.args)
        .map(|(t, u)| au_preceq_term(t, u, v))
        .collect::<Option<Vec<_>>>();
    match args {
        Some(args) => finish(v, cp, Atom::new(a.predicate.clone(), args)),
        None => {
            v.rollback(cp);
            AtomicResult::bottom()
        }
    }
}

/// Deep term anti-unification. Never fails: mismatches become variables.
pub fn dau_term(t: &Term, u: &Term, v: &mut Variabilizer) -> Term {
    match (t, u) {
        (Term::Const(c), Term::Const(d)) if c == d => t.clone(),
        (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => Term::App(
            f.clone(),
            xs.iter().zip(ys).map(|(x, y)| dau_term(x, y, v)).collect(),
        ),
        _ => v.fresh(t, u),
    }
}

pub fn dau_subseteq(a: &Atom, b: &Atom, v: &mut Variabilizer) -> AtomicResult {
    if !a.same_symbol(b) {
        return AtomicResult::bottom();
    }
    let cp = v.checkpoint();
    let args = a.args.iter().zip(&b.args).map(|(t, u)| dau_term(t, u, v)).collect();
    finish(v, cp, Atom::new(a.predicate.clone(), args))
}

/// Edge weight for the msg matching: `-1` when the atoms do not
/// anti-unify, otherwise the τ-value of their deep anti-unification.
pub fn weight(a: &Atom, b: &Atom) -> i64 {
    if !a.same_symbol(b) {
        return -1;
    }
    let mut v = Variabilizer::with_reserved(a.vars().into_iter().chain(b.vars()));
    match dau_subseteq(a, b, &mut v).value {
        Some(g) => g.tau_value() as i64,
        None => -1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::{check_generalization, Relation};
    use crate::goal::Goal;
    use crate::syntax::parse_atom;
    use proptest::prelude::*;

    fn atom(s: &str) -> Atom {
        parse_atom(s).unwrap()
    }

    const ROWS: [(&str, &str); 3] = [
        ("p(X, 5, q(Y, 4))", "p(W, t(Z))"),
        ("p(r(X, 3), t(5))", "p(W, t(Z))"),
        ("p(r(X, 3), t(Y))", "p(r(W, 3), t(Z))"),
    ];

    type Op = fn(&Atom, &Atom, &mut Variabilizer) -> AtomicResult;

    fn run(op: Op, row: usize) -> Option<String> {
        let (a, b) = (atom(ROWS[row].0), atom(ROWS[row].1));
        let mut v = Variabilizer::with_reserved(a.vars().into_iter().chain(b.vars()));
        op(&a, &b, &mut v).value.map(|g| g.to_string())
    }

    #[test]
    fn shallow_table() {
        assert_eq!(run(au_subseteq, 0), None);
        assert_eq!(run(au_subseteq, 1).as_deref(), Some("p(V1, V2)"));
        assert_eq!(run(au_subseteq, 2).as_deref(), Some("p(V1, V2)"));
    }

    #[test]
    fn variable_only_table() {
        assert_eq!(run(au_preceq, 0), None);
        assert_eq!(run(au_preceq, 1), None);
        assert_eq!(run(au_preceq, 2).as_deref(), Some("p(r(V1, 3), t(V2))"));
    }

    #[test]
    fn deep_table() {
        assert_eq!(run(dau_subseteq, 0), None);
        assert_eq!(run(dau_subseteq, 1).as_deref(), Some("p(V1, t(V2))"));
        assert_eq!(run(dau_subseteq, 2).as_deref(), Some("p(r(V1, 3), t(V2))"));
    }

    #[test]
    fn shallow_binds_whole_arguments() {
        let (a, b) = (atom(ROWS[1].0), atom(ROWS[1].1));
        let mut v = Variabilizer::new();
        let r = au_subseteq(&a, &b, &mut v);
        assert_eq!(r.delta.len(), 2);
        assert_eq!(r.delta[0].0, a.args[0]);
        assert_eq!(r.delta[1].1, b.args[1]);
    }

    #[test]
    fn failed_variable_only_leaves_no_bindings() {
        let mut v = Variabilizer::new();
        // X/W would be bound before the t(5)/t(Z) mismatch is seen.
        let r = au_preceq(&atom("p(X, t(5))"), &atom("p(W, t(Z))"), &mut v);
        assert!(r.is_bottom());
        assert!(v.is_empty());
    }

    #[test]
    fn zero_arity_atoms() {
        let mut v = Variabilizer::new();
        assert_eq!(au_preceq(&atom("halt"), &atom("halt"), &mut v).value, Some(atom("halt")));
        assert!(dau_subseteq(&atom("halt"), &atom("stop"), &mut v).is_bottom());
    }

    #[test]
    fn matching_weights() {
        assert_eq!(weight(&atom("p(X, t(4))"), &atom("p(A)")), -1);
        assert_eq!(weight(&atom("r(u(5, s(Y)), 8)"), &atom("r(u(8, s(3)), 5)")), 3);
        assert_eq!(weight(&atom("r(u(8, Z), 5)"), &atom("r(u(8, s(3)), 5)")), 4);
        assert_eq!(weight(&atom("p(a)"), &atom("p(a)")), 2);
    }

    #[test]
    fn weight_does_not_touch_callers_stream() {
        let mut v = Variabilizer::new();
        let a = atom("p(X)");
        weight(&a, &atom("p(Y)"));
        assert_eq!(v.fresh(&Term::var("X"), &Term::var("Y")), Term::var("V1"));
    }

    // Small atoms over a tiny alphabet so that pairs often anti-unify.
    fn arb_term(vars: &'static [&'static str]) -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            proptest::sample::select(vars).prop_map(Term::var),
            (0..3i64).prop_map(Term::int),
            Just(Term::sym("a")),
        ];
        leaf.prop_recursive(2, 8, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|t| Term::app("s", vec![t])),
                (inner.clone(), inner).prop_map(|(x, y)| Term::app("f", vec![x, y])),
            ]
        })
    }

    fn arb_atom(vars: &'static [&'static str]) -> impl Strategy<Value = Atom> {
        (0..2usize, proptest::collection::vec(arb_term(vars), 1..3)).prop_map(|(p, args)| {
            Atom::new(if p == 0 { "p" } else { "q" }, args)
        })
    }

    fn arb_pair() -> impl Strategy<Value = (Atom, Atom)> {
        (arb_atom(&["X", "Y", "Z"]), arb_atom(&["A", "B", "C"]))
    }

    fn apply(op: Op, a: &Atom, b: &Atom) -> Option<Atom> {
        let mut v = Variabilizer::with_reserved(a.vars().into_iter().chain(b.vars()));
        op(a, b, &mut v).value
    }

    fn single(a: &Atom) -> Goal {
        std::iter::once(a.clone()).collect()
    }

    /// Every generalization obtained from the deep one by cutting subterms
    /// back to variables. Each cut position gets its own variable.
    fn cuts(a: &Term, b: &Term, next: &mut usize) -> Vec<Term> {
        let mut fresh = || {
            *next += 1;
            Term::var(format!("G{next}"))
        };
        let mut out = vec![fresh()];
        match (a, b) {
            (Term::Const(c), Term::Const(d)) if c == d => out.push(a.clone()),
            (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
                let mut combos: Vec<Vec<Term>> = vec![Vec::new()];
                for (x, y) in xs.iter().zip(ys) {
                    let options = cuts(x, y, next);
                    combos = combos
                        .into_iter()
                        .flat_map(|c| {
                            options.iter().map(move |o| {
                                let mut c = c.clone();
                                c.push(o.clone());
                                c
                            })
                        })
                        .collect();
                }
                out.extend(combos.into_iter().map(|args| Term::App(f.clone(), args)));
            }
            _ => {}
        }
        out
    }

    proptest! {
        #[test]
        fn results_generalize_both_inputs((a, b) in arb_pair()) {
            for (op, rel) in [
                (au_subseteq as Op, Relation::Subseteq),
                (au_preceq as Op, Relation::Preceq),
                (dau_subseteq as Op, Relation::Subseteq),
            ] {
                if let Some(g) = apply(op, &a, &b) {
                    prop_assert!(check_generalization(&single(&g), &single(&a), rel).is_some());
                    prop_assert!(check_generalization(&single(&g), &single(&b), rel).is_some());
                }
            }
        }

        #[test]
        fn symmetric_up_to_renaming((a, b) in arb_pair()) {
            for op in [au_subseteq as Op, au_preceq as Op, dau_subseteq as Op] {
                match (apply(op, &a, &b), apply(op, &b, &a)) {
                    (Some(x), Some(y)) => prop_assert!(x.is_variant(&y), "{x} vs {y}"),
                    (None, None) => {}
                    other => prop_assert!(false, "asymmetric: {other:?}"),
                }
            }
        }

        #[test]
        fn deep_and_shallow_agree_on_bottom((a, b) in arb_pair()) {
            let shallow = apply(au_subseteq, &a, &b);
            let deep = apply(dau_subseteq, &a, &b);
            prop_assert_eq!(shallow.is_some(), deep.is_some());
            if let (Some(s), Some(d)) = (shallow, deep) {
                prop_assert!(d.tau_value() >= s.tau_value());
            }
        }

        #[test]
        fn variable_only_needs_same_skeleton((a, b) in arb_pair()) {
            let r = apply(au_preceq, &a, &b);
            prop_assert_eq!(r.is_some(), a.same_skeleton(&b));
            if a.is_variant(&b) {
                let g = r.unwrap();
                prop_assert_eq!(g.tau_value(), a.tau_value());
                prop_assert_eq!(g.tau_value(), b.tau_value());
            }
        }

        #[test]
        fn deep_is_most_specific((a, b) in arb_pair()) {
            let Some(deep) = apply(dau_subseteq, &a, &b) else {
                return Ok(());
            };
            let mut next = 0;
            let mut combos: Vec<Vec<Term>> = vec![Vec::new()];
            for (x, y) in a.args.iter().zip(&b.args) {
                let options = cuts(x, y, &mut next);
                combos = combos
                    .into_iter()
                    .flat_map(|c| options.iter().map(move |o| { let mut c = c.clone(); c.push(o.clone()); c }))
                    .collect();
            }
            for args in combos {
                let g = Atom::new(a.predicate.clone(), args);
                prop_assert!(check_generalization(&single(&g), &single(&a), Relation::Subseteq).is_some());
                prop_assert!(check_generalization(&single(&g), &single(&b), Relation::Subseteq).is_some());
                prop_assert!(deep.tau_value() >= g.tau_value());
            }
        }
    }
}
