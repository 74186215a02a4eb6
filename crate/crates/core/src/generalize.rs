//! Goal-level generalization: the greedy largest common generalization and
//! the most specific one through maximum-weight matching.

use crate::atomic::{au_preceq, au_subseteq, dau_subseteq, weight, AtomicResult};
use crate::check::{is_witness, Relation};
use crate::error::Result;
use crate::goal::Goal;
use crate::matching::{max_weight_matching, WeightMatrix};
use crate::subst::Substitution;
use crate::term::Atom;
use crate::variabilizer::Variabilizer;

/// The two non-injective relations the polynomial algorithms handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenRelation {
    Subseteq,
    Preceq,
}

impl From<GenRelation> for Relation {
    fn from(r: GenRelation) -> Relation {
        match r {
            GenRelation::Subseteq => Relation::Subseteq,
            GenRelation::Preceq => Relation::Preceq,
        }
    }
}

/// A common generalization with its provenance. `pairing[i]` holds the
/// indices in `g1` and `g2` of the atoms that produced `goal`'s i-th atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenOutcome {
    pub goal: Goal,
    pub pairing: Vec<(usize, usize)>,
    pub theta1: Substitution,
    pub theta2: Substitution,
}

impl GenOutcome {
    pub fn empty() -> Self {
        GenOutcome {
            goal: Goal::new(),
            pairing: Vec::new(),
            theta1: Substitution::new(),
            theta2: Substitution::new(),
        }
    }

    /// Assembles an outcome from generated atoms; the witnesses are read off
    /// the variabilizer and restricted to the goal's variables.
    pub(crate) fn assemble(atoms: Vec<(Atom, (usize, usize))>, v: &Variabilizer) -> Self {
        let mut goal = Goal::new();
        let mut pairing = Vec::with_capacity(atoms.len());
        for (atom, pair) in atoms {
            let fresh = goal.insert(atom);
            debug_assert!(fresh, "distinct pairs produce distinct atoms");
            pairing.push(pair);
        }
        let (theta1, theta2) = v.witnesses();
        let vars = goal.vars();
        GenOutcome {
            theta1: theta1.restrict(vars.iter().copied()),
            theta2: theta2.restrict(vars.iter().copied()),
            goal,
            pairing,
        }
    }

    pub fn len(&self) -> usize {
        self.goal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.goal.is_empty()
    }

    /// Checks both witnesses under `relation` and that the pairing is a
    /// matching.
    pub fn verify(&self, g1: &Goal, g2: &Goal, relation: Relation) -> bool {
        let mut left = std::collections::HashSet::new();
        let mut right = std::collections::HashSet::new();
        let matching = self.pairing.len() == self.goal.len()
            && self
                .pairing
                .iter()
                .all(|&(i, j)| i < g1.len() && j < g2.len() && left.insert(i) && right.insert(j));
        matching
            && is_witness(&self.goal, g1, &self.theta1, relation)
            && is_witness(&self.goal, g2, &self.theta2, relation)
    }
}

/// Greedy scan: each atom of `g1` in order takes the first unused atom of
/// `g2` it anti-unifies with. Under `Preceq` the result is also most
/// specific, since every largest variable-only generalization is.
pub fn greedy_lcg(g1: &Goal, g2: &Goal, relation: GenRelation, v: &mut Variabilizer) -> Result<GenOutcome> {
    g1.ensure_disjoint(g2)?;
    let op: fn(&Atom, &Atom, &mut Variabilizer) -> AtomicResult = match relation {
        GenRelation::Subseteq => au_subseteq,
        GenRelation::Preceq => au_preceq,
    };
    let mut used = vec![false; g2.len()];
    let mut out = Vec::new();
    for (i, a1) in g1.atoms().enumerate() {
        for (j, a2) in g2.atoms().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(g) = op(a1, a2, v).value {
                used[j] = true;
                out.push((g, (i, j)));
                break;
            }
        }
    }
    Ok(GenOutcome::assemble(out, v))
}

pub fn build_weight_matrix(g1: &Goal, g2: &Goal) -> Result<WeightMatrix> {
    g1.ensure_disjoint(g2)?;
    let mut m = WeightMatrix::new(g1.len(), g2.len(), -1);
    for (i, a1) in g1.atoms().enumerate() {
        for (j, a2) in g2.atoms().enumerate() {
            m.set(i, j, weight(a1, a2));
        }
    }
    Ok(m)
}

/// Most specific generalization under `⊑`: deep anti-unification of the
/// pairs selected by a maximum-weight matching.
pub fn msg_mwm(g1: &Goal, g2: &Goal, v: &mut Variabilizer) -> Result<GenOutcome> {
    let m = build_weight_matrix(g1, g2)?;
    let matching = max_weight_matching(&m);
    let atoms = matching
        .pairs
        .into_iter()
        .map(|(i, j)| {
            let a1 = g1.get(i).expect("row index");
            let a2 = g2.get(j).expect("column index");
            let g = dau_subseteq(a1, a2, v).value.expect("matched pairs anti-unify");
            (g, (i, j))
        })
        .collect();
    Ok(GenOutcome::assemble(atoms, v))
}

/// Most specific generalization for either relation.
pub fn msg(g1: &Goal, g2: &Goal, relation: GenRelation, v: &mut Variabilizer) -> Result<GenOutcome> {
    match relation {
        GenRelation::Subseteq => msg_mwm(g1, g2, v),
        GenRelation::Preceq => greedy_lcg(g1, g2, GenRelation::Preceq, v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::are_variants;
    use crate::error::Error;
    use crate::measure::Measure;
    use crate::syntax::parse_goal;

    fn goal(s: &str) -> Goal {
        parse_goal(s).unwrap()
    }

    fn fresh(g1: &Goal, g2: &Goal) -> Variabilizer {
        Variabilizer::for_goals(g1, g2)
    }

    #[test]
    fn greedy_sizes_per_relation() {
        let g1 = goal("p(t(X), Y), q(3, f(X)).");
        let g2 = goal("p(5, Z), q(3, f(Z)).");
        let sub = greedy_lcg(&g1, &g2, GenRelation::Subseteq, &mut fresh(&g1, &g2)).unwrap();
        assert_eq!(sub.len(), 2);
        assert!(sub.verify(&g1, &g2, Relation::Subseteq));
        let pre = greedy_lcg(&g1, &g2, GenRelation::Preceq, &mut fresh(&g1, &g2)).unwrap();
        assert_eq!(pre.len(), 1);
        assert!(are_variants(&pre.goal, &goal("q(3, f(V1)).")));
        assert!(pre.verify(&g1, &g2, Relation::Preceq));
    }

    #[test]
    fn empty_side_gives_empty_goal() {
        let g1 = goal("p(X).");
        let out = greedy_lcg(&g1, &Goal::new(), GenRelation::Subseteq, &mut Variabilizer::new()).unwrap();
        assert!(out.is_empty());
        assert!(msg_mwm(&Goal::new(), &g1, &mut Variabilizer::new()).unwrap().is_empty());
    }

    #[test]
    fn shared_variables_rejected() {
        let g = goal("p(X).");
        let err = msg_mwm(&g, &g, &mut Variabilizer::new()).unwrap_err();
        assert_eq!(err, Error::SharedVariables(vec!["X".into()]));
    }

    #[test]
    fn weight_matrix_of_matching_example() {
        let g1 = goal("p(X, t(4)), r(u(5, s(Y)), 8), r(u(8, Z), 5).");
        let g2 = goal("p(A), r(u(8, s(3)), 5).");
        let m = build_weight_matrix(&g1, &g2).unwrap();
        assert_eq!(m.to_rows(), vec![vec![-1, -1], vec![-1, 3], vec![-1, 4]]);
        let out = msg_mwm(&g1, &g2, &mut fresh(&g1, &g2)).unwrap();
        assert_eq!(out.goal.to_string(), "r(u(8, V1), 5).");
        assert_eq!(out.pairing, vec![(2, 1)]);
        assert!(out.verify(&g1, &g2, Relation::Subseteq));
    }

    #[test]
    fn singleton_weights() {
        let m = build_weight_matrix(&goal("p(a)."), &goal("p(a).")).unwrap();
        assert_eq!(m.to_rows(), vec![vec![2]]);
        let none = build_weight_matrix(&goal("p(X)."), &goal("q(Y).")).unwrap();
        assert_eq!(none.to_rows(), vec![vec![-1]]);
    }

    #[test]
    fn msg_keeps_deep_structure() {
        let g1 = goal("p(t(X), Y), q(3, f(X)).");
        let g2 = goal("p(5, Z), q(3, f(Z)).");
        let out = msg_mwm(&g1, &g2, &mut fresh(&g1, &g2)).unwrap();
        assert_eq!(out.goal.tau_value(), 4);
        assert!(are_variants(&out.goal, &goal("p(V1, V2), q(3, f(V3)).")));
        assert!(out.verify(&g1, &g2, Relation::Subseteq));
    }

    #[test]
    fn self_generalization_is_a_variant() {
        let g1 = goal("p(X, f(Y)), q(Y, 3), r(a).");
        let g2 = goal("p(A, f(B)), q(B, 3), r(a).");
        let out = msg_mwm(&g1, &g2, &mut fresh(&g1, &g2)).unwrap();
        assert!(are_variants(&out.goal, &g1));
        assert_eq!(out.goal.tau_value(), g1.tau_value());
    }

    #[test]
    fn greedy_may_lose_specificity() {
        let g1 = goal("a(Y, Z), a(t(1), X).");
        let g2 = goal("a(t(1), E).");
        let greedy = greedy_lcg(&g1, &g2, GenRelation::Subseteq, &mut fresh(&g1, &g2)).unwrap();
        let best = msg_mwm(&g1, &g2, &mut fresh(&g1, &g2)).unwrap();
        assert_eq!(greedy.goal.tau_value(), 1);
        assert_eq!(best.goal.tau_value(), 3);
        let pre = msg(&g1, &g2, GenRelation::Preceq, &mut fresh(&g1, &g2)).unwrap();
        assert!(are_variants(&pre.goal, &goal("a(t(1), V1).")));
    }
}
