//! Anti-unification of unordered logic-programming goals.
//!
//! Goals are sets of atoms. The crate computes largest and most specific
//! common generalizations under plain and variable-only substitution, a
//! k-swap stable approximation of the injective largest generalization, and
//! exact exponential solvers for the hard variants on small inputs.

pub mod error;
pub mod term;
pub mod goal;
pub mod subst;
pub mod measure;
pub mod variabilizer;
pub mod syntax;
pub mod check;
pub mod atomic;
pub mod matching;
pub mod generalize;
pub mod generate;
pub mod kswap;
pub mod oracles;

pub use atomic::{au_preceq, au_subseteq, dau_subseteq, weight, AtomicResult};
pub use check::{are_variants, check_generalization, is_witness, Relation};
pub use error::{Error, Result, Span};
pub use generalize::{build_weight_matrix, greedy_lcg, msg, msg_mwm, GenOutcome, GenRelation};
pub use generate::{generate_goals, GeneratorConfig};
pub use goal::{rename_apart, Goal};
pub use kswap::{gen_pairs, kswap_generalize, Pairing, PairingSpace, Swap};
pub use matching::{max_weight_matching, Matching, WeightMatrix};
pub use measure::{Measure, TauEntry, TauMultiset};
pub use oracles::{
    brute_lcg_inj, inj_subsumes, min_cover_size, min_var_generalization, scp_to_goals, MinVarMode, MinVarOutcome,
    OracleBounds, ScpInstance,
};
pub use subst::{Substitutable, Substitution};
pub use syntax::{parse_atom, parse_goal, parse_goals, parse_term, GoalDocument, NamedGoal};
pub use term::{Atom, Constant, Term};
pub use variabilizer::Variabilizer;
