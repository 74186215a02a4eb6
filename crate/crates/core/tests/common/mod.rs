//! Independent brute-force oracles and instance builders shared by the
//! integration suites. Nothing here calls the crate's search code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use antiunify::{
    generate_goals, parse_goal, Atom, Constant, GeneratorConfig, Goal, Relation, Substitution, Term,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn goal(s: &str) -> Goal {
    parse_goal(s).unwrap_or_else(|e| panic!("bad goal {s:?}: {e}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small goal pairs: at most six atoms, arity at most three.
pub fn small_pair(seed: u64) -> (Goal, Goal) {
    let mut r = rng(seed ^ 0x5eed);
    let cfg = GeneratorConfig {
        atoms: 1..=6,
        arity: 1..=3,
        predicates: r.gen_range(1..=3),
        depth: 0..=r.gen_range(0..=2),
        var_pool: 0,
        sharing: r.gen_range(0.0..0.6),
        overlap: r.gen_range(0.3..0.9),
        seed,
    };
    generate_goals(&cfg).expect("small pair")
}

/// Medium goal pairs for the quality comparison: eight to twelve flat
/// atoms over two predicates, dense enough that a single greedy pass
/// regularly falls short.
pub fn medium_pair(seed: u64) -> (Goal, Goal) {
    let cfg = GeneratorConfig {
        atoms: 8..=12,
        arity: 1..=3,
        predicates: 2,
        depth: 0..=0,
        var_pool: 0,
        sharing: 0.6,
        overlap: 0.9,
        seed,
    };
    generate_goals(&cfg).expect("medium pair")
}

// ---- matchings -----------------------------------------------------------

/// Every one-to-one matching between the atoms, as `(i, j)` lists, using
/// only pairs accepted by `ok`. Includes the empty matching.
pub fn matchings(g1: &Goal, g2: &Goal, ok: impl Fn(&Atom, &Atom) -> bool) -> Vec<Vec<(usize, usize)>> {
    let a1: Vec<&Atom> = g1.atoms().collect();
    let a2: Vec<&Atom> = g2.atoms().collect();
    let mut out = Vec::new();
    let mut used = vec![false; a2.len()];
    let mut cur = Vec::new();
    fn go(
        i: usize,
        a1: &[&Atom],
        a2: &[&Atom],
        ok: &dyn Fn(&Atom, &Atom) -> bool,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if i == a1.len() {
            out.push(cur.clone());
            return;
        }
        go(i + 1, a1, a2, ok, used, cur, out);
        for j in 0..a2.len() {
            if !used[j] && ok(a1[i], a2[j]) {
                used[j] = true;
                cur.push((i, j));
                go(i + 1, a1, a2, ok, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    go(0, &a1, &a2, &ok, &mut used, &mut cur, &mut out);
    out
}

pub fn same_symbol(a: &Atom, b: &Atom) -> bool {
    a.predicate == b.predicate && a.args.len() == b.args.len()
}

/// Equal up to the names of variables, occurrences taken independently.
pub fn same_shape(a: &Atom, b: &Atom) -> bool {
    fn term(s: &Term, t: &Term) -> bool {
        match (s, t) {
            (Term::Var(_), Term::Var(_)) => true,
            (Term::Const(x), Term::Const(y)) => x == y,
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term(x, y))
            }
            _ => false,
        }
    }
    same_symbol(a, b) && a.args.iter().zip(&b.args).all(|(s, t)| term(s, t))
}

/// Size of a largest common generalization under a non-injective relation:
/// the largest matching of pairs that anti-unify.
pub fn brute_lcg_size(g1: &Goal, g2: &Goal, rel: Relation) -> usize {
    let ok: fn(&Atom, &Atom) -> bool = match rel {
        Relation::Subseteq => same_symbol,
        Relation::Preceq => same_shape,
        _ => panic!("injective relations use the pairing oracle"),
    };
    matchings(g1, g2, ok).iter().map(Vec::len).max().unwrap_or(0)
}

/// τ-value of the deepest common generalization of two terms.
pub fn deep_tau(s: &Term, t: &Term) -> usize {
    match (s, t) {
        (Term::Const(x), Term::Const(y)) if x == y => 1,
        (Term::App(f, xs), Term::App(g, ys)) if f == g && xs.len() == ys.len() => {
            1 + xs.iter().zip(ys).map(|(x, y)| deep_tau(x, y)).sum::<usize>()
        }
        _ => 0,
    }
}

pub fn deep_tau_atoms(a: &Atom, b: &Atom) -> usize {
    1 + a.args.iter().zip(&b.args).map(|(s, t)| deep_tau(s, t)).sum::<usize>()
}

/// τ-value of a most specific `⊑` common generalization.
pub fn brute_msg_tau(g1: &Goal, g2: &Goal) -> usize {
    let a1: Vec<&Atom> = g1.atoms().collect();
    let a2: Vec<&Atom> = g2.atoms().collect();
    matchings(g1, g2, same_symbol)
        .iter()
        .map(|m| m.iter().map(|&(i, j)| deep_tau_atoms(a1[i], a2[j])).sum())
        .max()
        .unwrap_or(0)
}

// ---- injective variable pairings -----------------------------------------

/// The bijective variable renaming turning `a` into `b`, if any.
pub fn variant_map(a: &Atom, b: &Atom) -> Option<BTreeMap<String, String>> {
    fn term(s: &Term, t: &Term, fwd: &mut BTreeMap<String, String>, bwd: &mut BTreeMap<String, String>) -> bool {
        match (s, t) {
            (Term::Var(x), Term::Var(y)) => {
                let f = fwd.entry(x.clone()).or_insert_with(|| y.clone()) == y;
                let b = bwd.entry(y.clone()).or_insert_with(|| x.clone()) == x;
                f && b
            }
            (Term::Const(x), Term::Const(y)) => x == y,
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term(x, y, fwd, bwd))
            }
            _ => false,
        }
    }
    if !same_symbol(a, b) {
        return None;
    }
    let (mut fwd, mut bwd) = (BTreeMap::new(), BTreeMap::new());
    a.args
        .iter()
        .zip(&b.args)
        .all(|(s, t)| term(s, t, &mut fwd, &mut bwd))
        .then_some(fwd)
}

/// Every pairing: a matching of variant atoms whose renamings agree on a
/// single bijection. Sorted lists of `(i, j)`.
pub fn all_pairings(g1: &Goal, g2: &Goal) -> Vec<Vec<(usize, usize)>> {
    let a1: Vec<&Atom> = g1.atoms().collect();
    let a2: Vec<&Atom> = g2.atoms().collect();
    let mut cands = Vec::new();
    for (i, x) in a1.iter().enumerate() {
        for (j, y) in a2.iter().enumerate() {
            if let Some(m) = variant_map(x, y) {
                cands.push(((i, j), m));
            }
        }
    }
    let mut out = Vec::new();
    fn go(
        from: usize,
        cands: &[((usize, usize), BTreeMap<String, String>)],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        out.push(cur.iter().map(|&c| cands[c].0).collect());
        for c in from..cands.len() {
            if consistent(cands, cur, c) {
                cur.push(c);
                go(c + 1, cands, cur, out);
                cur.pop();
            }
        }
    }
    fn consistent(cands: &[((usize, usize), BTreeMap<String, String>)], cur: &[usize], c: usize) -> bool {
        let ((i, j), m) = &cands[c];
        cur.iter().all(|&d| {
            let ((i2, j2), m2) = &cands[d];
            i != i2
                && j != j2
                && m.iter().all(|(x, y)| m2.get(x).map_or(true, |y2| y2 == y))
                && m.iter().all(|(x, y)| m2.iter().all(|(x2, y2)| y2 != y || x2 == x))
        })
    }
    go(0, &cands, &mut Vec::new(), &mut out);
    out
}

pub fn brute_pairing_size(g1: &Goal, g2: &Goal) -> usize {
    all_pairings(g1, g2).iter().map(Vec::len).max().unwrap_or(0)
}

/// No pairing keeping at least `|pi| - k` pairs of `pi` is larger than `pi`.
pub fn swap_stable(pairings: &[Vec<(usize, usize)>], pi: &[(usize, usize)], k: usize) -> bool {
    let keep = pi.len().saturating_sub(k);
    pairings
        .iter()
        .filter(|q| q.len() > pi.len())
        .all(|q| q.iter().filter(|p| pi.contains(p)).count() < keep)
}

// ---- set cover -----------------------------------------------------------

#[derive(Debug, Clone)]
pub struct RandomScp {
    pub universe: Vec<String>,
    pub sets: Vec<Vec<String>>,
}

/// A coverable instance with `|U| <= 6` and `|S| <= 5`.
pub fn random_scp(seed: u64) -> RandomScp {
    let mut r = rng(seed ^ 0x5c9);
    let n = r.gen_range(1..=6);
    let m = r.gen_range(1..=5);
    let universe: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut masks: Vec<u32> = (0..m).map(|_| r.gen_range(1..1u32 << n)).collect();
    for e in 0..n {
        if masks.iter().all(|s| s & (1 << e) == 0) {
            let at = r.gen_range(0..m);
            masks[at] |= 1 << e;
        }
    }
    let sets = masks
        .iter()
        .map(|s| (0..n).filter(|e| s & (1 << e) != 0).map(|e| universe[e].clone()).collect())
        .collect();
    RandomScp { universe, sets }
}

/// Fewest sets whose union is the universe, by trying every subset.
pub fn exhaustive_cover(universe: &[String], sets: &[Vec<String>]) -> Option<usize> {
    let index: HashMap<&str, usize> = universe.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    let full: u64 = (1u64 << universe.len()) - 1;
    let masks: Vec<u64> = sets
        .iter()
        .map(|s| s.iter().fold(0, |m, e| m | 1 << index[e.as_str()]))
        .collect();
    (0u64..1 << masks.len())
        .filter(|pick| {
            let union = (0..masks.len()).filter(|i| pick & (1 << i) != 0).fold(0, |u, i| u | masks[i]);
            union == full
        })
        .map(|pick| pick.count_ones() as usize)
        .min()
}

// ---- weakening for transitivity ------------------------------------------

/// A goal `h` with an explicit witness `theta` such that `h theta` is a
/// subset of `g`: a random subset of atoms, variables renamed with `prefix`,
/// and when `cut` is set some subterms replaced by new variables.
pub fn weaken(g: &Goal, r: &mut ChaCha8Rng, prefix: &str, cut: bool) -> (Goal, Substitution) {
    let mut names: BTreeMap<String, String> = BTreeMap::new();
    let mut theta = Substitution::new();
    let mut cuts = 0usize;
    fn go(
        t: &Term,
        r: &mut ChaCha8Rng,
        prefix: &str,
        cut: bool,
        names: &mut BTreeMap<String, String>,
        theta: &mut Substitution,
        cuts: &mut usize,
    ) -> Term {
        match t {
            Term::Var(v) => {
                let n = names.len();
                let w = names.entry(v.clone()).or_insert_with(|| format!("{prefix}{n}")).clone();
                theta.bind(w.clone(), t.clone());
                Term::var(w)
            }
            _ if cut && r.gen_bool(0.25) => {
                *cuts += 1;
                let w = format!("{prefix}c{cuts}");
                theta.bind(w.clone(), t.clone());
                Term::var(w)
            }
            Term::Const(_) => t.clone(),
            Term::App(f, xs) => Term::App(
                f.clone(),
                xs.iter().map(|x| go(x, r, prefix, cut, names, theta, cuts)).collect(),
            ),
        }
    }
    let mut h = Goal::new();
    for a in g.atoms() {
        if r.gen_bool(0.75) {
            let args = a
                .args
                .iter()
                .map(|t| go(t, r, prefix, cut, &mut names, &mut theta, &mut cuts))
                .collect();
            h.insert(Atom::new(a.predicate.clone(), args));
        }
    }
    let vars: BTreeSet<String> = h.vars().into_iter().map(String::from).collect();
    (h, theta.restrict(vars.iter().map(String::as_str)))
}

/// Relations under which `theta` is an admissible witness shape for `g`.
pub fn admissible(g: &Goal, theta: &Substitution) -> Vec<Relation> {
    let image = |v: &str| theta.get(v).cloned().unwrap_or_else(|| Term::var(v));
    let vars = g.vars();
    let renaming = vars.iter().all(|v| image(v).is_var());
    let injective = {
        let images: BTreeSet<Term> = vars.iter().map(|v| image(v)).collect();
        images.len() == vars.len()
    };
    Relation::ALL
        .into_iter()
        .filter(|r| (!r.renaming_only() || renaming) && (!r.injective() || injective))
        .collect()
}

/// Random pairs of small terms over a tiny alphabet, for the variabilizer.
pub fn random_term(r: &mut ChaCha8Rng, depth: usize) -> Term {
    match r.gen_range(0..if depth == 0 { 3 } else { 4 }) {
        0 => Term::var(["X", "Y", "Z", "V1", "V2"][r.gen_range(0..5)]),
        1 => Term::Const(Constant::Int(r.gen_range(0..3))),
        2 => Term::sym(["a", "b"][r.gen_range(0..2)]),
        _ => Term::app("f", vec![random_term(r, depth - 1)]),
    }
}
