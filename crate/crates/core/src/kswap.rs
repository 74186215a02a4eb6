//! Pairings and the k-swap stable approximation of the largest injective
//! variable-only common generalization.
//!
//! A pairing is a set of variant atom pairs from `g1 × g2` whose variable
//! correspondences merge into one injective renaming. The search forces
//! one candidate pair at a time into the current pairing, swapping out at
//! most `k` pairs to make room.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::atomic::au_preceq;
use crate::error::Result;
use crate::generalize::GenOutcome;
use crate::goal::Goal;
use crate::term::Atom;
use crate::variabilizer::Variabilizer;

pub type CandId = usize;

/// One element of `gen(g1, g2)`: a variant pair and its variable links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub left: usize,
    pub right: usize,
    links: Vec<(u32, u32)>,
}

/// Fixed-width bit set over candidate ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
struct Bits(Vec<u64>);

impl Bits {
    fn with_capacity(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| k * 64 + b)
        })
    }

    fn with(&self, i: usize) -> Self {
        let mut b = self.clone();
        b.insert(i);
        b
    }

    fn without(&self, i: usize) -> Self {
        let mut b = self.clone();
        b.remove(i);
        b
    }
}

/// A consistent injective pairing. Variable links are reference counted so
/// pairs can be removed again.
#[derive(Debug, Clone, Default)]
pub struct Pairing {
    members: BTreeSet<CandId>,
    left: HashSet<usize>,
    right: HashSet<usize>,
    fwd: HashMap<u32, (u32, usize)>,
    bwd: HashMap<u32, (u32, usize)>,
}

impl PartialEq for Pairing {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Pairing {}

impl Pairing {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: CandId) -> bool {
        self.members.contains(&c)
    }

    /// Member ids in ascending order.
    pub fn ids(&self) -> impl Iterator<Item = CandId> + '_ {
        self.members.iter().copied()
    }

    fn bits(&self, n: usize) -> Bits {
        let mut b = Bits::with_capacity(n);
        for &c in &self.members {
            b.insert(c);
        }
        b
    }
}

/// Swap found for a forced pair: drop `removed`, add `added` and the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Swap {
    pub removed: Vec<CandId>,
    pub added: Vec<CandId>,
}

/// The candidate set `gen(g1, g2)` with everything needed to reason about
/// pairings over it.
#[derive(Debug, Clone)]
pub struct PairingSpace<'a> {
    g1: &'a Goal,
    g2: &'a Goal,
    candidates: Vec<Candidate>,
}

fn intern(table: &mut HashMap<String, u32>, name: &str) -> u32 {
    let next = table.len() as u32;
    *table.entry(name.to_string()).or_insert(next)
}

impl<'a> PairingSpace<'a> {
    pub fn new(g1: &'a Goal, g2: &'a Goal) -> Result<Self> {
        g1.ensure_disjoint(g2)?;
        let mut lnames = HashMap::new();
        let mut rnames = HashMap::new();
        let mut candidates = Vec::new();
        for (i, a1) in g1.atoms().enumerate() {
            for (j, a2) in g2.atoms().enumerate() {
                if let Some(links) = a1.variant_renaming(a2) {
                    let links = links
                        .iter()
                        .map(|(x, y)| (intern(&mut lnames, x), intern(&mut rnames, y)))
                        .collect();
                    candidates.push(Candidate { left: i, right: j, links });
                }
            }
        }
        Ok(PairingSpace { g1, g2, candidates })
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn atoms(&self, c: CandId) -> (&'a Atom, &'a Atom) {
        let cand = &self.candidates[c];
        (
            self.g1.get(cand.left).expect("left index"),
            self.g2.get(cand.right).expect("right index"),
        )
    }

    pub fn find(&self, left: usize, right: usize) -> Option<CandId> {
        self.candidates.iter().position(|c| c.left == left && c.right == right)
    }

    pub fn empty(&self) -> Pairing {
        Pairing::default()
    }

    pub fn is_compatible(&self, p: &Pairing, c: CandId) -> bool {
        let cand = &self.candidates[c];
        !p.left.contains(&cand.left)
            && !p.right.contains(&cand.right)
            && cand.links.iter().all(|&(x, y)| {
                p.fwd.get(&x).map_or(true, |&(img, _)| img == y)
                    && p.bwd.get(&y).map_or(true, |&(pre, _)| pre == x)
            })
    }

    fn add(&self, p: &mut Pairing, c: CandId) {
        debug_assert!(self.is_compatible(p, c));
        let cand = &self.candidates[c];
        p.members.insert(c);
        p.left.insert(cand.left);
        p.right.insert(cand.right);
        for &(x, y) in &cand.links {
            p.fwd.entry(x).or_insert((y, 0)).1 += 1;
            p.bwd.entry(y).or_insert((x, 0)).1 += 1;
        }
    }

    fn remove(&self, p: &mut Pairing, c: CandId) {
        if !p.members.remove(&c) {
            return;
        }
        let cand = &self.candidates[c];
        p.left.remove(&cand.left);
        p.right.remove(&cand.right);
        for &(x, y) in &cand.links {
            for (map, key) in [(&mut p.fwd, x), (&mut p.bwd, y)] {
                let entry = map.get_mut(&key).expect("linked variable");
                entry.1 -= 1;
                if entry.1 == 0 {
                    map.remove(&key);
                }
            }
        }
    }

    /// The pairing made of `ids`, or `None` when they conflict.
    pub fn pairing<I: IntoIterator<Item = CandId>>(&self, ids: I) -> Option<Pairing> {
        let mut p = self.empty();
        for c in ids {
            if p.contains(c) {
                continue;
            }
            if !self.is_compatible(&p, c) {
                return None;
            }
            self.add(&mut p, c);
        }
        Some(p)
    }

    /// Elements of `s` that could each be added to `base` on their own.
    pub fn comp<I: IntoIterator<Item = CandId>>(&self, base: &Pairing, s: I) -> Vec<CandId> {
        s.into_iter().filter(|&c| self.is_compatible(base, c)).collect()
    }

    /// `p ◁ p2`: all of `p2` plus whatever of `p` still fits alongside it.
    pub fn enforce(&self, p: &Pairing, p2: &Pairing) -> Pairing {
        let mut out = p2.clone();
        for c in p.ids() {
            if !out.contains(c) && self.is_compatible(&out, c) {
                self.add(&mut out, c);
            }
        }
        out
    }

    fn with_base(&self, pi: &Pairing, drop: &Bits, extra: impl Iterator<Item = CandId>) -> Pairing {
        let mut base = pi.clone();
        for c in drop.iter() {
            self.remove(&mut base, c);
        }
        for c in extra {
            self.add(&mut base, c);
        }
        base
    }

    /// Depth-first search for `need` compatible candidates from `s`.
    /// States already fully explored are skipped; that only prunes
    /// subtrees known to fail.
    fn find_replacement(&self, pi: &Pairing, a: CandId, pi_s: &Bits, s: Bits, need: usize) -> Option<Bits> {
        let n = self.candidates.len();
        let mut state = (Bits::with_capacity(n), s);
        let mut stack: Vec<(Bits, Bits)> = Vec::new();
        let mut explored: HashSet<(Bits, Bits)> = HashSet::new();
        explored.insert(state.clone());
        loop {
            if state.0.len() >= need {
                return Some(state.0);
            }
            let base = self.with_base(pi, pi_s, state.0.iter().chain([a]));
            for p in self.comp(&base, state.1.iter()) {
                let next = (state.0.with(p), state.1.without(p));
                if !explored.contains(&next) {
                    stack.push(next);
                }
            }
            state = loop {
                let next = stack.pop()?;
                if explored.insert(next.clone()) {
                    break next;
                }
            };
        }
    }

    /// Chooses the pairs to swap out of `pi` and their replacements so that
    /// the candidate `a` can join. The swapped-out set starts as the pairs
    /// incompatible with `a` and grows breadth first while it has at most
    /// `k` elements. The replacement base includes `a` itself, so the
    /// result is always a pairing.
    pub fn select_swap(&self, pi: &Pairing, a: CandId, k: usize) -> Option<Swap> {
        debug_assert!(!pi.contains(a));
        let n = self.candidates.len();
        let forced = self.pairing([a]).expect("a single candidate is a pairing");
        let kept = self.enforce(pi, &forced);
        let mut pi_s = Bits::with_capacity(n);
        for c in pi.ids().filter(|&c| !kept.contains(c)) {
            pi_s.insert(c);
        }
        let mut s = Bits::with_capacity(n);
        for c in (0..n).filter(|&c| !kept.contains(c)) {
            s.insert(c);
        }
        let mut queue: VecDeque<Bits> = VecDeque::new();
        let mut queued: HashSet<Bits> = HashSet::new();
        while pi_s.len() <= k {
            let need = pi_s.len();
            if let Some(pi_c) = self.find_replacement(pi, a, &pi_s, s, need) {
                return Some(Swap {
                    removed: pi_s.iter().collect(),
                    added: pi_c.iter().collect(),
                });
            }
            for p in pi.ids().filter(|&p| !pi_s.contains(p)) {
                let grown = pi_s.with(p);
                if queued.insert(grown.clone()) {
                    queue.push_back(grown);
                }
            }
            pi_s = queue.pop_front()?;
            let outside = pi.bits(n).with(a);
            s = Bits::with_capacity(n);
            for c in (0..n).filter(|&c| !outside.contains(c)) {
                s.insert(c);
            }
        }
        None
    }

    /// Applies a swap found by [`select_swap`](Self::select_swap).
    pub fn apply_swap(&self, pi: &Pairing, a: CandId, swap: &Swap) -> Pairing {
        let mut out = pi.clone();
        for &c in &swap.removed {
            self.remove(&mut out, c);
        }
        for &c in swap.added.iter().chain([&a]) {
            self.add(&mut out, c);
        }
        out
    }

    /// Runs the outer loop from `start` until no candidate can be forced.
    pub fn stabilize(&self, start: Pairing, k: usize) -> Pairing {
        let mut pi = start;
        'grow: loop {
            for a in 0..self.candidates.len() {
                if pi.contains(a) {
                    continue;
                }
                if let Some(swap) = self.select_swap(&pi, a, k) {
                    let before = pi.len();
                    pi = self.apply_swap(&pi, a, &swap);
                    debug_assert_eq!(pi.len(), before + 1);
                    continue 'grow;
                }
            }
            return pi;
        }
    }

    /// Exhaustive stability check: no pairing that keeps all but at most
    /// `k` pairs of `pi` reaches size `|pi| + 1`. Exponential.
    pub fn is_k_swap_stable(&self, pi: &Pairing, k: usize) -> bool {
        let members: Vec<CandId> = pi.ids().collect();
        let outside: Vec<CandId> = (0..self.candidates.len()).filter(|&c| !pi.contains(c)).collect();
        let target = members.len() + 1;
        let drop_max = k.min(members.len());
        (0u64..1 << members.len())
            .filter(|mask| mask.count_ones() as usize <= drop_max)
            .all(|mask| {
                let kept = members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) == 0)
                    .map(|(_, &c)| c);
                let base = self.pairing(kept).expect("subset of a pairing");
                !self.extends_to(&base, &outside, 0, target)
            })
    }

    fn extends_to(&self, base: &Pairing, pool: &[CandId], from: usize, target: usize) -> bool {
        if base.len() >= target {
            return true;
        }
        if base.len() + (pool.len() - from) < target {
            return false;
        }
        pool[from..].iter().enumerate().any(|(off, &c)| {
            self.is_compatible(base, c) && {
                let mut next = base.clone();
                self.add(&mut next, c);
                self.extends_to(&next, pool, from + off + 1, target)
            }
        })
    }

    /// The generalization of a pairing, one variable-only anti-unification
    /// per pair in candidate order.
    pub fn outcome(&self, pi: &Pairing, v: &mut Variabilizer) -> GenOutcome {
        let atoms = pi
            .ids()
            .map(|c| {
                let (a1, a2) = self.atoms(c);
                let g = au_preceq(a1, a2, v).value.expect("variant atoms anti-unify");
                let cand = &self.candidates[c];
                (g, (cand.left, cand.right))
            })
            .collect();
        GenOutcome::assemble(atoms, v)
    }
}

/// Index pairs of all variant atom pairs, in `(g1, g2)` index order.
pub fn gen_pairs(g1: &Goal, g2: &Goal) -> Result<Vec<(usize, usize)>> {
    let space = PairingSpace::new(g1, g2)?;
    Ok(space.candidates.iter().map(|c| (c.left, c.right)).collect())
}

/// A k-swap stable injective variable-only common generalization. Any `k`
/// above `min(|g1|, |g2|)` behaves as that bound, which gives a largest one.
pub fn kswap_generalize(g1: &Goal, g2: &Goal, k: usize, v: &mut Variabilizer) -> Result<GenOutcome> {
    let space = PairingSpace::new(g1, g2)?;
    let k = k.min(g1.len().min(g2.len()));
    let pi = space.stabilize(space.empty(), k);
    Ok(space.outcome(&pi, v))
}
