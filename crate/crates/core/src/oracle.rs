//! Independent correctness oracles for tests and acceptance runs.
//!
//! Nothing here goes through the closure or determinisation modules:
//! brute-force determinisation works on bitmasks over the full powerset,
//! and equivalence is a search of the synchronous product automaton.

use std::collections::{HashMap, VecDeque};

use crate::{Dfa, Error, Nfa, Result, StateId, Subset, Symbol};

/// Largest automaton [`brute_force_determinise`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 20;

type Mask = u32;

/// Textbook determinisation: computes the successor of every one of the
/// `2^n` subsets, then keeps the part reachable from the closed start set.
///
/// States are numbered breadth-first from the start, visiting symbols in
/// ascending order; transitions to the empty subset are left out.
pub fn brute_force_determinise(nfa: &Nfa) -> Result<Dfa> {
    let n = nfa.num_states();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyStates {
            num_states: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let k = nfa.num_symbols();

    // reflexive-transitive ε-reachability per state, by fixpoint iteration
    let mut reach: Vec<Mask> = (0..n).map(|q| 1 << q).collect();
    loop {
        let mut changed = false;
        for (src, dst) in nfa.eps_moves() {
            let add = reach[dst as usize] & !reach[src as usize];
            if add != 0 {
                reach[src as usize] |= add;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let close = |m: Mask| -> Mask {
        (0..n).filter(|q| m & (1 << q) != 0).fold(m, |acc, q| acc | reach[q])
    };

    let mut step = vec![0 as Mask; n * k];
    for (src, sym, dst) in nfa.transition_triples() {
        step[src as usize * k + sym as usize] |= 1 << dst;
    }

    // successor of every subset, built from the subset minus its lowest bit
    let total = 1usize << n;
    let mut delta = vec![0 as Mask; total * k];
    for m in 1..total {
        let low = m.trailing_zeros() as usize;
        let rest = m & (m - 1);
        for a in 0..k {
            delta[m * k + a] = delta[rest * k + a] | step[low * k + a];
        }
    }
    for d in delta.iter_mut() {
        *d = close(*d);
    }

    let finals: Mask = nfa.finals().iter().fold(0, |acc, &f| acc | (1 << f));
    let start = close(nfa.starts().iter().fold(0, |acc, &s| acc | (1 << s)));
    let label = |m: Mask| -> Subset { (0..n as StateId).filter(|q| m & (1 << q) != 0).collect() };

    let mut ids: HashMap<Mask, StateId> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut dfa = Dfa::new(k, label(start), start & finals != 0);
    let mut i = 0;
    while i < order.len() {
        let m = order[i];
        for a in 0..k {
            let t = delta[m as usize * k + a];
            if t == 0 {
                continue;
            }
            let id = match ids.get(&t) {
                Some(&id) => id,
                None => {
                    let id = dfa.add_state(label(t), t & finals != 0);
                    ids.insert(t, id);
                    order.push(t);
                    id
                }
            };
            dfa.set_transition(i as StateId, a as Symbol, id);
        }
        i += 1;
    }
    Ok(dfa)
}

/// Whether `a` and `b` accept the same language.
pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool> {
    distinguishing_word(a, b).map(|w| w.is_none())
}

/// A shortest word accepted by exactly one of `a` and `b`, or `None` when
/// the languages are equal. Missing transitions lead to an implicit dead
/// state.
pub fn distinguishing_word(a: &Dfa, b: &Dfa) -> Result<Option<Vec<Symbol>>> {
    if a.num_symbols() != b.num_symbols() {
        return Err(Error::AlphabetMismatch {
            left: a.num_symbols(),
            right: b.num_symbols(),
        });
    }
    type Pair = (Option<StateId>, Option<StateId>);
    let accepting = |p: Pair| -> (bool, bool) {
        (
            p.0.is_some_and(|s| a.is_final(s)),
            p.1.is_some_and(|s| b.is_final(s)),
        )
    };

    let start: Pair = (Some(a.start()), Some(b.start()));
    let mut parent: HashMap<Pair, Option<(Pair, Symbol)>> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let (fa, fb) = accepting(p);
        if fa != fb {
            let mut word = Vec::new();
            let mut cur = p;
            while let Some((prev, sym)) = parent[&cur] {
                word.push(sym);
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for sym in 0..a.num_symbols() as Symbol {
            let next = (
                p.0.and_then(|s| a.next(s, sym)),
                p.1.and_then(|s| b.next(s, sym)),
            );
            if next == (None, None) {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((p, sym)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}
