//! ε-closure primitives shared by all determinisation strategies.

use crate::{Nfa, Result, StateId, Subset};

/// Adjacency lists of the ε-graph.
#[derive(Debug, Clone)]
pub(crate) struct EpsGraph {
    succ: Vec<Vec<StateId>>,
}

impl EpsGraph {
    pub(crate) fn new(nfa: &Nfa) -> Self {
        let mut succ = vec![Vec::new(); nfa.num_states()];
        for (src, dst) in nfa.eps_moves() {
            // self-loops never add anything to a closure
            if src != dst {
                succ[src as usize].push(dst);
            }
        }
        EpsGraph { succ }
    }

    pub(crate) fn num_states(&self) -> usize {
        self.succ.len()
    }

    /// Worklist closure of `seed`: every seed state starts unmarked, marking
    /// a state pushes its unseen ε-successors.
    pub(crate) fn closure(&self, seed: &[StateId], scratch: &mut Scratch) -> Subset {
        scratch.begin();
        for &s in seed {
            if scratch.insert(s) {
                scratch.stack.push(s);
            }
        }
        while let Some(t) = scratch.stack.pop() {
            for &q in &self.succ[t as usize] {
                if scratch.insert(q) {
                    scratch.stack.push(q);
                }
            }
        }
        scratch.take_sorted()
    }
}

/// Reusable membership buffer. A state is a member of the current set iff
/// its stamp equals the current generation, so clearing is O(1).
#[derive(Debug, Clone)]
pub(crate) struct Scratch {
    stamps: Vec<u32>,
    generation: u32,
    stack: Vec<StateId>,
    members: Vec<StateId>,
}

impl Scratch {
    pub(crate) fn new(num_states: usize) -> Self {
        Scratch {
            stamps: vec![0; num_states],
            generation: 0,
            stack: Vec::new(),
            members: Vec::new(),
        }
    }

    pub(crate) fn begin(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamps.fill(0);
            self.generation = 1;
        }
        self.members.clear();
        self.stack.clear();
    }

    pub(crate) fn insert(&mut self, state: StateId) -> bool {
        let slot = &mut self.stamps[state as usize];
        if *slot == self.generation {
            false
        } else {
            *slot = self.generation;
            self.members.push(state);
            true
        }
    }

    pub(crate) fn take_sorted(&mut self) -> Subset {
        let mut out = std::mem::take(&mut self.members);
        out.sort_unstable();
        Subset::from_sorted_unchecked(out)
    }
}

/// The smallest superset of `seed` closed under the ε-moves of `nfa`.
pub fn closure(nfa: &Nfa, seed: &Subset) -> Result<Subset> {
    for s in seed.iter() {
        nfa.check_state(s)?;
    }
    let graph = EpsGraph::new(nfa);
    let mut scratch = Scratch::new(nfa.num_states());
    Ok(graph.closure(seed.as_slice(), &mut scratch))
}

/// ε-closure of every single state, computed in one pass over the ε-graph.
///
/// Entry `q` of the result is `closure(nfa, {q})`.
pub fn eps_transitive_closure(nfa: &Nfa) -> Vec<Subset> {
    let graph = EpsGraph::new(nfa);
    transitive_closure_of(&graph)
}

pub(crate) fn transitive_closure_of(graph: &EpsGraph) -> Vec<Subset> {
    let mut scratch = Scratch::new(graph.num_states());
    (0..graph.num_states() as StateId)
        .map(|q| graph.closure(&[q], &mut scratch))
        .collect()
}

/// Equivalent ε-free automaton: the start set becomes its ε-closure and every
/// transition target set is replaced by its ε-closure. Finals are unchanged.
pub fn remove_epsilon(nfa: &Nfa) -> Nfa {
    let graph = EpsGraph::new(nfa);
    let per_state = transitive_closure_of(&graph);
    remove_epsilon_with(nfa, &per_state)
}

pub(crate) fn remove_epsilon_with(nfa: &Nfa, per_state: &[Subset]) -> Nfa {
    let mut out = Nfa::new(nfa.num_states(), nfa.num_symbols());
    let close = |states: &mut dyn Iterator<Item = StateId>| -> Vec<StateId> {
        let mut v: Vec<StateId> = states.flat_map(|q| per_state[q as usize].iter()).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    for s in close(&mut nfa.starts().iter().copied()) {
        out.add_start(s).expect("state in range");
    }
    for &f in nfa.finals() {
        out.add_final(f).expect("state in range");
    }
    for ((src, sym), dsts) in nfa.transitions() {
        for dst in close(&mut dsts.iter().copied()) {
            out.add_transition(src, sym, dst).expect("ids in range");
        }
    }
    out
}
