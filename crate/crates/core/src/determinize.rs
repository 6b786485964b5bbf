//! Subset construction parameterised by the treatment of ε-moves.
//!
//! The agenda is processed in FIFO order and DFA states are numbered in
//! discovery order, with the instructions of a subset visited by ascending
//! symbol. All three strategies discover the same subsets in the same order,
//! so they produce structurally identical automata.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::closure::{remove_epsilon_with, transitive_closure_of, EpsGraph, Scratch};
use crate::{Dfa, Error, Nfa, Result, StateId, Subset, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClosureStrategy {
    /// Remove all ε-moves first, then determinise the ε-free automaton.
    #[serde(rename = "per-graph")]
    PerGraph,
    /// Union of memoised single-state closures.
    #[serde(rename = "per-state")]
    PerState,
    /// Memoised closure of each target subset.
    #[serde(rename = "per-subset")]
    PerSubset,
}

impl ClosureStrategy {
    pub const ALL: [ClosureStrategy; 3] = [
        ClosureStrategy::PerGraph,
        ClosureStrategy::PerState,
        ClosureStrategy::PerSubset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosureStrategy::PerGraph => "per-graph",
            ClosureStrategy::PerState => "per-state",
            ClosureStrategy::PerSubset => "per-subset",
        }
    }
}

impl fmt::Display for ClosureStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownStrategy(pub String);

impl fmt::Display for UnknownStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown strategy `{}` (expected per-graph, per-state or per-subset)",
            self.0
        )
    }
}

impl std::error::Error for UnknownStrategy {}

impl FromStr for ClosureStrategy {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "per-graph" | "graph" => Ok(ClosureStrategy::PerGraph),
            "per-state" | "state" => Ok(ClosureStrategy::PerState),
            "per-subset" | "subset" => Ok(ClosureStrategy::PerSubset),
            _ => Err(UnknownStrategy(s.to_owned())),
        }
    }
}

/// Work counters of one determinisation run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetStats {
    /// Distinct subsets registered, i.e. DFA states.
    pub subsets_created: usize,
    /// Requests to the closure function. For per-state this counts one
    /// request per member state; for per-graph it counts the single-state
    /// closures of the up-front transitive closure.
    pub closure_calls: usize,
    /// Closure requests answered from the memo table.
    pub memo_hits: usize,
    /// Largest agenda length observed.
    pub agenda_peak: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetOptions {
    /// Memoise closure results. Turning this off never changes the output.
    pub memoise: bool,
    /// Abort once more than this many DFA states exist.
    pub max_states: Option<usize>,
}

impl Default for DetOptions {
    fn default() -> Self {
        DetOptions {
            memoise: true,
            max_states: None,
        }
    }
}

/// Determinises `nfa` with the given ε-move strategy.
pub fn determinise(nfa: &Nfa, strategy: ClosureStrategy) -> (Dfa, DetStats) {
    determinise_with(nfa, strategy, &DetOptions::default())
        .expect("no state limit was requested")
}

/// Like [`determinise`], with memoisation switch and an optional state limit.
pub fn determinise_with(
    nfa: &Nfa,
    strategy: ClosureStrategy,
    options: &DetOptions,
) -> Result<(Dfa, DetStats)> {
    let mut stats = DetStats::default();
    match strategy {
        ClosureStrategy::PerGraph => {
            let graph = EpsGraph::new(nfa);
            let per_state = transitive_closure_of(&graph);
            stats.closure_calls = per_state.len();
            let eps_free = remove_epsilon_with(nfa, &per_state);
            subset_construction(&eps_free, MemoTable::Identity, options, stats)
        }
        ClosureStrategy::PerState => {
            let memo = MemoTable::PerState {
                graph: EpsGraph::new(nfa),
                memo: vec![None; nfa.num_states()],
                scratch: Scratch::new(nfa.num_states()),
                union: Scratch::new(nfa.num_states()),
            };
            subset_construction(nfa, memo, options, stats)
        }
        ClosureStrategy::PerSubset => {
            let memo = MemoTable::PerSubset {
                graph: EpsGraph::new(nfa),
                memo: HashMap::new(),
                scratch: Scratch::new(nfa.num_states()),
            };
            subset_construction(nfa, memo, options, stats)
        }
    }
}

/// Closure function plugged into subset construction, with its memo table.
enum MemoTable {
    /// No ε-moves left to follow.
    Identity,
    PerState {
        graph: EpsGraph,
        memo: Vec<Option<Subset>>,
        scratch: Scratch,
        union: Scratch,
    },
    PerSubset {
        graph: EpsGraph,
        memo: HashMap<Subset, Subset>,
        scratch: Scratch,
    },
}

impl MemoTable {
    fn epsilon_closure(&mut self, u: Subset, memoise: bool, stats: &mut DetStats) -> Subset {
        match self {
            MemoTable::Identity => u,
            MemoTable::PerState {
                graph,
                memo,
                scratch,
                union,
            } => {
                union.begin();
                for q in u.iter() {
                    stats.closure_calls += 1;
                    let slot = &mut memo[q as usize];
                    let fresh;
                    let closed = match slot {
                        Some(c) if memoise => {
                            stats.memo_hits += 1;
                            &*c
                        }
                        _ => {
                            let c = graph.closure(&[q], scratch);
                            if memoise {
                                &*slot.insert(c)
                            } else {
                                fresh = c;
                                &fresh
                            }
                        }
                    };
                    for r in closed.iter() {
                        union.insert(r);
                    }
                }
                union.take_sorted()
            }
            MemoTable::PerSubset {
                graph,
                memo,
                scratch,
            } => {
                stats.closure_calls += 1;
                if !memoise {
                    return graph.closure(u.as_slice(), scratch);
                }
                if let Some(c) = memo.get(&u) {
                    stats.memo_hits += 1;
                    return c.clone();
                }
                let c = graph.closure(u.as_slice(), scratch);
                memo.insert(u, c.clone());
                c
            }
        }
    }
}

fn subset_construction(
    nfa: &Nfa,
    mut closer: MemoTable,
    options: &DetOptions,
    mut stats: DetStats,
) -> Result<(Dfa, DetStats)> {
    let index = TransitionIndex::new(nfa);
    let mut merger = Merger::new(nfa.num_symbols(), nfa.num_states());

    let start = closer.epsilon_closure(nfa.start_subset(), options.memoise, &mut stats);
    let mut registry = StateRegistry::new(nfa);
    let (_, _) = registry.add(start);
    stats.agenda_peak = 1;

    while let Some(t) = registry.next_unmarked() {
        let instructions = merger.instructions(&index, registry.label(t));
        for (symbol, target) in instructions {
            let target = closer.epsilon_closure(target, options.memoise, &mut stats);
            let (id, _) = registry.add(target);
            registry.dfa.set_transition(t, symbol, id);
            if let Some(limit) = options.max_states {
                if registry.len() > limit {
                    return Err(Error::StateLimitExceeded(limit));
                }
            }
        }
        stats.agenda_peak = stats.agenda_peak.max(registry.agenda_len());
    }

    stats.subsets_created = registry.len();
    Ok((registry.dfa, stats))
}

/// Outgoing transitions of every NFA state, grouped by symbol.
#[derive(Debug, Clone)]
pub struct TransitionIndex {
    per_state: Vec<Vec<(Symbol, Vec<StateId>)>>,
}

impl TransitionIndex {
    pub fn new(nfa: &Nfa) -> Self {
        let mut per_state = vec![Vec::new(); nfa.num_states()];
        for ((src, sym), dsts) in nfa.transitions() {
            per_state[src as usize].push((sym, dsts.iter().copied().collect()));
        }
        TransitionIndex { per_state }
    }

    /// `(symbol, targets)` pairs leaving `state`, ascending by symbol.
    pub fn transitions(&self, state: StateId) -> &[(Symbol, Vec<StateId>)] {
        &self.per_state[state as usize]
    }
}

/// Per-symbol buckets reused across calls to [`Merger::instructions`].
struct Merger {
    buckets: Vec<Vec<StateId>>,
    touched: Vec<Symbol>,
    dedup: Scratch,
}

impl Merger {
    fn new(num_symbols: usize, num_states: usize) -> Self {
        Merger {
            buckets: vec![Vec::new(); num_symbols],
            touched: Vec::new(),
            dedup: Scratch::new(num_states),
        }
    }

    fn instructions(&mut self, index: &TransitionIndex, subset: &Subset) -> Vec<(Symbol, Subset)> {
        for p in subset.iter() {
            for (sym, dsts) in index.transitions(p) {
                let bucket = &mut self.buckets[*sym as usize];
                if bucket.is_empty() {
                    self.touched.push(*sym);
                }
                bucket.extend_from_slice(dsts);
            }
        }
        self.touched.sort_unstable();
        let dedup = &mut self.dedup;
        let buckets = &mut self.buckets;
        self.touched
            .drain(..)
            .map(|sym| {
                let bucket = &mut buckets[sym as usize];
                dedup.begin();
                for &q in bucket.iter() {
                    dedup.insert(q);
                }
                bucket.clear();
                (sym, dedup.take_sorted())
            })
            .collect()
    }
}

/// Instruction computation: the merged transitions leaving `subset`, one
/// pair per symbol, targets not yet ε-closed.
pub fn instructions(nfa: &Nfa, subset: &Subset) -> Vec<(Symbol, Subset)> {
    let index = TransitionIndex::new(nfa);
    Merger::new(nfa.num_symbols(), nfa.num_states()).instructions(&index, subset)
}

/// Merges pairs with the same symbol by taking the union of their sets.
/// The result is ordered by symbol.
pub fn merge<I>(pairs: I) -> Vec<(Symbol, Subset)>
where
    I: IntoIterator<Item = (Symbol, Subset)>,
{
    let mut merged: std::collections::BTreeMap<Symbol, Subset> = Default::default();
    for (sym, set) in pairs {
        let entry = merged.entry(sym).or_default();
        *entry = entry.union(&set);
    }
    merged.into_iter().collect()
}

/// Reachable-state-set maintenance: known subsets, their DFA ids and
/// finality, and the FIFO agenda of unmarked subsets.
#[derive(Debug)]
pub struct StateRegistry {
    ids: HashMap<Subset, StateId>,
    nfa_final: Vec<bool>,
    agenda: VecDeque<StateId>,
    dfa: Dfa,
    started: bool,
}

impl StateRegistry {
    pub fn new(nfa: &Nfa) -> Self {
        let mut nfa_final = vec![false; nfa.num_states()];
        for &f in nfa.finals() {
            nfa_final[f as usize] = true;
        }
        StateRegistry {
            ids: HashMap::new(),
            nfa_final,
            agenda: VecDeque::new(),
            dfa: Dfa::new(nfa.num_symbols(), Subset::empty(), false),
            started: false,
        }
    }

    /// Registers `subset` if unseen: assigns the next dense id, queues it
    /// and records finality. Returns the id and whether it was new.
    pub fn add(&mut self, subset: Subset) -> (StateId, bool) {
        if let Some(&id) = self.ids.get(&subset) {
            return (id, false);
        }
        let is_final = subset.iter().any(|q| self.nfa_final[q as usize]);
        let id = if self.started {
            self.dfa.add_state(subset.clone(), is_final)
        } else {
            // the placeholder start state created by `Dfa::new`
            self.started = true;
            self.dfa = Dfa::new(self.dfa.num_symbols(), subset.clone(), is_final);
            0
        };
        self.ids.insert(subset, id);
        self.agenda.push_back(id);
        (id, true)
    }

    /// Pops the oldest unmarked subset, marking it.
    pub fn next_unmarked(&mut self) -> Option<StateId> {
        self.agenda.pop_front()
    }

    pub fn label(&self, id: StateId) -> &Subset {
        self.dfa.subset_label(id)
    }

    pub fn is_final(&self, id: StateId) -> bool {
        self.dfa.is_final(id)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn agenda_len(&self) -> usize {
        self.agenda.len()
    }

    pub fn into_dfa(self) -> Dfa {
        self.dfa
    }
}
