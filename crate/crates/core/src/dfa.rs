use crate::{Nfa, StateId, Subset, Symbol};

/// A partial deterministic automaton produced by subset construction.
///
/// State 0 is always the start state. Each state remembers the subset of
/// NFA states it was built from. Missing transitions go nowhere; there is
/// no implicit sink state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    num_symbols: usize,
    /// Row-major `num_states × num_symbols` transition table.
    table: Vec<Option<StateId>>,
    finals: Vec<bool>,
    labels: Vec<Subset>,
}

impl Dfa {
    /// Creates a one-state automaton whose start state carries `start_label`.
    pub fn new(num_symbols: usize, start_label: Subset, start_final: bool) -> Self {
        let mut dfa = Dfa {
            num_symbols,
            table: Vec::new(),
            finals: Vec::new(),
            labels: Vec::new(),
        };
        dfa.add_state(start_label, start_final);
        dfa
    }

    pub fn add_state(&mut self, label: Subset, is_final: bool) -> StateId {
        let id = self.labels.len() as StateId;
        self.table.extend(std::iter::repeat_n(None, self.num_symbols));
        self.finals.push(is_final);
        self.labels.push(label);
        id
    }

    /// Sets (or overwrites) the single transition on `(src, symbol)`.
    ///
    /// # Panics
    ///
    /// If `src`, `dst` or `symbol` is out of range.
    pub fn set_transition(&mut self, src: StateId, symbol: Symbol, dst: StateId) {
        assert!((dst as usize) < self.num_states(), "target state out of range");
        assert!((symbol as usize) < self.num_symbols, "symbol out of range");
        self.table[src as usize * self.num_symbols + symbol as usize] = Some(dst);
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.num_symbols
    }

    pub fn start(&self) -> StateId {
        0
    }

    pub fn next(&self, state: StateId, symbol: Symbol) -> Option<StateId> {
        self.table[state as usize * self.num_symbols + symbol as usize]
    }

    pub fn is_final(&self, state: StateId) -> bool {
        self.finals[state as usize]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, f)| **f)
            .map(|(i, _)| i as StateId)
    }

    pub fn subset_label(&self, state: StateId) -> &Subset {
        &self.labels[state as usize]
    }

    pub fn subset_labels(&self) -> &[Subset] {
        &self.labels
    }

    /// All transitions as `(src, symbol, dst)` in ascending order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        let k = self.num_symbols.max(1);
        self.table.iter().enumerate().filter_map(move |(i, t)| {
            t.map(|dst| ((i / k) as StateId, (i % k) as Symbol, dst))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.table.iter().filter(|t| t.is_some()).count()
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut state = self.start();
        for &a in word {
            if a as usize >= self.num_symbols {
                return false;
            }
            match self.next(state, a) {
                Some(next) => state = next,
                None => return false,
            }
        }
        self.is_final(state)
    }

    /// The same automaton viewed as an ε-free NFA with a single start state.
    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.num_states(), self.num_symbols);
        nfa.add_start(self.start()).expect("start in range");
        for f in self.finals() {
            nfa.add_final(f).expect("final in range");
        }
        for (src, sym, dst) in self.transitions() {
            nfa.add_transition(src, sym, dst).expect("transition in range");
        }
        nfa
    }
}
