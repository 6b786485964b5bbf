use std::collections::{BTreeMap, BTreeSet};

use crate::{Error, Result, StateId, Subset, Symbol};

/// A nondeterministic finite automaton with ε-moves and a set of start
/// states.
///
/// Every id stored in the automaton is checked against the declared state
/// and symbol counts on insertion, so a constructed `Nfa` is always
/// well-formed. Transition target sets are never empty: a missing entry
/// stands for the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Nfa {
    num_states: usize,
    num_symbols: usize,
    transitions: BTreeMap<(StateId, Symbol), BTreeSet<StateId>>,
    eps_moves: BTreeSet<(StateId, StateId)>,
    starts: BTreeSet<StateId>,
    finals: BTreeSet<StateId>,
}

impl Nfa {
    pub fn new(num_states: usize, num_symbols: usize) -> Self {
        Nfa {
            num_states,
            num_symbols,
            ..Default::default()
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_symbols(&self) -> usize {
        self.num_symbols
    }

    pub(crate) fn check_state(&self, state: StateId) -> Result<()> {
        if (state as usize) < self.num_states {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                state,
                num_states: self.num_states,
            })
        }
    }

    fn check_symbol(&self, symbol: Symbol) -> Result<()> {
        if (symbol as usize) < self.num_symbols {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange {
                symbol,
                num_symbols: self.num_symbols,
            })
        }
    }

    /// Adds `src --symbol--> dst`. Returns whether the triple was new.
    pub fn add_transition(&mut self, src: StateId, symbol: Symbol, dst: StateId) -> Result<bool> {
        self.check_state(src)?;
        self.check_state(dst)?;
        self.check_symbol(symbol)?;
        Ok(self.transitions.entry((src, symbol)).or_default().insert(dst))
    }

    /// Adds the ε-move `src --ε--> dst`. Returns whether it was new.
    pub fn add_eps(&mut self, src: StateId, dst: StateId) -> Result<bool> {
        self.check_state(src)?;
        self.check_state(dst)?;
        Ok(self.eps_moves.insert((src, dst)))
    }

    pub fn add_start(&mut self, state: StateId) -> Result<bool> {
        self.check_state(state)?;
        Ok(self.starts.insert(state))
    }

    pub fn add_final(&mut self, state: StateId) -> Result<bool> {
        self.check_state(state)?;
        Ok(self.finals.insert(state))
    }

    /// Targets of `state` on `symbol`; `None` is the empty set.
    pub fn targets(&self, state: StateId, symbol: Symbol) -> Option<&BTreeSet<StateId>> {
        self.transitions.get(&(state, symbol))
    }

    /// All non-empty transition entries, ordered by `(src, symbol)`.
    pub fn transitions(&self) -> impl Iterator<Item = ((StateId, Symbol), &BTreeSet<StateId>)> + '_ {
        self.transitions.iter().map(|(k, v)| (*k, v))
    }

    /// All `(src, symbol, dst)` triples in ascending order.
    pub fn transition_triples(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        self.transitions
            .iter()
            .flat_map(|(&(src, sym), dsts)| dsts.iter().map(move |&dst| (src, sym, dst)))
    }

    pub fn eps_moves(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.eps_moves.iter().copied()
    }

    pub fn starts(&self) -> &BTreeSet<StateId> {
        &self.starts
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_final(&self, state: StateId) -> bool {
        self.finals.contains(&state)
    }

    /// Number of `(src, symbol, dst)` triples.
    pub fn num_transitions(&self) -> usize {
        self.transitions.values().map(BTreeSet::len).sum()
    }

    pub fn num_eps_moves(&self) -> usize {
        self.eps_moves.len()
    }

    /// Direct simulation on sets of states. Used by tests and the oracle
    /// diagnostics; determinisation does not go through here.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let close = |set: BTreeSet<StateId>| {
            let mut set = set;
            let mut stack: Vec<StateId> = set.iter().copied().collect();
            while let Some(q) = stack.pop() {
                for &(_, r) in self.eps_moves.range((q, 0)..=(q, StateId::MAX)) {
                    if set.insert(r) {
                        stack.push(r);
                    }
                }
            }
            set
        };
        let mut current = close(self.starts.clone());
        for &a in word {
            let step = current
                .iter()
                .filter_map(|&q| self.targets(q, a))
                .flatten()
                .copied()
                .collect();
            current = close(step);
        }
        current.iter().any(|q| self.finals.contains(q))
    }

    pub fn start_subset(&self) -> Subset {
        Subset::from_sorted_unchecked(self.starts.iter().copied().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_ids() {
        let mut nfa = Nfa::new(2, 1);
        assert_eq!(
            nfa.add_transition(0, 1, 1),
            Err(Error::SymbolOutOfRange {
                symbol: 1,
                num_symbols: 1
            })
        );
        assert_eq!(
            nfa.add_eps(2, 0),
            Err(Error::StateOutOfRange {
                state: 2,
                num_states: 2
            })
        );
        assert!(nfa.add_final(5).is_err());
        assert_eq!(nfa.num_transitions(), 0);
    }

    #[test]
    fn duplicates_collapse() {
        let mut nfa = Nfa::new(2, 1);
        assert!(nfa.add_transition(0, 0, 1).unwrap());
        assert!(!nfa.add_transition(0, 0, 1).unwrap());
        assert!(nfa.add_eps(0, 1).unwrap());
        assert!(!nfa.add_eps(0, 1).unwrap());
        assert_eq!(nfa.num_transitions(), 1);
        assert_eq!(nfa.num_eps_moves(), 1);
    }

    #[test]
    fn simulation_follows_eps_moves() {
        let mut nfa = Nfa::new(3, 1);
        nfa.add_start(0).unwrap();
        nfa.add_final(2).unwrap();
        nfa.add_eps(0, 1).unwrap();
        nfa.add_transition(1, 0, 2).unwrap();
        assert!(nfa.accepts(&[0]));
        assert!(!nfa.accepts(&[]));
        assert!(!nfa.accepts(&[0, 0]));
    }

    #[test]
    fn zero_state_automaton_is_legal() {
        let nfa = Nfa::new(0, 0);
        assert!(!nfa.accepts(&[]));
        assert!(nfa.start_subset().is_empty());
    }
}
