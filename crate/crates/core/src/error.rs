use thiserror::Error;

use crate::{StateId, Symbol};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state {state} out of range for an automaton with {num_states} states")]
    StateOutOfRange { state: StateId, num_states: usize },

    #[error("symbol {symbol} out of range for an alphabet of {num_symbols} symbols")]
    SymbolOutOfRange { symbol: Symbol, num_symbols: usize },

    #[error("density metrics are undefined for an automaton without states")]
    NoStates,

    #[error("infeasible generation spec: {0}")]
    InfeasibleSpec(String),

    #[error("refusing brute-force determinisation of {num_states} states (limit {limit})")]
    TooManyStates { num_states: usize, limit: usize },

    #[error("alphabet mismatch: {left} symbols vs {right} symbols")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("determinisation exceeded the limit of {0} states")]
    StateLimitExceeded(usize),
}
