//! Determinisation of finite-state automata with ε-moves.
//!
//! The crate implements subset construction with three interchangeable ways
//! of treating ε-moves:
//!
//! * [`ClosureStrategy::PerGraph`] removes all ε-moves up front using the
//!   transitive closure of the ε-graph, then runs plain subset construction.
//! * [`ClosureStrategy::PerState`] computes (and memoises) the ε-closure of
//!   individual states and unions them for every target subset.
//! * [`ClosureStrategy::PerSubset`] computes (and memoises) the ε-closure of
//!   every target subset as a whole.
//!
//! Around that core sit a seeded random automaton generator driven by
//! transition and jump densities ([`randgen`]), density metrics
//! ([`metrics`]), independent correctness oracles ([`oracle`]), a canonical
//! text format ([`ioformat`]) and a benchmark harness ([`bench`]).
//!
//! ```
//! use fsadet::{determinise, ClosureStrategy, Nfa};
//!
//! let mut nfa = Nfa::new(3, 1);
//! nfa.add_start(0).unwrap();
//! nfa.add_final(2).unwrap();
//! nfa.add_eps(0, 1).unwrap();
//! nfa.add_transition(1, 0, 2).unwrap();
//!
//! let (dfa, _stats) = determinise(&nfa, ClosureStrategy::PerSubset);
//! assert_eq!(dfa.num_states(), 2);
//! assert!(dfa.accepts(&[0]));
//! assert!(!dfa.accepts(&[]));
//! ```

pub mod bench;
pub mod closure;
pub mod determinize;
mod dfa;
mod error;
pub mod ioformat;
pub mod metrics;
mod nfa;
pub mod oracle;
pub mod randgen;
mod subset;

pub use closure::{closure, eps_transitive_closure, remove_epsilon};
pub use determinize::{determinise, determinise_with, ClosureStrategy, DetOptions, DetStats};
pub use dfa::Dfa;
pub use error::{Error, Result};
pub use metrics::{compute_metrics, Metrics};
pub use nfa::Nfa;
pub use randgen::{generate, GenSpec};
pub use subset::Subset;

/// Identifier of an automaton state. States are numbered densely from zero.
pub type StateId = u32;

/// Identifier of an input symbol. Symbols are numbered densely from zero;
/// ε is never a symbol.
pub type Symbol = u32;
