//! Transition and jump densities of an automaton.

use serde::{Deserialize, Serialize};

use crate::{Error, Nfa, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub num_states: usize,
    pub num_symbols: usize,
    /// Labelled `(q, a, q')` triples.
    pub num_transitions: usize,
    pub num_eps_moves: usize,
    /// transitions / (states² × symbols)
    pub abs_transition_density: f64,
    /// transitions / (states × symbols)
    pub det_transition_density: f64,
    /// ε-moves / states²
    pub abs_jump_density: f64,
    /// ε-moves / states, i.e. the mean ε out-degree
    pub det_jump_density: f64,
}

/// Computes the four densities of `nfa`.
///
/// With zero symbols both transition densities are reported as 0 (there are
/// no possible transitions and none present).
pub fn compute_metrics(nfa: &Nfa) -> Result<Metrics> {
    let n = nfa.num_states();
    if n == 0 {
        return Err(Error::NoStates);
    }
    let k = nfa.num_symbols();
    let t = nfa.num_transitions();
    let j = nfa.num_eps_moves();
    let nf = n as f64;
    let (abs_t, det_t) = if k == 0 {
        (0.0, 0.0)
    } else {
        let kf = k as f64;
        (t as f64 / (nf * nf * kf), t as f64 / (nf * kf))
    };
    Ok(Metrics {
        num_states: n,
        num_symbols: k,
        num_transitions: t,
        num_eps_moves: j,
        abs_transition_density: abs_t,
        det_transition_density: det_t,
        abs_jump_density: j as f64 / (nf * nf),
        det_jump_density: j as f64 / nf,
    })
}
