//! Seeded random NFAs with ε-moves, parameterised by densities.
//!
//! Labelled transitions and ε-moves are drawn as exact counts, uniformly
//! without replacement, so the measured densities match the requested ones
//! up to rounding. All randomness comes from ChaCha8 seeded with
//! [`GenSpec::seed`]; each generation phase reads its own ChaCha stream, so
//! the phases never perturb one another.

use std::collections::VecDeque;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Nfa, Result, StateId, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub num_states: usize,
    pub num_symbols: usize,
    /// Fraction of the `states² × symbols` possible transitions present.
    pub abs_transition_density: f64,
    /// Fraction of the `states²` possible ε-moves present.
    pub abs_jump_density: f64,
    pub seed: u64,
}

impl GenSpec {
    /// Builds a spec from deterministic densities (per-state averages).
    pub fn from_det_densities(
        num_states: usize,
        num_symbols: usize,
        det_transition_density: f64,
        det_jump_density: f64,
        seed: u64,
    ) -> Self {
        let n = num_states.max(1) as f64;
        GenSpec {
            num_states,
            num_symbols,
            abs_transition_density: det_transition_density / n,
            abs_jump_density: det_jump_density / n,
            seed,
        }
    }

    /// Number of labelled transitions to sample.
    pub fn target_transitions(&self) -> usize {
        round_half_up(self.abs_transition_density * self.transition_space() as f64)
    }

    /// Number of ε-moves to sample.
    pub fn target_jumps(&self) -> usize {
        let n = self.num_states as f64;
        round_half_up(self.abs_jump_density * n * n)
    }

    fn transition_space(&self) -> usize {
        self.num_states * self.num_states * self.num_symbols
    }

    /// ε-self-loops are excluded from the sample space.
    fn jump_space(&self) -> usize {
        self.num_states * self.num_states.saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InfeasibleSpec(msg));
        if self.num_states == 0 {
            return bad("at least one state is required".into());
        }
        if self.num_symbols == 0 {
            return bad("at least one symbol is required".into());
        }
        for (name, d) in [
            ("transition density", self.abs_transition_density),
            ("jump density", self.abs_jump_density),
        ] {
            if !(0.0..=1.0).contains(&d) {
                return bad(format!("{name} {d} outside [0, 1]"));
            }
        }
        if self.target_transitions() > self.transition_space() {
            return bad(format!(
                "{} transitions requested but only {} are possible",
                self.target_transitions(),
                self.transition_space()
            ));
        }
        if self.target_jumps() > self.jump_space() {
            return bad(format!(
                "{} ε-moves requested but only {} are possible without self-loops",
                self.target_jumps(),
                self.jump_space()
            ));
        }
        Ok(())
    }
}

fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

/// What the generator did beyond sampling the requested counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GenReport {
    pub target_transitions: usize,
    pub target_jumps: usize,
    /// Transitions added to make every state reachable from state 0.
    pub repair_edges: usize,
}

#[derive(Clone, Copy)]
#[repr(u64)]
enum Phase {
    Transitions = 1,
    Jumps = 2,
    Finals = 3,
    Repair = 4,
}

fn phase_rng(seed: u64, phase: Phase) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(phase as u64);
    rng
}

/// Generates a random automaton. Start state is 0 and every state is
/// reachable from it.
pub fn generate(spec: &GenSpec) -> Result<Nfa> {
    generate_with_report(spec).map(|(nfa, _)| nfa)
}

pub fn generate_with_report(spec: &GenSpec) -> Result<(Nfa, GenReport)> {
    spec.validate()?;
    let n = spec.num_states;
    let k = spec.num_symbols;
    let mut nfa = Nfa::new(n, k);
    nfa.add_start(0)?;

    let target_transitions = spec.target_transitions();
    let mut rng = phase_rng(spec.seed, Phase::Transitions);
    for i in sorted_sample(&mut rng, spec.transition_space(), target_transitions) {
        let src = i / (n * k);
        let sym = (i / n) % k;
        let dst = i % n;
        nfa.add_transition(src as StateId, sym as Symbol, dst as StateId)?;
    }

    let target_jumps = spec.target_jumps();
    let mut rng = phase_rng(spec.seed, Phase::Jumps);
    for i in sorted_sample(&mut rng, spec.jump_space(), target_jumps) {
        let src = i / (n - 1);
        let r = i % (n - 1);
        let dst = if r < src { r } else { r + 1 };
        nfa.add_eps(src as StateId, dst as StateId)?;
    }

    let mut rng = phase_rng(spec.seed, Phase::Finals);
    loop {
        let finals: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        if finals.iter().any(|&f| f) {
            for (q, _) in finals.iter().enumerate().filter(|(_, f)| **f) {
                nfa.add_final(q as StateId)?;
            }
            break;
        }
    }

    let mut rng = phase_rng(spec.seed, Phase::Repair);
    let repair_edges = repair_reachability(&mut nfa, &mut rng);

    Ok((
        nfa,
        GenReport {
            target_transitions,
            target_jumps,
            repair_edges,
        },
    ))
}

/// Sample of `amount` distinct indices below `length`, ascending.
fn sorted_sample(rng: &mut ChaCha8Rng, length: usize, amount: usize) -> Vec<usize> {
    let mut v = index::sample(rng, length, amount).into_vec();
    v.sort_unstable();
    v
}

fn successors(nfa: &Nfa) -> Vec<Vec<StateId>> {
    let mut succ = vec![Vec::new(); nfa.num_states()];
    for (src, _, dst) in nfa.transition_triples() {
        succ[src as usize].push(dst);
    }
    for (src, dst) in nfa.eps_moves() {
        succ[src as usize].push(dst);
    }
    succ
}

/// Connects each state unreachable from 0, in ascending order, by one
/// transition on a random symbol from a random reachable state.
fn repair_reachability(nfa: &mut Nfa, rng: &mut ChaCha8Rng) -> usize {
    let n = nfa.num_states();
    let mut succ = successors(nfa);
    let mut reached = vec![false; n];
    let mut reachable: Vec<StateId> = Vec::new();
    visit(0, &succ, &mut reached, &mut reachable);

    let mut added = 0;
    for q in 0..n as StateId {
        if reached[q as usize] {
            continue;
        }
        let src = reachable[rng.random_range(0..reachable.len())];
        let sym = rng.random_range(0..nfa.num_symbols()) as Symbol;
        nfa.add_transition(src, sym, q).expect("ids in range");
        succ[src as usize].push(q);
        added += 1;
        visit(q, &succ, &mut reached, &mut reachable);
    }
    added
}

fn visit(from: StateId, succ: &[Vec<StateId>], reached: &mut [bool], reachable: &mut Vec<StateId>) {
    let mut queue = VecDeque::from([from]);
    reached[from as usize] = true;
    reachable.push(from);
    while let Some(q) = queue.pop_front() {
        for &r in &succ[q as usize] {
            if !reached[r as usize] {
                reached[r as usize] = true;
                reachable.push(r);
                queue.push_back(r);
            }
        }
    }
}

/// States reachable from the start states over transitions and ε-moves.
pub fn reachable_states(nfa: &Nfa) -> Vec<bool> {
    let succ = successors(nfa);
    let mut reached = vec![false; nfa.num_states()];
    let mut queue: VecDeque<StateId> = nfa.starts().iter().copied().collect();
    for &s in nfa.starts() {
        reached[s as usize] = true;
    }
    while let Some(q) = queue.pop_front() {
        for &r in &succ[q as usize] {
            if !reached[r as usize] {
                reached[r as usize] = true;
                queue.push_back(r);
            }
        }
    }
    reached
}
