//! Browser bindings for the determinisation demo page in `www/`.
//!
//! Every exported function returns a JSON string. The `*_report` functions
//! hold the logic and run natively as well, which is how they are tested.

use fsadet::bench::{aggregate, run_bench, size_sweep, time_strategy, AggregateRow, BenchConfig, Clock};
use fsadet::determinize::{ClosureStrategy, DetOptions, DetStats};
use fsadet::ioformat::{serialise, serialise_dfa};
use fsadet::randgen::generate_with_report;
use fsadet::{compute_metrics, GenSpec, Metrics};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// DFA size at which the page gives up on an automaton.
pub const MAX_DFA_STATES: usize = 200_000;

/// Longest automaton text shipped back to the page.
const MAX_TEXT: usize = 20_000;

/// `performance.now()`, falling back to `Date.now()`.
struct PerformanceClock {
    now: Option<js_sys::Function>,
    performance: JsValue,
}

impl PerformanceClock {
    fn new() -> Self {
        let performance = js_sys::Reflect::get(&js_sys::global(), &"performance".into()).unwrap_or(JsValue::UNDEFINED);
        let now = if performance.is_object() {
            js_sys::Reflect::get(&performance, &"now".into())
                .ok()
                .and_then(|f| f.dyn_into::<js_sys::Function>().ok())
        } else {
            None
        };
        PerformanceClock { now, performance }
    }
}

impl Clock for PerformanceClock {
    fn now_ms(&mut self) -> f64 {
        self.now
            .as_ref()
            .and_then(|f| f.call0(&self.performance).ok())
            .and_then(|v| v.as_f64())
            .unwrap_or_else(js_sys::Date::now)
    }
}

#[derive(Debug, Serialize)]
pub struct StrategyRun {
    pub strategy: ClosureStrategy,
    pub ms: f64,
    pub out_states: usize,
    pub out_transitions: usize,
    pub stats: DetStats,
}

#[derive(Debug, Serialize)]
pub struct Exploration {
    pub spec: GenSpec,
    pub metrics: Metrics,
    pub repair_edges: usize,
    pub runs: Vec<StrategyRun>,
    pub nfa_text: String,
    pub dfa_text: String,
    pub truncated: bool,
}

fn clip(text: String) -> (String, bool) {
    if text.len() <= MAX_TEXT {
        (text, false)
    } else {
        let cut = text[..MAX_TEXT].rfind('\n').map_or(0, |i| i + 1);
        (text[..cut].to_owned(), true)
    }
}

/// Generates one automaton and determinises it with every strategy.
pub fn explore_report(spec: GenSpec, clock: &mut dyn Clock) -> Result<Exploration, String> {
    let (nfa, report) = generate_with_report(&spec).map_err(|e| e.to_string())?;
    let metrics = compute_metrics(&nfa).map_err(|e| e.to_string())?;
    let options = DetOptions {
        memoise: true,
        max_states: Some(MAX_DFA_STATES),
    };
    let mut runs = Vec::new();
    let mut dfa_text = String::new();
    for strategy in ClosureStrategy::ALL {
        let (dfa, stats, ms) = time_strategy(&nfa, strategy, &options, clock).map_err(|e| e.to_string())?;
        if dfa_text.is_empty() {
            dfa_text = serialise_dfa(&dfa);
        }
        runs.push(StrategyRun {
            strategy,
            ms,
            out_states: dfa.num_states(),
            out_transitions: dfa.num_transitions(),
            stats,
        });
    }
    let (nfa_text, t1) = clip(serialise(&nfa));
    let (dfa_text, t2) = clip(dfa_text);
    Ok(Exploration {
        spec,
        metrics,
        repair_edges: report.repair_edges,
        runs,
        nfa_text,
        dfa_text,
        truncated: t1 || t2,
    })
}

/// Median time per deterministic jump density and strategy.
pub fn crossover_report(
    states: usize,
    symbols: usize,
    tdensities: &[f64],
    det_jdensities: &[f64],
    trials: usize,
    seed: u64,
    clock: &mut dyn Clock,
) -> Result<Vec<AggregateRow>, String> {
    if states == 0 {
        return Err("at least one state is required".into());
    }
    let config = BenchConfig {
        states: vec![states],
        num_symbols: symbols,
        tdensities: tdensities.to_vec(),
        jdensities: det_jdensities.iter().map(|d| d / states as f64).collect(),
        trials,
        seed,
        max_states: Some(MAX_DFA_STATES),
    };
    let records = run_bench(&config, clock, |_| {});
    if let Some(bad) = records.iter().find(|r| !r.is_ok()) {
        return Err(bad.error.clone());
    }
    Ok(aggregate(&records))
}

#[derive(Debug, Serialize)]
pub struct SizePoint {
    pub det_tdensity: f64,
    pub median_states: f64,
}

/// Median DFA size of ε-free automata per deterministic transition density.
pub fn size_curve_report(
    states: usize,
    symbols: usize,
    det_tdensities: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<SizePoint>, String> {
    let curve = size_sweep(states, symbols, det_tdensities, trials, seed).map_err(|e| e.to_string())?;
    Ok(curve
        .into_iter()
        .map(|(det_tdensity, median_states)| SizePoint {
            det_tdensity,
            median_states,
        })
        .collect())
}

fn to_json<T: Serialize>(result: Result<T, String>) -> Result<String, JsValue> {
    result
        .and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn explore(states: usize, symbols: usize, tdensity: f64, jdensity: f64, seed: u64) -> Result<String, JsValue> {
    let spec = GenSpec {
        num_states: states,
        num_symbols: symbols,
        abs_transition_density: tdensity,
        abs_jump_density: jdensity,
        seed,
    };
    to_json(explore_report(spec, &mut PerformanceClock::new()))
}

#[wasm_bindgen]
pub fn crossover(
    states: usize,
    symbols: usize,
    tdensities: Vec<f64>,
    det_jdensities: Vec<f64>,
    trials: usize,
    seed: u64,
) -> Result<String, JsValue> {
    to_json(crossover_report(
        states,
        symbols,
        &tdensities,
        &det_jdensities,
        trials,
        seed,
        &mut PerformanceClock::new(),
    ))
}

#[wasm_bindgen]
pub fn size_curve(
    states: usize,
    symbols: usize,
    det_tdensities: Vec<f64>,
    trials: usize,
    seed: u64,
) -> Result<String, JsValue> {
    to_json(size_curve_report(states, symbols, &det_tdensities, trials, seed))
}
