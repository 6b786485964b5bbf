//! Benchmark harness: sweeps over generation parameters, timing every
//! strategy on the same in-memory automaton.

use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::determinize::{determinise_with, ClosureStrategy, DetOptions, DetStats};
use crate::randgen::{generate_with_report, GenSpec};
use crate::{compute_metrics, remove_epsilon, Dfa, Nfa, Result};

/// Millisecond time source. Must be monotonic.
pub trait Clock {
    fn now_ms(&mut self) -> f64;
}

#[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
pub use native::MonotonicClock;

#[cfg(not(all(target_arch = "wasm32", target_os = "unknown")))]
mod native {
    use std::time::Instant;

    #[derive(Debug, Clone, Copy)]
    pub struct MonotonicClock {
        origin: Instant,
    }

    impl Default for MonotonicClock {
        fn default() -> Self {
            MonotonicClock {
                origin: Instant::now(),
            }
        }
    }

    impl super::Clock for MonotonicClock {
        fn now_ms(&mut self) -> f64 {
            self.origin.elapsed().as_secs_f64() * 1e3
        }
    }
}

/// One benchmark row: one automaton determinised with one strategy.
///
/// `abs_tdensity`/`abs_jdensity` echo the requested densities; the `det_*`
/// columns and the input counts are measured on the generated automaton.
/// Measurement columns are empty when `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub k: usize,
    pub abs_tdensity: f64,
    pub abs_jdensity: f64,
    pub det_tdensity: Option<f64>,
    pub det_jdensity: Option<f64>,
    pub seed: u64,
    pub strategy: ClosureStrategy,
    pub ms: Option<f64>,
    pub out_states: Option<usize>,
    pub out_transitions: Option<usize>,
    pub subsets_created: Option<usize>,
    pub closure_calls: Option<usize>,
    pub memo_hits: Option<usize>,
    pub agenda_peak: Option<usize>,
    pub in_transitions: Option<usize>,
    pub in_jumps: Option<usize>,
    pub repair_edges: Option<usize>,
    /// Position of this strategy in the trial's randomised timing order.
    pub order: usize,
    pub error: String,
}

impl BenchRecord {
    pub fn is_ok(&self) -> bool {
        self.error.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub states: Vec<usize>,
    pub num_symbols: usize,
    /// Absolute transition densities.
    pub tdensities: Vec<f64>,
    /// Absolute jump densities.
    pub jdensities: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    /// Cells whose DFA grows beyond this are recorded as failures.
    pub max_states: Option<usize>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            states: vec![15],
            num_symbols: 15,
            tdensities: vec![0.01, 0.06, 0.11, 0.16, 0.21, 0.26],
            jdensities: vec![0.01, 0.05, 0.09, 0.13, 0.17, 0.21],
            trials: 5,
            seed: 0,
            max_states: Some(1 << 20),
        }
    }
}

impl BenchConfig {
    pub fn num_automata(&self) -> usize {
        self.states.len() * self.tdensities.len() * self.jdensities.len() * self.trials
    }
}

/// Runs `determinise` on `nfa` and returns the output with the elapsed
/// milliseconds. Only the determinisation call is inside the timed region.
pub fn time_strategy(
    nfa: &Nfa,
    strategy: ClosureStrategy,
    options: &DetOptions,
    clock: &mut dyn Clock,
) -> Result<(Dfa, DetStats, f64)> {
    let t0 = clock.now_ms();
    let out = determinise_with(nfa, strategy, options);
    let ms = (clock.now_ms() - t0).max(0.0);
    out.map(|(dfa, stats)| (dfa, stats, ms))
}

/// Runs the full grid sequentially. `on_record` sees every row as soon as
/// it is produced.
pub fn run_bench(
    config: &BenchConfig,
    clock: &mut dyn Clock,
    mut on_record: impl FnMut(&BenchRecord),
) -> Vec<BenchRecord> {
    let mut seeds = ChaCha8Rng::seed_from_u64(config.seed);
    let mut orders = ChaCha8Rng::seed_from_u64(config.seed);
    orders.set_stream(1);
    let options = DetOptions {
        memoise: true,
        max_states: config.max_states,
    };

    let mut records = Vec::with_capacity(config.num_automata() * 3);
    for &n in &config.states {
        for &td in &config.tdensities {
            for &jd in &config.jdensities {
                for _ in 0..config.trials {
                    let spec = GenSpec {
                        num_states: n,
                        num_symbols: config.num_symbols,
                        abs_transition_density: td,
                        abs_jump_density: jd,
                        seed: seeds.next_u64(),
                    };
                    let mut order = ClosureStrategy::ALL;
                    order.shuffle(&mut orders);
                    for row in run_trial(&spec, &order, &options, clock) {
                        on_record(&row);
                        records.push(row);
                    }
                }
            }
        }
    }
    records
}

/// Generates one automaton and times each strategy on it, in `order`.
/// Rows come back in [`ClosureStrategy::ALL`] order.
pub fn run_trial(
    spec: &GenSpec,
    order: &[ClosureStrategy; 3],
    options: &DetOptions,
    clock: &mut dyn Clock,
) -> Vec<BenchRecord> {
    let position = |s: ClosureStrategy| order.iter().position(|&o| o == s).unwrap_or(0);
    let blank = |strategy: ClosureStrategy, error: String| BenchRecord {
        n: spec.num_states,
        k: spec.num_symbols,
        abs_tdensity: spec.abs_transition_density,
        abs_jdensity: spec.abs_jump_density,
        det_tdensity: None,
        det_jdensity: None,
        seed: spec.seed,
        strategy,
        ms: None,
        out_states: None,
        out_transitions: None,
        subsets_created: None,
        closure_calls: None,
        memo_hits: None,
        agenda_peak: None,
        in_transitions: None,
        in_jumps: None,
        repair_edges: None,
        order: position(strategy),
        error,
    };

    let (nfa, report) = match generate_with_report(spec) {
        Ok(x) => x,
        Err(e) => {
            return ClosureStrategy::ALL
                .iter()
                .map(|&s| blank(s, e.to_string()))
                .collect()
        }
    };
    let metrics = compute_metrics(&nfa).expect("generated automata have states");

    let mut rows: Vec<BenchRecord> = ClosureStrategy::ALL
        .iter()
        .map(|&s| BenchRecord {
            det_tdensity: Some(metrics.det_transition_density),
            det_jdensity: Some(metrics.det_jump_density),
            in_transitions: Some(metrics.num_transitions),
            in_jumps: Some(metrics.num_eps_moves),
            repair_edges: Some(report.repair_edges),
            ..blank(s, String::new())
        })
        .collect();
    for &strategy in order {
        let row = &mut rows[ClosureStrategy::ALL.iter().position(|&s| s == strategy).unwrap()];
        match time_strategy(&nfa, strategy, options, clock) {
            Ok((dfa, stats, ms)) => {
                row.ms = Some(ms);
                row.out_states = Some(dfa.num_states());
                row.out_transitions = Some(dfa.num_transitions());
                row.subsets_created = Some(stats.subsets_created);
                row.closure_calls = Some(stats.closure_calls);
                row.memo_hits = Some(stats.memo_hits);
                row.agenda_peak = Some(stats.agenda_peak);
            }
            Err(e) => row.error = e.to_string(),
        }
    }
    rows
}

/// Median and mean time per (states, deterministic jump density, strategy):
/// the points of a "time versus jump density" curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub n: usize,
    pub det_jdensity: f64,
    pub strategy: ClosureStrategy,
    pub count: usize,
    pub median_ms: f64,
    pub mean_ms: f64,
}

/// Groups successful rows by `(n, jump count, strategy)`. Failed rows are
/// left out.
pub fn aggregate(records: &[BenchRecord]) -> Vec<AggregateRow> {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<(usize, usize, ClosureStrategy), Vec<f64>> = BTreeMap::new();
    for r in records {
        if let (true, Some(j), Some(ms)) = (r.is_ok(), r.in_jumps, r.ms) {
            groups.entry((r.n, j, r.strategy)).or_default().push(ms);
        }
    }
    groups
        .into_iter()
        .map(|((n, j, strategy), mut times)| AggregateRow {
            n,
            det_jdensity: j as f64 / n as f64,
            strategy,
            count: times.len(),
            mean_ms: times.iter().sum::<f64>() / times.len() as f64,
            median_ms: median(&mut times),
        })
        .collect()
}

/// Median of a non-empty sample (mean of the middle pair for even sizes).
///
/// # Panics
///
/// On an empty slice.
pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty(), "median of an empty sample");
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

/// Ratio of labelled transitions after and before ε-removal, `None` when
/// the input has no transitions.
pub fn transition_growth(nfa: &Nfa) -> Option<f64> {
    let before = nfa.num_transitions();
    (before > 0).then(|| remove_epsilon(nfa).num_transitions() as f64 / before as f64)
}

/// Median DFA size for ε-free random automata at each deterministic
/// transition density.
pub fn size_sweep(
    num_states: usize,
    num_symbols: usize,
    det_tdensities: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<(f64, f64)>> {
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    det_tdensities
        .iter()
        .map(|&d| {
            let mut sizes = Vec::with_capacity(trials);
            for _ in 0..trials {
                let spec = GenSpec::from_det_densities(num_states, num_symbols, d, 0.0, seeds.next_u64());
                let (nfa, _) = generate_with_report(&spec)?;
                let (dfa, _) = crate::determinise(&nfa, ClosureStrategy::PerSubset);
                sizes.push(dfa.num_states() as f64);
            }
            Ok((d, median(&mut sizes)))
        })
        .collect()
}
