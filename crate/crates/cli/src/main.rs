//! `fsadet`: generate, determinise and benchmark finite automata.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fsadet::bench::{self, BenchConfig, Clock, MonotonicClock};
use fsadet::determinize::{ClosureStrategy, DetOptions};
use fsadet::ioformat::{self, write_csv};
use fsadet::{compute_metrics, oracle, randgen, remove_epsilon, GenSpec, Nfa};

mod grid;

#[derive(Parser)]
#[command(name = "fsadet", version, about = "Subset construction with three ε-move strategies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random automaton.
    Generate(GenerateArgs),
    /// Determinise an automaton file.
    #[command(alias = "determinise")]
    Determinize(DeterminizeArgs),
    /// Time all three strategies over a grid of random automata.
    Bench(BenchArgs),
    /// Print counts and densities of an automaton.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Decide whether two automaton files accept the same language.
    Equiv { a: PathBuf, b: PathBuf },
    /// Remove ε-moves.
    Rmeps {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    states: usize,
    #[arg(long)]
    symbols: usize,
    /// Absolute transition density.
    #[arg(long)]
    tdensity: f64,
    /// Absolute jump density.
    #[arg(long, default_value_t = 0.0)]
    jdensity: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DeterminizeArgs {
    #[arg(long, value_parser = parse_strategy)]
    strategy: ClosureStrategy,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print sizes, work counters and timing to stderr.
    #[arg(long)]
    stats: bool,
    /// Read the input as AT&T-style `src dst label` text.
    #[arg(long)]
    att: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// State counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "15")]
    states: Vec<usize>,
    #[arg(long, default_value_t = 15)]
    symbols: usize,
    /// Absolute transition densities: values or `start:stop:step` ranges.
    #[arg(long, value_delimiter = ',', default_value = "0.01:0.3:0.05")]
    tdensities: Vec<String>,
    /// Absolute jump densities: values or `start:stop:step` ranges.
    #[arg(long, value_delimiter = ',', default_value = "0.01:0.24:0.04", conflicts_with = "det_jdensities")]
    jdensities: Vec<String>,
    /// Deterministic jump densities (ε-moves per state) instead of absolute ones.
    #[arg(long, value_delimiter = ',')]
    det_jdensities: Option<Vec<String>>,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record a cell as failed once its DFA exceeds this many states.
    #[arg(long, default_value_t = 1 << 20)]
    max_states: usize,
    #[arg(long)]
    out: PathBuf,
    /// Aggregate output; defaults to the CSV path with `.agg.csv`.
    #[arg(long)]
    aggregate: Option<PathBuf>,
}

fn parse_strategy(s: &str) -> Result<ClosureStrategy, String> {
    s.parse().map_err(|e: fsadet::determinize::UnknownStrategy| e.to_string())
}

fn read_automaton(path: &Path, att: bool) -> Result<Nfa> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if att {
        Ok(ioformat::parse_att(&text)
            .with_context(|| format!("parsing {}", path.display()))?
            .nfa)
    } else {
        ioformat::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn generate(args: GenerateArgs) -> Result<()> {
    let spec = GenSpec {
        num_states: args.states,
        num_symbols: args.symbols,
        abs_transition_density: args.tdensity,
        abs_jump_density: args.jdensity,
        seed: args.seed,
    };
    let (nfa, report) = randgen::generate_with_report(&spec)?;
    if report.repair_edges > 0 {
        eprintln!("added {} transitions to make every state reachable", report.repair_edges);
    }
    write_output(args.out.as_deref(), &ioformat::serialise(&nfa))
}

fn determinize(args: DeterminizeArgs) -> Result<()> {
    let nfa = read_automaton(&args.input, args.att)?;
    let mut clock = MonotonicClock::default();
    let (dfa, stats, ms) = bench::time_strategy(&nfa, args.strategy, &DetOptions::default(), &mut clock)?;
    write_output(args.out.as_deref(), &ioformat::serialise_dfa(&dfa))?;
    if args.stats {
        eprintln!("strategy         {}", args.strategy);
        eprintln!("input states     {}", nfa.num_states());
        eprintln!("input trans      {}", nfa.num_transitions());
        eprintln!("input jumps      {}", nfa.num_eps_moves());
        eprintln!("output states    {}", dfa.num_states());
        eprintln!("output trans     {}", dfa.num_transitions());
        eprintln!("subsets created  {}", stats.subsets_created);
        eprintln!("closure calls    {}", stats.closure_calls);
        eprintln!("memo hits        {}", stats.memo_hits);
        eprintln!("agenda peak      {}", stats.agenda_peak);
        eprintln!("time ms          {ms:.3}");
    }
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<()> {
    let tdensities = grid::expand(&args.tdensities)?;
    let jdensities = match &args.det_jdensities {
        Some(det) => {
            if args.states.len() != 1 {
                bail!("--det-jdensities needs exactly one --states value");
            }
            let n = args.states[0] as f64;
            grid::expand(det)?.into_iter().map(|d| d / n).collect()
        }
        None => grid::expand(&args.jdensities)?,
    };
    let config = BenchConfig {
        states: args.states,
        num_symbols: args.symbols,
        tdensities,
        jdensities,
        trials: args.trials,
        seed: args.seed,
        max_states: Some(args.max_states),
    };
    let total = config.num_automata();
    let mut done = 0;
    let mut clock = MonotonicClock::default();
    let records = bench::run_bench(&config, &mut clock as &mut dyn Clock, |r| {
        if r.order == 2 {
            done += 1;
            if done % 50 == 0 || done == total {
                eprintln!("{done}/{total} automata");
            }
        }
    });
    let failures = records.iter().filter(|r| !r.is_ok()).count();
    if failures > 0 {
        eprintln!("{failures} rows recorded an error");
    }

    let file = fs::File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    write_csv(io::BufWriter::new(file), &records)?;
    let agg_path = args.aggregate.unwrap_or_else(|| args.out.with_extension("agg.csv"));
    let file = fs::File::create(&agg_path).with_context(|| format!("creating {}", agg_path.display()))?;
    write_csv(io::BufWriter::new(file), &bench::aggregate(&records))?;
    eprintln!("wrote {} and {}", args.out.display(), agg_path.display());
    Ok(())
}

fn stats(input: &Path) -> Result<()> {
    let nfa = read_automaton(input, false)?;
    let m = compute_metrics(&nfa)?;
    println!("states                 {}", m.num_states);
    println!("symbols                {}", m.num_symbols);
    println!("transitions            {}", m.num_transitions);
    println!("jumps                  {}", m.num_eps_moves);
    println!("starts                 {}", nfa.starts().len());
    println!("finals                 {}", nfa.finals().len());
    println!("abs_transition_density {}", m.abs_transition_density);
    println!("det_transition_density {}", m.det_transition_density);
    println!("abs_jump_density       {}", m.abs_jump_density);
    println!("det_jump_density       {}", m.det_jump_density);
    Ok(())
}

fn equiv(a: &Path, b: &Path) -> Result<bool> {
    let (a, b) = (read_automaton(a, false)?, read_automaton(b, false)?);
    let (da, _) = fsadet::determinise(&a, ClosureStrategy::PerSubset);
    let (db, _) = fsadet::determinise(&b, ClosureStrategy::PerSubset);
    match oracle::distinguishing_word(&da, &db)? {
        None => {
            println!("equivalent");
            Ok(true)
        }
        Some(word) => {
            let word: Vec<String> = word.iter().map(u32::to_string).collect();
            println!("not equivalent; witness: [{}]", word.join(" "));
            Ok(false)
        }
    }
}

fn rmeps(input: &Path, out: Option<&Path>) -> Result<()> {
    let nfa = read_automaton(input, false)?;
    let eps_free = remove_epsilon(&nfa);
    write_output(out, &ioformat::serialise(&eps_free))?;
    let (before, after) = (nfa.num_transitions(), eps_free.num_transitions());
    match bench::transition_growth(&nfa) {
        Some(g) => eprintln!("transitions {before} -> {after}, growth factor {g:.3}"),
        None => eprintln!("transitions {before} -> {after}, growth factor n/a"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a).map(|_| true),
        Command::Determinize(a) => determinize(a).map(|_| true),
        Command::Bench(a) => run_bench(a).map(|_| true),
        Command::Stats { input } => stats(&input).map(|_| true),
        Command::Equiv { a, b } => equiv(&a, &b),
        Command::Rmeps { input, out } => rmeps(&input, out.as_deref()).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
