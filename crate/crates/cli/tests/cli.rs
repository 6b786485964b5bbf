use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn fsadet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsadet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn count_lines(text: &str, prefix: &str) -> usize {
    text.lines().filter(|l| l.starts_with(prefix)).count()
}

#[test]
fn generate_writes_forced_counts_reproducibly() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.fsa");
    let b = dir.path().join("b.fsa");
    for out in [&a, &b] {
        let o = fsadet(&[
            "generate", "--states", "15", "--symbols", "15", "--tdensity", "0.1", "--jdensity", "0.05", "--seed",
            "7", "--out", path_str(out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(count_lines(&text, "t "), 338);
    assert_eq!(count_lines(&text, "e "), 11);
    assert_eq!(text, fs::read_to_string(&b).unwrap());
}

#[test]
fn generate_rejects_density_above_one() {
    let o = fsadet(&["generate", "--states", "5", "--symbols", "2", "--tdensity", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside [0, 1]"));
}

#[test]
fn all_strategies_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.fsa");
    fs::write(&input, "fsa 3 1\ns 0\nf 2\nt 1 0 2\ne 0 1\n").unwrap();
    let mut outputs = Vec::new();
    for strategy in ["per-graph", "per-state", "per-subset"] {
        let out = dir.path().join(format!("{strategy}.fsa"));
        let o = fsadet(&["determinize", "--strategy", strategy, "--in", path_str(&input), "--out", path_str(&out), "--stats"]);
        assert!(o.status.success());
        let stats = String::from_utf8_lossy(&o.stderr);
        assert!(stats.contains("output states    2"), "{stats}");
        outputs.push(fs::read_to_string(&out).unwrap());
    }
    assert_eq!(outputs[0], "fsa 2 1\ns 0\nf 1\nt 0 0 1\n");
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn unknown_strategy_is_a_usage_error() {
    let o = fsadet(&["determinize", "--strategy", "bogus", "--in", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.fsa");
    fs::write(&input, "fsa 3 2\nt 5 0 1\n").unwrap();
    let o = fsadet(&["determinize", "--strategy", "per-state", "--in", path_str(&input)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn att_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.att");
    fs::write(&input, "0 1 <eps>\n1 2 x\n2\n").unwrap();
    let o = fsadet(&["determinize", "--strategy", "per-subset", "--att", "--in", path_str(&input)]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout), "fsa 2 1\ns 0\nf 1\nt 0 0 1\n");
}

#[test]
fn stats_prints_densities() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("g.fsa");
    let o = fsadet(&[
        "generate", "--states", "15", "--symbols", "15", "--tdensity", "0.1", "--jdensity", "0.24", "--out",
        path_str(&input),
    ]);
    assert!(o.status.success());
    let o = fsadet(&["stats", "--in", path_str(&input)]);
    assert!(o.status.success());
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("det_jump_density       3.6\n"), "{out}");
    assert!(out.contains("jumps                  54\n"));
}

#[test]
fn equiv_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.fsa");
    let y = dir.path().join("y.fsa");
    let z = dir.path().join("z.fsa");
    fs::write(&x, "fsa 3 1\ns 0\nf 2\nt 1 0 2\ne 0 1\n").unwrap();
    fs::write(&y, "fsa 2 1\ns 0\nf 1\nt 0 0 1\n").unwrap();
    fs::write(&z, "fsa 1 1\ns 0\nf 0\nt 0 0 0\n").unwrap();
    assert_eq!(fsadet(&["equiv", path_str(&x), path_str(&x)]).status.code(), Some(0));
    assert_eq!(fsadet(&["equiv", path_str(&x), path_str(&y)]).status.code(), Some(0));
    let o = fsadet(&["equiv", path_str(&x), path_str(&z)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("witness: []"));
}

#[test]
fn rmeps_reports_growth() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("g.fsa");
    let out = dir.path().join("r.fsa");
    assert!(fsadet(&[
        "generate", "--states", "50", "--symbols", "5", "--tdensity", "0.02", "--jdensity", "0.04", "--seed", "3",
        "--out", path_str(&input),
    ])
    .status
    .success());
    let o = fsadet(&["rmeps", "--in", path_str(&input), "--out", path_str(&out)]);
    assert!(o.status.success());
    let msg = String::from_utf8_lossy(&o.stderr);
    let factor: f64 = msg.rsplit(' ').next().unwrap().trim().parse().unwrap();
    assert!(factor > 1.0, "{msg}");
    assert_eq!(count_lines(&fs::read_to_string(&out).unwrap(), "e "), 0);
    assert_eq!(fsadet(&["equiv", path_str(&input), path_str(&out)]).status.code(), Some(0));
}

#[test]
fn bench_grid_and_aggregate() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let o = fsadet(&[
        "bench", "--states", "15", "--symbols", "15", "--tdensities", "0.01:0.3:0.05", "--jdensities",
        "0.01:0.24:0.04", "--trials", "3", "--seed", "1", "--out", path_str(&csv),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,k,abs_tdensity,abs_jdensity,det_tdensity,det_jdensity,seed,strategy,ms,"));
    assert_eq!(text.lines().count() - 1, 3 * 6 * 6 * 3);

    let agg = fs::read_to_string(dir.path().join("bench.agg.csv")).unwrap();
    // six distinct jump counts, three strategies
    assert_eq!(agg.lines().count() - 1, 6 * 3);
    assert!(agg.starts_with("n,det_jdensity,strategy,count,median_ms,mean_ms\n"));

    // same seed: identical non-timing columns
    let csv2 = dir.path().join("bench2.csv");
    assert!(fsadet(&[
        "bench", "--states", "15", "--symbols", "15", "--tdensities", "0.01:0.3:0.05", "--jdensities",
        "0.01:0.24:0.04", "--trials", "3", "--seed", "1", "--out", path_str(&csv2),
    ])
    .status
    .success());
    let strip = |t: &str| -> Vec<String> {
        t.lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f[8] = "";
                f.join(",")
            })
            .collect()
    };
    assert_eq!(strip(&text), strip(&fs::read_to_string(&csv2).unwrap()));
}

#[test]
fn bench_with_deterministic_jump_densities() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let o = fsadet(&[
        "bench", "--states", "20", "--symbols", "3", "--tdensities", "0.05", "--det-jdensities", "0.5,2", "--trials",
        "2", "--out", path_str(&csv),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let agg = fs::read_to_string(dir.path().join("b.agg.csv")).unwrap();
    assert!(agg.contains("20,0.5,per-graph,2,"));
    assert!(agg.contains("20,2.0,per-subset,2,") || agg.contains("20,2,per-subset,2,"), "{agg}");
}
