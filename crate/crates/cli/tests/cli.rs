use std::path::PathBuf;

use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("permpat").chain(args.iter().copied());
    let code = permpat_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn profile_of_2143() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "perm.txt", "2 1 4 3\n");
    let (code, out, _) = run(&["profile", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("#2143 = 1\n"));
    assert_eq!(out.lines().filter(|l| l.ends_with("= 1")).count(), 1);
    assert!(out.contains("sum = 1 = C(4,4) ok"));

    let (code, out, _) = run(&[
        "profile",
        "--input",
        p.to_str().unwrap(),
        "--format",
        "records",
    ]);
    assert_eq!(code, 0);
    let records: Vec<&str> = out.lines().collect();
    assert_eq!(records.len(), 1 + 24 + 2);
    assert!(records.contains(&"2143: 1"));
    assert!(records.contains(&"1234: 0"));
    assert!(records.contains(&"sum: 1"));
    assert!(records.contains(&"binomial: 1"));
}

#[test]
fn counting_single_patterns() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "perm.txt", "5 2 4\n6 1 7 3\n");
    let path = p.to_str().unwrap();
    let (_, out, _) = run(&["count-pattern", "--pattern", "3124", "--input", path]);
    assert_eq!(out, "#3124 = 2\n");
    let (_, out, _) = run(&["count-pattern", "--pattern", "312", "--input", path]);
    assert_eq!(out, "#312 = 5\n");
    let (_, out, _) = run(&[
        "count-small",
        "--pattern",
        "132",
        "--input",
        path,
        "--format",
        "records",
    ]);
    assert_eq!(out, "n: 7\n132: 4\n");
    let (code, _, err) = run(&["count-small", "--pattern", "1324", "--input", path]);
    assert_eq!(code, 1);
    assert!(err.contains("length 1 to 3"));
    let (code, _, _) = run(&["count-pattern", "--pattern", "12345", "--input", path]);
    assert_eq!(code, 1);
}

#[test]
fn every_cycle_route_agrees_on_k4() {
    let dir = TempDir::new().unwrap();
    let k4 = file(&dir, "k4.edges", "nodes 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    for algo in ["brute", "codegree", "via-pattern", "via-reductions"] {
        let (code, out, _) = run(&[
            "count-c4",
            "--input",
            k4.to_str().unwrap(),
            "--algo",
            algo,
            "--format",
            "records",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("cycles: 3\n"), "{algo}: {out}");
    }
}

#[test]
fn every_cycle_route_agrees_on_generated_graphs() {
    let dir = TempDir::new().unwrap();
    for seed in 1..6 {
        let s = seed.to_string();
        let cases: [(&[&str], bool); 3] = [
            (
                &["gen", "graph", "--n", "7", "--m", "12", "--seed", &s],
                false,
            ),
            (
                &[
                    "gen",
                    "graph",
                    "--n",
                    "6",
                    "--m",
                    "9",
                    "--seed",
                    &s,
                    "--directed",
                ],
                true,
            ),
            (
                &[
                    "gen",
                    "layered",
                    "--n",
                    "3",
                    "--seed",
                    &s,
                    "--max-mult",
                    "3",
                ],
                false,
            ),
        ];
        for (k, (args, directed)) in cases.iter().enumerate() {
            let (code, text, _) = run(args);
            assert_eq!(code, 0);
            let path = file(&dir, &format!("g{seed}_{k}.txt"), &text);
            let mut answers = Vec::new();
            for algo in ["brute", "codegree", "via-pattern", "via-reductions"] {
                let mut argv = vec![
                    "count-c4",
                    "--input",
                    path.to_str().unwrap(),
                    "--algo",
                    algo,
                    "--format",
                    "records",
                ];
                if *directed {
                    argv.push("--directed");
                }
                let (code, out, err) = run(&argv);
                assert_eq!(code, 0, "{err}");
                answers.push(out.lines().last().unwrap().to_string());
            }
            assert!(answers.iter().all(|a| a == &answers[0]), "{answers:?}");
        }
    }
}

#[test]
fn generators_are_deterministic() {
    let a = run(&["gen", "perm", "--n", "20", "--seed", "9"]);
    let b = run(&["gen", "perm", "--n", "20", "--seed", "9"]);
    assert_eq!(a, b);
    let c = run(&["gen", "perm", "--n", "20", "--seed", "10"]);
    assert_ne!(a.1, c.1);
    let mut values: Vec<u32> = a.1.split_whitespace().map(|t| t.parse().unwrap()).collect();
    values.sort_unstable();
    assert_eq!(values, (1..=20).collect::<Vec<_>>());
}

#[test]
fn same_input_same_bytes() {
    let dir = TempDir::new().unwrap();
    let (_, text, _) = run(&["gen", "perm", "--n", "300", "--seed", "4"]);
    let p = file(&dir, "perm.txt", &text);
    let first = run(&[
        "profile",
        "--input",
        p.to_str().unwrap(),
        "--format",
        "records",
    ]);
    let second = run(&[
        "profile",
        "--input",
        p.to_str().unwrap(),
        "--format",
        "records",
    ]);
    assert_eq!(first, second);
    let (_, tau, _) = run(&["tau-star", "--input", p.to_str().unwrap()]);
    assert!(tau.starts_with("tau* = "));
}

#[test]
fn exhaustive_verification_passes() {
    let (code, out, _) = run(&["verify", "--mode", "profile", "--n", "7", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(out, "verify profile: PASS (5040 checks)\n");
    for mode in ["shapes", "reductions", "cycles"] {
        let (code, out, _) = run(&["verify", "--mode", mode, "--seeds", "10"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("PASS"));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["profile"]).0, 1);
    assert_eq!(run(&["profile", "--input", "x", "--bogus"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);

    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.txt", "1 2\n3 x\n");
    let (code, _, err) = run(&["profile", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let dup = file(&dir, "dup.txt", "1 2 2\n");
    assert_eq!(run(&["profile", "--input", dup.to_str().unwrap()]).0, 2);
    let missing = dir.path().join("missing.txt");
    assert_eq!(run(&["profile", "--input", missing.to_str().unwrap()]).0, 2);
    let edges = file(&dir, "bad.edges", "nodes 3\n0 1\n1 1\n");
    let (code, _, err) = run(&["count-c4", "--input", edges.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    let short = file(&dir, "short.txt", "2 1 3\n");
    assert_eq!(run(&["tau-star", "--input", short.to_str().unwrap()]).0, 2);
}

#[test]
fn bench_reports_a_slope() {
    let (code, out, _) = run(&[
        "bench", "--algo", "trivial", "--min-n", "100", "--max-n", "1000", "--format", "records",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("seconds.100: "));
    assert!(out.contains("seconds.1000: "));
    assert!(out.lines().any(|l| l.starts_with("slope: ")));
}
