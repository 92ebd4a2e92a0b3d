use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const DESK_TSPTW: &str = "3\n0 2 3\n2 0 1\n3 1 0\n0 10\n0 10\n0 10\n";

fn didp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_didp"))
        .args(args)
        .env_remove("DIDP_CONFIG")
        .output()
        .unwrap()
}

fn fixture(name: &str) -> String {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/tsptw");
    dir.join(name).to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Shortest closed tour from depot 0 through every customer, by enumeration
/// (windows in the desk instance never bind).
fn brute_force_tour(c: &[Vec<i64>]) -> i64 {
    fn go(c: &[Vec<i64>], at: usize, left: &mut Vec<usize>) -> i64 {
        if left.is_empty() {
            return c[at][0];
        }
        let mut best = i64::MAX;
        for k in 0..left.len() {
            let j = left.remove(k);
            best = best.min(c[at][j] + go(c, j, left));
            left.insert(k, j);
        }
        best
    }
    go(c, 0, &mut (1..c.len()).collect())
}

fn convert_desk(dir: &tempfile::TempDir) -> (PathBuf, PathBuf) {
    let input = path(dir, "desk.txt");
    fs::write(&input, DESK_TSPTW).unwrap();
    let (d, p) = (path(dir, "domain.yaml"), path(dir, "problem.yaml"));
    let o = didp(&["convert", "--class", "tsptw", "--input", s(&input), "--domain", s(&d), "--problem", s(&p)]);
    assert!(o.status.success(), "{}", stderr(&o));
    (d, p)
}

#[test]
fn solves_the_fixture_to_optimality() {
    let dir = tempfile::tempdir().unwrap();
    let config = path(&dir, "cabs.yaml");
    fs::write(&config, "{solver: cabs}\n").unwrap();
    let out = path(&dir, "solution.txt");
    let report = path(&dir, "report.json");
    let o = didp(&[
        "solve", "--domain", &fixture("domain.yaml"), "--problem", &fixture("problem.yaml"),
        "--config", s(&config), "--output", s(&out), "--report", s(&report), "--reference", "14",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("status: optimal\ncost: 14\nbound: 14\ntransitions: 3\n"), "{}", text);

    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(report["instance"], "problem");
    assert_eq!(report["solver"], "cabs");
    assert_eq!(report["gap"], 0.0);
    assert_eq!(report["params"]["bound"], "model");
    let integral = report["primal_integral"].as_f64().unwrap();
    assert!((0.0..=report["horizon"].as_f64().unwrap()).contains(&integral));
}

#[test]
fn flags_override_the_environment_and_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = path(&dir, "env.yaml");
    fs::write(&config, "{solver: nosuch}\n").unwrap();
    let run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_didp"))
            .args(["solve", "--domain", &fixture("domain.yaml"), "--problem", &fixture("problem.yaml"), "--quiet"])
            .args(extra)
            .env("DIDP_CONFIG", &config)
            .output()
            .unwrap()
    };
    let o = run(&[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("nosuch"), "{}", stderr(&o));

    let other = path(&dir, "flag.yaml");
    fs::write(&other, "{solver: dfbnb}\n").unwrap();
    assert_eq!(run(&["--config", s(&other)]).status.code(), Some(0));

    fs::write(&config, "{solver: caasdy, time_limit: 0}\n").unwrap();
    assert_eq!(run(&[]).status.code(), Some(3));
    assert_eq!(run(&["--time-limit", "60"]).status.code(), Some(0));
    assert_eq!(run(&["--time-limit", "-1"]).status.code(), Some(1));
}

#[test]
fn bad_yaml_exits_nonzero_and_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let domain = fs::read_to_string(fixture("domain.yaml")).unwrap().replacen("reduce: min", "reduse: min", 1);
    let d = path(&dir, "domain.yaml");
    fs::write(&d, domain).unwrap();
    let o = didp(&["solve", "--domain", s(&d), "--problem", &fixture("problem.yaml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("reduse"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());

    let config = path(&dir, "config.yaml");
    fs::write(&config, "{solver: cabs, tme_limit: 3}\n").unwrap();
    let o = didp(&["solve", "--domain", &fixture("domain.yaml"), "--problem", &fixture("problem.yaml"), "--config", s(&config)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("tme_limit"), "{}", stderr(&o));

    let o = didp(&["solve", "--domain", &fixture("domain.yaml")]);
    assert_eq!(o.status.code(), Some(1));
    let o = didp(&["solve", "--domain", "/nonexistent.yaml", "--problem", &fixture("problem.yaml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("/nonexistent.yaml"));
}

#[test]
fn zero_time_limit_reports_unknown_with_the_root_bound() {
    let dir = tempfile::tempdir().unwrap();
    let (d, p) = convert_desk(&dir);
    let o = didp(&["solve", "--domain", s(&d), "--problem", s(&p), "--time-limit", "0", "--quiet"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(o.stderr.is_empty());

    let model = didp::yaml::load(&fs::read_to_string(&d).unwrap(), &fs::read_to_string(&p).unwrap()).unwrap();
    let root = model.eval_dual_bound(&model.target).unwrap().unwrap();
    assert_eq!(
        stdout(&o),
        format!("status: unknown\ncost: none\nbound: {}\ntransitions: 0\nexpanded: 0\ngenerated: 0\n", root)
    );
    let c = vec![vec![0, 2, 3], vec![2, 0, 1], vec![3, 1, 0]];
    assert!(root.as_f64() <= brute_force_tour(&c) as f64);
}

#[test]
fn converted_desk_instance_resolves_to_the_enumerated_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let (d, p) = convert_desk(&dir);
    let optimum = brute_force_tour(&[vec![0, 2, 3], vec![2, 0, 1], vec![3, 1, 0]]);
    for solver in ["caasdy", "dfbnb", "cbfs", "acps", "apps", "dbdfs", "cabs"] {
        let config = path(&dir, "config.yaml");
        fs::write(&config, format!("solver: {}\n", solver)).unwrap();
        let o = didp(&["solve", "--domain", s(&d), "--problem", s(&p), "--config", s(&config), "--quiet"]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", solver, stderr(&o));
        assert!(stdout(&o).contains(&format!("cost: {}\n", optimum)), "{}: {}", solver, stdout(&o));
    }
}

#[test]
fn convert_rejects_unknown_classes_and_gates_fractional_mdkp() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(&dir, "in.txt");
    let (d, p) = (path(&dir, "d.yaml"), path(&dir, "p.yaml"));
    fs::write(&input, DESK_TSPTW).unwrap();
    let convert = |class: &str, extra: &[&str]| {
        let mut args = vec!["convert", "--class", class, "--input", s(&input), "--domain", s(&d), "--problem", s(&p)];
        args.extend_from_slice(extra);
        didp(&args)
    };
    let o = convert("tsp2", &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("tsp2"));
    assert!(!d.exists());
    assert_eq!(convert("tsptw", &["--continuous"]).status.code(), Some(1));

    fs::write(&input, "2 1\n3 2.5\n1 2\n3\n").unwrap();
    let o = convert("mdkp", &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--continuous"));
    assert!(convert("mdkp", &["--continuous"]).status.success());
    assert!(fs::read_to_string(&d).unwrap().contains("cost_type: continuous"));

    fs::write(&input, "2 1\n3 2\n1 2\n3\n").unwrap();
    assert!(convert("mdkp", &[]).status.success());
    assert!(fs::read_to_string(&d).unwrap().contains("cost_type: integer"));
    assert!(convert("mdkp", &["--continuous"]).status.success());
    assert!(fs::read_to_string(&d).unwrap().contains("cost_type: continuous"));
    let o = didp(&["solve", "--domain", s(&d), "--problem", s(&p), "--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    // both items fit: weights 1 + 2 <= 3
    assert!(stdout(&o).contains("cost: 5.0\n"), "{}", stdout(&o));
}

#[test]
fn solution_files_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for solver in ["caasdy", "cabs", "apps"] {
        let config = path(&dir, "c.yaml");
        fs::write(&config, format!("solver: {}\n", solver)).unwrap();
        let outputs: Vec<Vec<u8>> = (0..2)
            .map(|k| {
                let out = path(&dir, &format!("out{}.txt", k));
                let o = didp(&[
                    "solve", "--domain", &fixture("domain.yaml"), "--problem", &fixture("problem.yaml"),
                    "--config", s(&config), "--output", s(&out), "--quiet",
                ]);
                assert!(o.status.success());
                assert!(o.stdout.is_empty() && o.stderr.is_empty());
                fs::read(&out).unwrap()
            })
            .collect();
        assert_eq!(outputs[0], outputs[1], "{}", solver);
    }
}

#[test]
fn metric_subcommands() {
    let gap = |args: &[&str]| {
        let mut all = vec!["gap"];
        all.extend_from_slice(args);
        stdout(&didp(&all)).trim().parse::<f64>().unwrap()
    };
    assert_eq!(gap(&["--primal", "0", "--dual", "0"]), 0.0);
    assert_eq!(gap(&["--primal", "10", "--dual", "5"]), 0.5);
    assert_eq!(gap(&["--primal", "6"]), 1.0);
    assert_eq!(gap(&["--primal", "-10", "--dual", "-5"]), 0.5);

    let dir = tempfile::tempdir().unwrap();
    let events = path(&dir, "events.csv");
    let integral = |contents: &str, extra: &[&str]| {
        fs::write(&events, contents).unwrap();
        let mut args = vec!["integral", "--events", s(&events), "--horizon", "10"];
        args.extend_from_slice(extra);
        didp(&args)
    };
    let value = |o: Output| stdout(&o).trim().parse::<f64>().unwrap();
    // gap 1 until t=2, (20-10)/20 = 0.5 until t=6, then 0
    assert_eq!(value(integral("time,cost\n2,20\n6,10\n", &["--reference", "10"])), 4.0);
    assert_eq!(value(integral("2,20\n6,10\n", &["--reference", "10"])), 4.0);
    assert_eq!(value(integral("0,10\n", &["--reference", "10"])), 0.0);
    assert_eq!(value(integral("", &[])), 10.0);
    assert_eq!(value(integral("", &["--infeasible-at", "3"])), 3.0);

    let o = integral("11,10\n", &["--reference", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let o = integral("2,abc\n", &["--reference", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
}

#[test]
fn event_log_round_trips_through_the_integral() {
    let dir = tempfile::tempdir().unwrap();
    let events = path(&dir, "events.csv");
    let o = didp(&[
        "solve", "--domain", &fixture("domain.yaml"), "--problem", &fixture("problem.yaml"),
        "--events", s(&events), "--quiet",
    ]);
    assert!(o.status.success());
    let log = fs::read_to_string(&events).unwrap();
    assert!(log.starts_with("time,cost\n"));
    assert!(log.trim_end().ends_with(",14"), "{}", log);
    let o = didp(&["integral", "--events", s(&events), "--reference", "14", "--horizon", "60"]);
    let p: f64 = stdout(&o).trim().parse().unwrap();
    assert!((0.0..60.0).contains(&p));
}
