//! End-to-end tests of the `buchi` binary: output shape, exit-code contract,
//! and file pipelines.

use std::io::Write;
use std::process::{Command, Output};

fn buchi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_buchi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn buchi_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_buchi"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary exits")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const SRB: &str = "3\n0 P 0 1 0\n1 R 0 2 0 2\n2 P 1 1 2\n";

#[test]
fn solve_reports_winning_set_and_iterations() {
    let out = buchi_stdin(&["solve"], SRB);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("winning = {2}"), "{text}");
    assert!(text.contains("iterations = 2"), "{text}");
    assert!(text.contains("removal 1 = {0 1}"), "{text}");
    assert!(
        text.contains("# subcommand = solve"),
        "config echo missing: {text}"
    );
}

#[test]
fn solve_oracle_flag_cross_checks() {
    let out = buchi_stdin(&["solve", "--oracle"], SRB);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS oracle agrees"));
}

#[test]
fn solve_parse_error_names_the_line() {
    let bad = "3\n0 P 0 1 0\n1 X 0 2 0 2\n2 P 1 1 2\n";
    let out = buchi_stdin(&["solve"], bad);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains('X'), "{err}");
}

#[test]
fn missing_flags_are_usage_errors_with_exit_2() {
    let out = buchi(&["experiment", "--trials", "1", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    // clap-level missing arguments also exit 2
    let out = buchi(&["gen", "const-deg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn capacity_guard_exits_3() {
    let out = buchi(&[
        "recurrence",
        "rnp",
        "--n",
        "6",
        "--p",
        "1/2",
        "--brute-force",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("capacity"));
}

#[test]
fn recurrence_prints_exact_and_decimal() {
    let out = buchi(&["recurrence", "rnp", "--n", "3", "--p", "1/2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("R = 1/2"), "{text}");
    assert!(text.contains("R ~ 0.500000000000"), "{text}");
}

#[test]
fn recurrence_brute_force_agrees() {
    let out = buchi(&[
        "recurrence",
        "rnp",
        "--n",
        "4",
        "--p",
        "1/3",
        "--brute-force",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS recurrence matches brute force"));
}

#[test]
fn recurrence_eq1_passes_for_tiny_spec() {
    let out = buchi(&["recurrence", "eq1", "--degrees", "2:3:1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS total mass = 1"), "{text}");
}

#[test]
fn bounds_stirling_passes_with_exit_0() {
    let out = buchi(&["bounds", "stirling", "--l", "10", "--j", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("PASS").count(), 2, "{text}");
}

#[test]
fn bounds_domain_error_exits_1() {
    // l below d_min + 1 is outside the stated range.
    let out = buchi(&[
        "bounds",
        "very-large-k",
        "--degrees",
        "2:10000:1",
        "--l",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("domain"), "{}", stderr(&out));
}

#[test]
fn bounds_json_is_machine_readable() {
    let out = buchi(&["bounds", "gnp", "--n", "100", "--c-log", "3", "--json", "-"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let json_start = text.find('{').expect("json payload");
    let v: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
    assert_eq!(v["label"], "gnp");
    assert!(v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x["pass"] == true));
}

#[test]
fn gen_then_solve_composes_through_files() {
    let dir = std::env::temp_dir().join(format!("buchi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("five.mdp");
    let out = buchi(&[
        "gen",
        "const-deg",
        "--degrees",
        "2:5:1",
        "--seed",
        "42",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let contents = std::fs::read_to_string(&path).unwrap();
    assert!(
        contents.starts_with("# subcommand = gen"),
        "config echo embedded"
    );

    let out = buchi(&["solve", path.to_str().unwrap(), "--oracle"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("PASS oracle agrees"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn gen_is_deterministic_per_seed() {
    let a = buchi(&[
        "gen",
        "gnp",
        "--n",
        "30",
        "--p",
        "0.2",
        "--targets",
        "2",
        "--seed",
        "7",
    ]);
    let b = buchi(&[
        "gen",
        "gnp",
        "--n",
        "30",
        "--p",
        "0.2",
        "--targets",
        "2",
        "--seed",
        "7",
    ]);
    let c = buchi(&[
        "gen",
        "gnp",
        "--n",
        "30",
        "--p",
        "0.2",
        "--targets",
        "2",
        "--seed",
        "8",
    ]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn experiment_writes_csv_and_accepts_config_files() {
    let dir = std::env::temp_dir().join(format!("buchi-cli-exp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("trials.csv");
    let out = buchi(&[
        "experiment",
        "--model",
        "gnp",
        "--n",
        "40",
        "--p",
        "0.2",
        "--targets",
        "1",
        "--trials",
        "25",
        "--seed",
        "5",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let summary_flags = stdout(&out);
    assert!(summary_flags.contains("mean_iterations"), "{summary_flags}");

    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("# master_seed = 5"));
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(
        header,
        "trial,model,n,param,seed_stream,size_s,iterations,removed,work,wall_ns"
    );
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 26);

    // The same model given as a kv config file reproduces the summary.
    let cfg = dir.join("model.kv");
    std::fs::write(
        &cfg,
        "model = gnp\nn = 40\np = 0.2\nplayer1_prob = 0.5\ntargets = 1\n",
    )
    .unwrap();
    let out2 = buchi(&[
        "experiment",
        "--config",
        cfg.to_str().unwrap(),
        "--trials",
        "25",
        "--seed",
        "5",
    ]);
    assert!(out2.status.success(), "{}", stderr(&out2));
    let pick = |s: &str| {
        s.lines()
            .find(|l| l.starts_with("mean_iterations"))
            .unwrap()
            .to_string()
    };
    assert_eq!(pick(&summary_flags), pick(&stdout(&out2)));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn scaling_reports_exponent() {
    let out = buchi(&[
        "scaling",
        "--model",
        "worst-case",
        "--grid",
        "4,8,16,32",
        "--trials-per",
        "1",
        "--seed",
        "0",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("work_growth_exponent"), "{text}");
}
