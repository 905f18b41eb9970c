use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

const SOLVED: &str = "UUUUUUUUURRRRRRRRRFFFFFFFFFDDDDDDDDDLLLLLLLLLBBBBBBBBB";

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rubiks-bench"))
        .args(args)
        .env_remove("RUBIKS_BENCH_SEED")
        .output()
        .unwrap()
}

fn bench_with_input(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rubiks-bench"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn apply(seq: &str) -> String {
    stdout(&bench(&["apply", "--sequence", seq]))
        .trim()
        .to_string()
}

#[test]
fn scramble_is_stable_and_shaped() {
    let a = bench(&["scramble", "--tier", "Rubiks-1-5", "--seed", "42"]);
    let b = bench(&["scramble", "--tier", "Rubiks-1-5", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        stdout(&a),
        "# rubiks-benchmark seed=42 tier=Rubiks-1-5\nB2 F R B D\n"
    );
}

#[test]
fn scramble_takes_seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rubiks-bench"))
        .args(["scramble", "--tier", "Rubiks-5-5"])
        .env("RUBIKS_BENCH_SEED", "42")
        .output()
        .unwrap();
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert_eq!(text.lines().nth(2), Some("R2 L2 U L F'"));
}

#[test]
fn unknown_tier_is_a_usage_error() {
    let o = bench(&["scramble", "--tier", "Rubiks-9-9", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown tier"));
    let o = bench(&["scramble", "--m", "9", "--n", "9", "--seed", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 10);
}

#[test]
fn validate_exit_codes() {
    let full = "R U R' U'";
    let pass = bench(&["validate", "--sequence", full, "--observed", &apply(full)]);
    assert_eq!(pass.status.code(), Some(0));
    assert!(stdout(&pass).starts_with("PASS\n"));

    let short = bench(&[
        "validate",
        "--sequence",
        full,
        "--observed",
        &apply("R U R'"),
    ]);
    assert_eq!(short.status.code(), Some(1));
    assert!(stdout(&short).starts_with("FAIL\n"));

    let bad = bench(&["validate", "--sequence", full, "--observed", &SOLVED[..53]]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}

#[test]
fn validate_accepts_colors() {
    let observed: String = apply("F")
        .chars()
        .map(|c| match c {
            'U' => 'w',
            'R' => 'r',
            'F' => 'g',
            'D' => 'y',
            'L' => 'o',
            _ => 'b',
        })
        .collect();
    let o = bench(&[
        "validate",
        "--sequence",
        "F",
        "--observed",
        &observed,
        "--colors",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

fn run_live(dir: &Path, tier: &str, input: &str) -> (String, String) {
    let report = dir.join("report.json");
    let log = dir.join("events.log");
    let o = bench_with_input(
        &[
            "run",
            "--tier",
            tier,
            "--seed",
            "42",
            "--output",
            report.to_str().unwrap(),
            "--log",
            log.to_str().unwrap(),
        ],
        input,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    (
        std::fs::read_to_string(report).unwrap(),
        std::fs::read_to_string(log).unwrap(),
    )
}

#[test]
fn live_session_then_replay() {
    let dir = tempfile::tempdir().unwrap();
    let observed = apply("B2 F R B D");
    // Placement (solved), contact, termination, a malformed entry, then
    // the real observation.
    let input = format!("\n\n\nUUUU\n{observed}\n");
    let (report, log) = run_live(dir.path(), "Rubiks-1-5", &input);
    let json: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(json["tiers"][0]["completed"], true);
    assert!(json["tiers"][0]["stddev_seconds"].is_null());
    assert!(!log.contains("UUUU\n"));

    let replayed = dir.path().join("replayed.json");
    let o = bench(&[
        "run",
        "--replay",
        dir.path().join("events.log").to_str().unwrap(),
        "--output",
        replayed.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read_to_string(replayed).unwrap(), report);
}

#[test]
fn failed_trial_is_recorded_not_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = format!("\n\n\n{SOLVED}\n");
    let (report, _) = run_live(dir.path(), "Rubiks-5-5", &input);
    let json: serde_json::Value = serde_json::from_str(&report).unwrap();
    let tier = &json["tiers"][0];
    assert_eq!(tier["completed"], false);
    assert_eq!(tier["trials"].as_array().unwrap().len(), 1);
    assert_eq!(tier["trials"][0]["pass"], false);
}

#[test]
fn replay_reproduces_recorded_report() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("events.log");
    let report = dir.path().join("report.json");
    let mut text = String::new();
    let mut t = 0u32;
    let mut stamp = |secs: u32| {
        t += secs;
        format!("2016-09-01T14:{:02}:{:02}.000000Z", t / 60, t % 60)
    };
    let seq = "B2 F R B D";
    text += &format!("TierChosen\t{}\tRubiks-1-5 seed=42\n", stamp(0));
    text += &format!("SequenceIssued\t{}\t1 {seq}\n", stamp(5));
    text += &format!("CubePlaced\t{}\t1 {SOLVED}\n", stamp(5));
    text += &format!("ContactMarked\t{}\t1\n", stamp(5));
    text += &format!("TerminationMarked\t{}\t1\n", stamp(139));
    text += &format!("ObservedStateEntered\t{}\t1 {}\n", stamp(30), apply(seq));
    text += &format!("TrialValidated\t{}\t1 PASS\n", stamp(1));
    std::fs::write(&log, text).unwrap();

    let o = bench(&[
        "run",
        "--replay",
        log.to_str().unwrap(),
        "--output",
        report.to_str().unwrap(),
        "--system-name",
        "PR2",
        "--video",
        "trial.mp4",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["date"], "2016-09-01");
    assert_eq!(json["tiers"][0]["mean_seconds"], 139.0);
    assert_eq!(json["tiers"][0]["completed"], true);

    let truncated = std::fs::read_to_string(&log).unwrap();
    let truncated: Vec<&str> = truncated.lines().take(5).collect();
    std::fs::write(&log, truncated.join("\n")).unwrap();
    let o = bench(&[
        "run",
        "--replay",
        log.to_str().unwrap(),
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_outputs_summary_json() {
    let a = bench(&[
        "simulate",
        "--tier",
        "Rubiks-5-5",
        "--runs",
        "1",
        "--seed",
        "7",
    ]);
    let b = bench(&[
        "simulate",
        "--tier",
        "Rubiks-5-5",
        "--runs",
        "1",
        "--seed",
        "7",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["runs"], 1);
    assert_eq!(v["mode"], "dead_reckoning");

    let dr = bench(&["simulate", "--tier", "Rubiks-5-5", "--runs", "2000"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&dr)).unwrap();
    assert!(v["success_rate"].as_f64().unwrap() >= 0.75);

    let sa = bench(&[
        "simulate",
        "--mode",
        "sensor_aided",
        "--tier",
        "Rubiks-5-20",
        "--runs",
        "2000",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&sa)).unwrap();
    assert!(v["success_rate"].as_f64().unwrap() >= 0.8);
}

#[test]
fn simulate_reads_config_files() {
    let dir = tempfile::tempdir().unwrap();
    let shown = bench(&["simulate", "--mode", "sensor_aided", "--show-config"]);
    let path = dir.path().join("sa.conf");
    std::fs::write(&path, stdout(&shown).replace("runs = 10000", "runs = 10")).unwrap();
    let o = bench(&[
        "simulate",
        "--config",
        path.to_str().unwrap(),
        "--tier",
        "Rubiks-1-5",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["runs"], 10);
    assert_eq!(v["mode"], "sensor_aided");

    std::fs::write(&path, "mode = sensor_aided\nwobble = 3\n").unwrap();
    let o = bench(&[
        "simulate",
        "--config",
        path.to_str().unwrap(),
        "--tier",
        "Rubiks-1-5",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_merges_tiers() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one");
    let five = dir.path().join("five");
    std::fs::create_dir_all(&one).unwrap();
    std::fs::create_dir_all(&five).unwrap();
    run_live(
        &one,
        "Rubiks-1-5",
        &format!("\n\n\n{}\n", apply("B2 F R B D")),
    );
    run_live(&five, "Rubiks-5-5", &format!("\n\n\n{SOLVED}\n"));
    let merged = bench(&[
        "report",
        one.join("report.json").to_str().unwrap(),
        five.join("report.json").to_str().unwrap(),
        "--system-name",
        "PR2 sensor aided",
    ]);
    assert!(merged.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&merged)).unwrap();
    assert_eq!(v["system_name"], "PR2 sensor aided");
    let names: Vec<&str> = v["tiers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["Rubiks-1-5", "Rubiks-5-5"]);

    let dup = bench(&[
        "report",
        one.join("report.json").to_str().unwrap(),
        one.join("report.json").to_str().unwrap(),
    ]);
    assert_eq!(dup.status.code(), Some(2));
}
