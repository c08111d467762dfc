use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use genmat::cli::{check_json, exchange_json, CheckTask, Options, Report};
use serde_json::Value;

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances").join(name)
}

fn genmat(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_genmat"));
    cmd.args(args).env_remove("GENMAT_PRIME");
    run(cmd, stdin)
}

fn run(mut cmd: Command, stdin: Option<&str>) -> Output {
    cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn path(name: &str) -> String {
    instance(name).to_string_lossy().into_owned()
}

#[test]
fn check_exit_codes() {
    let q = path("quadric.json");
    let bad = path("quadric-bad.json");
    let two = path("reduction-number-two.json");
    let cases: [(&[&str], i32); 9] = [
        (&["check", "minimal-reduction", &q], 0),
        (&["check", "minimal-reduction", &bad], 1),
        (&["check", "nn", &q], 0),
        (&["check", "hsop", &bad], 1),
        (&["check", "reduction", &two], 0),
        (&["check", "reduction", &two, "--n-max", "1"], 2),
        (&["check", "nn", &path("malformed.json")], 3),
        (&["check", "complete-reduction-ring", &path("segre.json")], 0),
        (&["check", "complete-reduction-ideals", &path("two-by-two.json")], 0),
    ];
    for (args, expected) in cases {
        let o = genmat(args, None);
        assert_eq!(code(&o), expected, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(code(&genmat(&["check", "nn", "/nonexistent.json"], None)), 3);
}

#[test]
fn input_errors_carry_locations() {
    let o = genmat(&["--json", "check", "nn", &path("malformed.json")], None);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["error"]["location"], "system[0]");
    assert_eq!(v["exit_code"], 3);

    let o = genmat(&["--json", "check", "nn", "-"], Some("{\"ring\": {\"vars\": [\"x\"]},\n \"sistem\": []}"));
    assert_eq!(code(&o), 3);
    assert!(json(&o)["error"]["location"].as_str().unwrap().starts_with("line 2"));

    let o = genmat(&["check", "reduction", "-"], Some(r#"{"ring": {"vars": ["x", "y"]}}"#));
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("reduction"));
}

#[test]
fn exchange_reports_certificates() {
    let o = genmat(&["--json", "--seed", "42", "exchange", &path("quadric.json"), "--trials", "200"], None);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["verdict"], "true");
    let attempts = v["details"]["certificate"]["attempts"].as_u64().unwrap();
    assert!((1..=5).contains(&attempts));
    assert!(v["details"]["statistics"]["rate"].as_f64().unwrap() >= 0.95);

    // same seed, same certificate
    let again = json(&genmat(&["--json", "--seed", "42", "exchange", &path("quadric.json")], None));
    assert_eq!(again["details"]["certificate"], v["details"]["certificate"]);

    for variant in ["vector", "matrix"] {
        let o = genmat(&["--seed", "3", "exchange", &path("segre.json"), "--variant", variant], None);
        assert_eq!(code(&o), 0, "{variant}");
    }
}

#[test]
fn exchange_without_a_seed_prints_one() {
    let o = genmat(&["--json", "exchange", &path("two-by-two.json")], None);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["seed"].is_u64());
}

#[test]
fn exhaustion_exits_four_with_rejections() {
    // over F_3 a single draw often lands in the bad set
    let hits: Vec<Value> = (1..=6)
        .map(|s| {
            let seed = s.to_string();
            genmat(
                &["--json", "--prime", "3", "--seed", &seed, "exchange", &path("quadric.json"), "--max-tries", "1"],
                None,
            )
        })
        .filter(|o| code(o) == 4)
        .map(|o| json(&o))
        .collect();
    assert!(!hits.is_empty());
    for v in hits {
        assert_eq!(v["verdict"], "exhausted");
        assert_eq!(v["details"]["rejected"].as_array().unwrap().len(), 1);
    }
}

#[test]
fn command_line_overrides() {
    let o = genmat(
        &["--seed", "5", "exchange", &path("quadric.json"), "--remove", "z", "--from", "x", "y", "z + w"],
        None,
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = genmat(&["exchange", &path("quadric.json"), "--remove", "x"], None);
    assert_eq!(code(&o), 3);
    let o = genmat(&["exchange", &path("quadric.json"), "--from", "x", "z", "w"], None);
    assert_eq!(code(&o), 3);
}

#[test]
fn prime_precedence() {
    let body = r#"{"ring": {"vars": ["x", "y"]}, "system": ["x", "y"]}"#;
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_genmat"));
    cmd.args(["--json", "check", "nn", "-"]).env("GENMAT_PRIME", "101");
    assert_eq!(json(&run(cmd, Some(body)))["prime"], 101);

    let mut cmd = Command::new(env!("CARGO_BIN_EXE_genmat"));
    cmd.args(["--json", "--prime", "7", "check", "nn", "-"]).env("GENMAT_PRIME", "101");
    assert_eq!(json(&run(cmd, Some(body)))["prime"], 7);

    let with_field = r#"{"field": {"prime": 11}, "ring": {"vars": ["x", "y"]}, "system": ["x", "y"]}"#;
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_genmat"));
    cmd.args(["--json", "check", "nn", "-"]).env("GENMAT_PRIME", "101");
    assert_eq!(json(&run(cmd, Some(with_field)))["prime"], 11);

    assert_eq!(json(&genmat(&["--json", "check", "nn", "-"], Some(body)))["prime"], 32003);
    assert_eq!(code(&genmat(&["--prime", "32001", "check", "nn", "-"], Some(body))), 3);
}

#[test]
fn report_echo_reruns_to_the_same_verdict() {
    let opts = Options { seed: Some(9), ..Options::default() };
    let files = [
        ("quadric.json", CheckTask::MinimalReduction),
        ("quadric-bad.json", CheckTask::MinimalReduction),
        ("quadric.json", CheckTask::Nn),
        ("segre.json", CheckTask::CompleteReductionRing),
        ("two-by-two.json", CheckTask::CompleteReductionIdeals),
    ];
    for (name, task) in files {
        let text = std::fs::read_to_string(instance(name)).unwrap();
        let report = check_json(task, &text, &opts).unwrap();
        let wire = serde_json::to_string(&report).unwrap();
        let parsed: Report = serde_json::from_str(&wire).unwrap();
        let echo = serde_json::to_string(&parsed.input).unwrap();
        let rerun = check_json(task, &echo, &Options::default()).unwrap();
        assert_eq!(rerun.verdict, report.verdict, "{name}");
        assert_eq!(rerun.details, report.details, "{name}");
        assert_eq!(rerun.prime, report.prime);
    }
    for name in ["quadric.json", "segre.json", "two-by-two.json"] {
        let text = std::fs::read_to_string(instance(name)).unwrap();
        let report = exchange_json(&text, &opts).unwrap();
        let echo = serde_json::to_string(&report.input).unwrap();
        let rerun = exchange_json(&echo, &opts).unwrap();
        assert_eq!(rerun.details, report.details, "{name}");
    }
}

#[test]
fn demo_reproduces_the_quadric_story() {
    let o = genmat(&["--json", "--seed", "42", "demo", "--trials", "100"], None);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verdict"], "true");
    let text = genmat(&["--seed", "7", "--prime", "101", "demo", "--trials", "50"], None);
    assert_eq!(code(&text), 0);
    let out = String::from_utf8_lossy(&text.stdout);
    assert!(out.contains("x + y"), "{out}");
}
