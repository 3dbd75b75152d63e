use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jetgeom"));
    cmd.env_remove("JETGEOM_SEED").env_remove("JETGEOM_SAMPLES");
    cmd
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn golden(args: &[&str], name: &str) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let expected = std::fs::read_to_string(fixture(name)).unwrap();
    assert_eq!(stdout(&out), expected, "output of {args:?} differs from {name}");
}

#[test]
fn dims_matches_golden_text() {
    golden(&["dims", "-n", "3", "-m", "1", "-k", "2", "-s", "2"], "dims_n3_m1_k2_s2.txt");
}

#[test]
fn dims_matches_golden_json() {
    golden(&["dims", "-n", "3", "-m", "1", "-k", "2", "-s", "2", "--format", "json"], "dims_n3_m1_k2_s2.json");
    golden(&["dims", "-n", "3", "-m", "1", "-k", "2", "-s", "3", "--format", "json"], "dims_n3_m1_k2_s3.json");
}

#[test]
fn ma_example_matches_golden_json() {
    golden(&["ma-example", "--format", "json"], "ma_example_seed1.json");
}

#[test]
fn seed_env_var_is_honoured() {
    let flag = run(&["ma-example", "--format", "json", "--seed", "9"]);
    let env = bin().args(["ma-example", "--format", "json"]).env("JETGEOM_SEED", "9").output().unwrap();
    assert_eq!(flag.stdout, env.stdout);
    assert_ne!(stdout(&flag), std::fs::read_to_string(fixture("ma_example_seed1.json")).unwrap());
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["polar", "-n", "3", "-m", "2", "-k", "3", "-s", "2", "--seed", "5", "--format", "json"][..],
        &["verify-theorem1", "-n", "3", "-m", "1", "-k", "3", "-s", "1", "--samples", "5", "--format", "json"],
        &["contactize", "-n", "2", "-m", "1", "--verify", "--samples", "3", "--format", "json"],
        &["grid", "--samples", "2", "--n-max", "2", "--m-max", "1", "--k-max", "2", "--format", "json"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn check_and_polar_accept_a_serialized_subspace() {
    let input = fixture("span_x1_x2.json");
    let input = input.to_str().unwrap();
    let out = run(&["check", "--input", input]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("integral element  PASS"));
    let out = run(&["polar", "--input", input, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["polar_dim"]["rank"], 4);
    assert_eq!(v["polar_basis"].as_array().unwrap().len(), 4);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("jetgeom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dims.json");
    let out = run(&["dims", "-n", "3", "-s", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        std::fs::read_to_string(fixture("dims_n3_m1_k2_s2.json")).unwrap()
    );
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = std::env::temp_dir().join(format!("jetgeom-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("short.json", r#"{"n":3,"m":1,"k":2,"basis":[[1,0,0,0,0]]}"#, "basis[0]"),
        ("syntax.json", "{\"n\":3,\n\"m\":", "line 2"),
        ("entry.json", r#"{"n":2,"m":1,"k":2,"basis":[[1,0,"q",0]]}"#, "basis[0][2]"),
    ];
    for (name, text, needle) in cases {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        let out = run(&["check", "--input", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{name}: {err}");
    }
    std::fs::remove_dir_all(dir).ok();

    assert_eq!(run(&["dims", "-n", "3", "-s", "4"]).status.code(), Some(2));
    assert_eq!(run(&["polar", "-n", "3", "-k", "1", "-s", "1"]).status.code(), Some(2));
}
