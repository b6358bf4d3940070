use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conesurf")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn validate_builtins() {
    for name in ["square_torus", "octagon_genus2", "mixed_torus", "example_sigma"] {
        let v: serde_json::Value = serde_json::from_str(&stdout(&["validate", "--builtin", name])).unwrap();
        assert_eq!(v["ok"], true, "{name}");
        assert_eq!(v["config"]["surface"]["builtin"], name);
    }
}

#[test]
fn validate_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("conesurf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("torus.json");
    std::fs::write(&path, conesurf::builtin("square_torus").unwrap().to_json()).unwrap();
    assert_eq!(code(&["validate", path.to_str().unwrap()]), 0);
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(code(&["validate", path.to_str().unwrap()]), 2);
    // stretch one edge so a gluing no longer matches
    let bad = conesurf::builtin("square_torus").unwrap().to_json().replacen("1.0", "1.5", 1);
    std::fs::write(&path, bad).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("geometry"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["closed", "--builtin", "nope", "--word", "a"]), 2);
    assert_eq!(code(&["closed", "--builtin", "square_torus", "--word", "a a'"]), 2);
    assert_eq!(code(&["trace", "--builtin", "square_torus", "--at", "0.5", "--angle", "0", "--length", "1"]), 2);
    assert_eq!(code(&["verify", "--suite", "bogus"]), 2);
    assert_eq!(
        code(&["unfold", "--builtin", "octagon_genus2", "--at", "0.1,0.1", "--radius", "30", "--max-cells", "100"]),
        3
    );
    assert_eq!(code(&["verify", "--suite", "validation", "--fault-injection"]), 1);
    assert_eq!(code(&["verify", "--suite", "validation"]), 0);
}

#[test]
fn closed_reports_ties() {
    let out = stdout(&["closed", "--builtin", "example_sigma", "--word", "a' d", "--all-ties"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["ties"], 2);
    assert!((v["result"]["length"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn shortest_on_torus() {
    let out = stdout(&["shortest", "--builtin", "square_torus", "--from", "0.2,0.3", "--to", "0.7,0.6", "--word", "a"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    // side a glues x = 1 to x = 0, so the lift sits one unit to the right
    let got = v["result"]["length"].as_f64().unwrap();
    assert!((got - 1.5f64.hypot(0.3)).abs() < 1e-9, "{got}");
}

#[test]
fn density_is_deterministic() {
    let args = [
        "density", "--builtin", "square_torus", "--axis", "a", "--family", "a^n b", "--n-min", "2", "--n-max", "6", "--at", "0.5,0.5",
    ];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let mut rows = csv::Reader::from_reader(a.as_bytes());
    assert_eq!(rows.headers().unwrap(), vec!["n", "word", "length", "sup_distance", "status"]);
    for r in rows.records() {
        let r = r.unwrap();
        let n: f64 = r[0].parse().unwrap();
        let d: f64 = r[3].parse().unwrap();
        assert!(d <= 3.0 / n + 1e-9, "{r:?}");
        assert_eq!(&r[4], "ok");
    }
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "validation", "--suite", "oracle", "--corpus", "square_torus", "--queries", "2", "--seed", "11"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["config"]["seed"], 11);
    assert_eq!(v["ok"], true);
}

#[test]
fn trace_sweep_uses_seed() {
    let base = ["trace", "--builtin", "mixed_torus", "--at", "0.3,1.1", "--sweep", "3", "--length", "2"];
    let with = |seed: &str| {
        let mut a = base.to_vec();
        a.extend(["--seed", seed]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
        v["config"]["params"]["angles"].clone()
    };
    assert_eq!(with("1"), with("1"));
    assert_ne!(with("1"), with("2"));
}

#[test]
fn sigma_angles() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["validate", "--builtin", "example_sigma"])).unwrap();
    let mut angles: Vec<f64> = v["result"]["cone_points"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["kind"] != "regular")
        .map(|c| c["angle"].as_f64().unwrap())
        .collect();
    angles.sort_by(f64::total_cmp);
    assert_eq!(angles.len(), 2, "{angles:?}");
    assert!((angles[0] - std::f64::consts::PI).abs() < 1e-9);
    assert!((angles[1] - 3.0 * std::f64::consts::PI).abs() < 1e-9);
}

#[test]
fn demo_sigma_enumerates_every_sequence() {
    for k in [1usize, 3] {
        let v: serde_json::Value =
            serde_json::from_str(&stdout(&["demo-sigma", "--k", &k.to_string()])).unwrap();
        assert_eq!(v["ok"], true);
        let rows = v["result"]["concatenations"].as_array().unwrap();
        assert_eq!(rows.len(), 1 << k);
        assert_eq!(v["result"]["distinct"], 1 << k);
        assert!(v["result"]["length_gap"].as_f64().unwrap() <= 1e-7 * 2.0 * 2f64.sqrt());
        if k == 1 {
            let seqs: Vec<_> = rows.iter().map(|r| r["sequence"][0].as_str().unwrap().to_string()).collect();
            assert_eq!(seqs, ["sigma", "tau"]);
        }
    }
}

#[test]
fn shortest_enumerates_sigma_class() {
    let out = stdout(&[
        "shortest", "--builtin", "example_sigma", "--from", "upper:0,2", "--word", "a' d", "--power", "2", "--radius", "6",
        "--enumerate",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let class = &v["result"]["class"];
    assert_eq!(class["members"], 4);
    assert_eq!(class["envelope_ok"], true);
    assert!(!class["envelope"].as_array().unwrap().is_empty());
    assert!((v["result"]["length"].as_f64().unwrap() - 4.0 * 2f64.sqrt()).abs() < 1e-9);
}

#[test]
fn clearance_is_vacuous_on_torus_alone() {
    let out = stdout(&["verify", "--suite", "clearance", "--corpus", "square_torus"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let suite = &v["result"]["suites"][0];
    assert_eq!(suite["passed"], true);
    let text = suite["measures"].to_string();
    assert!(text.contains("inf"), "{text}");
}

#[test]
fn svg_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("conesurf-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let draw = |name: &str| {
        let path = dir.join(name);
        let p = path.to_str().unwrap();
        stdout(&[
            "density", "--builtin", "square_torus", "--axis", "a", "--family", "a^n b", "--n-max", "4", "--at", "0.5,0.5",
            "--svg-out", p,
        ]);
        std::fs::read_to_string(&path).unwrap()
    };
    let a = draw("a.svg");
    assert!(a.starts_with("<svg"));
    assert_eq!(a, draw("b.svg"));
}
