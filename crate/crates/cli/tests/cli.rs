use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_layerconn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tri() -> String {
    fixture("g_tri.json").display().to_string()
}

#[test]
fn classify_single_removal() {
    let o = run(&["classify", &tri(), "--remove", "v2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "removed,lambda2,witnesses,predicted,consistent");
    assert_eq!(lines[1], "v2,0.4679,v4,degraded,consistent");
}

#[test]
fn classify_several_and_none() {
    let o = run(&["classify", &tri(), "--remove", "v2,v4,v7"]);
    assert_eq!(
        stdout(&o).lines().nth(1),
        Some("v2 v4 v7,1.0000,---,preserved,consistent")
    );
    let o = run(&["classify", &tri(), "--remove"]);
    assert_eq!(
        stdout(&o).lines().nth(1),
        Some("---,1.0000,---,preserved,consistent")
    );
}

#[test]
fn lambda2_json() {
    let o = run(&["lambda2", &tri()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda2"], serde_json::json!(1.0));
    assert_eq!(v["contributions"].as_array().unwrap().len(), 3);
}

#[test]
fn check_reports_decomposition() {
    let o = run(&["check", &fixture("g_sq2.json").display().to_string()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("layer 2: v2 - v3 - v4 - v5 - v6"));
    assert!(out.contains("overlap condition: holds"));
}

#[test]
fn check_rejects_upward_edge() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"layers":[["a"],["b"]],"intra_edges":[],"inter_edges":[["b","a"]]}"#,
    )
    .unwrap();
    let o = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("(b, a)"), "{}", stderr(&o));
}

#[test]
fn check_reports_overlap_failure() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    fs::write(
        &g,
        r#"{"layers":[["l"],["a","b","c"],["x","y"]],
            "intra_edges":[["a","b"],["b","c"],["x","y"]],
            "inter_edges":[["l","a"],["l","b"],["l","c"],["a","x"],["b","x"],["c","y"]]}"#,
    )
    .unwrap();
    let o = run(&["check", g.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("overlap condition: fails on 1 edges"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn input_errors_exit_one() {
    let o = run(&["lambda2", "/nonexistent/graph.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot read graph file"));
    assert_eq!(run(&["lambda2", &tri(), "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    let o = run(&["classify", &tri(), "--remove", "v1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("leader"));
    let o = run(&["classify", &tri(), "--remove", "v99"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("v99"));
    let o = run(&["enumerate", &tri(), "--max-k", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(run(&["--help"]).status.success());
}

#[test]
fn enumerate_is_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let sq1 = fixture("g_sq1.json").display().to_string();
    assert!(run(&[
        "enumerate",
        &sq1,
        "--max-k",
        "3",
        "--jobs",
        "1",
        "--out",
        a.to_str().unwrap()
    ])
    .status
    .success());
    assert!(run(&[
        "enumerate",
        &sq1,
        "--max-k",
        "3",
        "--jobs",
        "3",
        "--out",
        b.to_str().unwrap()
    ])
    .status
    .success());
    let (ta, tb) = (
        fs::read_to_string(&a).unwrap(),
        fs::read_to_string(&b).unwrap(),
    );
    assert_eq!(ta, tb);
    assert_eq!(ta.lines().count(), 1 + 1 + 10 + 45 + 120);
    assert_eq!(stdout(&run(&["enumerate", &sq1, "--max-k", "3"])), ta);
}

#[test]
fn enumerate_listed_subsets() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("sets.txt");
    fs::write(&list, "# reference rows\nv4 v5 v10\nv2\n---\n").unwrap();
    let o = run(&["enumerate", &tri(), "--subsets", list.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows[0], "---,1.0000,---,preserved,consistent");
    assert_eq!(rows[1], "v2,0.4679,v4,degraded,consistent");
    assert_eq!(rows[2], "v4 v5 v10,0.1981,v7 v8,degraded,consistent");
}

#[test]
fn simulate_writes_trace_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.json");
    fs::write(&cfg, r#"{"dt":0.05,"duration":2,"perturbation_pos":0.5,"perturbation_vel":0.2,"leader_velocity":[0,1],"seed":1}"#).unwrap();
    let out = dir.path().join("run");
    let o = run(&[
        "simulate",
        &tri(),
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let trace = fs::read_to_string(out.join("trace.csv")).unwrap();
    assert_eq!(trace.lines().next(), Some("t,node,px,py,vx,vy"));
    assert_eq!(trace.lines().count(), 1 + 41 * 10);
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["lambda2"], serde_json::json!(1.0));
    assert!(summary["decay_rate"].as_f64().unwrap() > 0.0);

    let again = dir.path().join("again");
    run(&[
        "simulate",
        &tri(),
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(trace, fs::read_to_string(again.join("trace.csv")).unwrap());
}

#[test]
fn simulate_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.json");
    fs::write(&cfg, r#"{"dt":-1}"#).unwrap();
    let o = run(&[
        "simulate",
        &tri(),
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("dt"));
    fs::write(&cfg, r#"{"step":0.1}"#).unwrap();
    let o = run(&[
        "simulate",
        &tri(),
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("step"));
}

#[test]
fn verify_small_run() {
    let o = run(&["verify", "--seeds", "20", "--jobs", "2"]);
    assert!(o.status.success(), "{}\n{}", stdout(&o), stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
    assert!(out.contains("table fidelity (50 cases)"));
    assert_eq!(out.lines().count(), 15);
}
