use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stabtree"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn tree_writes_dot_with_nerve() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("out.dot");
    let g = data("band.json");
    let out = run(&[
        "tree",
        "--input",
        g.to_str().unwrap(),
        "--cap",
        "8",
        "--dot",
        dot.to_str().unwrap(),
        "--json",
    ]);
    let v = json(&out);
    assert_eq!(v["shape"], "Band");
    assert_eq!(v["d"], 4);
    assert_eq!(v["r"], 1);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 17);
    assert_eq!(v["nerve"].as_array().unwrap().len(), 3);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("graph "));
    assert_eq!(text.matches("fillcolor=lightblue").count(), 3);
}

#[test]
fn invariants_of_the_band() {
    let g = data("band.json");
    let v = json(&run(&[
        "invariants",
        "--input",
        g.to_str().unwrap(),
        "--json",
    ]));
    assert_eq!(
        (v["n"].as_u64(), v["m"].as_u64(), v["k"].as_u64()),
        (Some(4), Some(1), Some(2))
    );
    assert_eq!((v["d"].as_u64(), v["r"].as_u64()), (Some(4), Some(1)));
    assert_eq!(v["k_empirical"]["k"], 2);
}

#[test]
fn witness_from_character_file() {
    let g = data("band.json");
    let c = data("diag.json");
    let v = json(&run(&[
        "witness",
        "--input",
        g.to_str().unwrap(),
        "--chars",
        c.to_str().unwrap(),
        "--json",
    ]));
    assert_eq!(v["distance"], 4);
}

#[test]
fn outputs_are_deterministic() {
    let g = data("band.json");
    let args = [
        "oracle",
        "--input",
        g.to_str().unwrap(),
        "--json",
        "--jobs",
        "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["ball"]["agrees_with_bfs"], true);
    assert_eq!(v["pairs"][1]["count"], 0);
}

#[test]
fn counterexample_and_hensel() {
    let v = json(&run(&["counterexample", "--json"]));
    assert_eq!(v["s"], 3);
    assert_eq!(v["lattice_at_s"]["no_lattice"], false);
    assert_eq!(v["lattice_at_n"]["no_lattice"], true);
    assert_eq!(v["tree"]["vertices"], 29);
    let v = json(&run(&[
        "hensel",
        "--p",
        "5",
        "--precision",
        "6",
        "--trace",
        "5",
        "--det",
        "4",
        "--alpha",
        "1",
        "--beta",
        "4",
        "--n",
        "6",
        "--json",
    ]));
    assert_eq!(v["alpha"][0], 1);
    assert_eq!(v["gap"], 0);
}

#[test]
fn exit_codes() {
    let out = run(&["tree", "--input", "/definitely/missing.json"]);
    assert_eq!(out.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"ring\": 3\n}").unwrap();
    let out = run(&["tree", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let irr = dir.path().join("irr.json");
    std::fs::write(
        &irr,
        r#"{"ring": {"kind": "unramified-p-adic", "p": 3, "precision": 8},
            "generators": [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]}"#,
    )
    .unwrap();
    let out = run(&["invariants", "--input", irr.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["ribet", "--input", irr.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "hensel",
        "--p",
        "5",
        "--precision",
        "6",
        "--trace",
        "2",
        "--det",
        "1",
        "--alpha",
        "1",
        "--beta",
        "1",
        "--n",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
