use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use choosability::io::{parse_graph, RunReport};
use choosability::presets::Preset;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_choosability"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";

#[test]
fn mad_of_five_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c5.txt", C5);
    let out = run(&["mad", s(&g)]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["mad"], "2/1");
    assert_eq!(doc["witness"].as_array().unwrap().len(), 5);
}

#[test]
fn malformed_edge_line_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "bad.txt", "3 2\n0 1\n1 two\n");
    let out = run(&["mad", s(&g)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.txt:3:"), "{err}");
}

#[test]
fn earth_moon_extension_report() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("em.txt");
    assert!(run(&[
        "gen",
        "--family",
        "earthMoon",
        "--n",
        "30",
        "--seed",
        "4",
        "-o",
        s(&g)
    ])
    .status
    .success());
    let graph = parse_graph(&std::fs::read_to_string(&g).unwrap()).unwrap();
    let report_path = dir.path().join("r.json");
    let out = run(&[
        "colour-clustered",
        s(&g),
        "--mode",
        "ext",
        "--k",
        "8",
        "--seed",
        "3",
        "--json",
        s(&report_path),
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = std::fs::read_to_string(&report_path).unwrap();
    let report: RunReport = serde_json::from_str(&text).unwrap();
    assert!(report.ok);
    assert_eq!(report.bound, 405);
    assert!(report.clustering <= 405);
    assert_eq!(report.colours.len(), graph.vertex_count());
    assert_eq!(report.seed, 3);
    assert_eq!(report.input_sha256.len(), 64);
    assert_eq!(serde_json::to_string_pretty(&report).unwrap(), text);
}

#[test]
fn every_clustered_mode_succeeds_on_a_sparse_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    assert!(run(&[
        "gen",
        "--family",
        "apollonian",
        "--n",
        "25",
        "--seed",
        "1",
        "-o",
        s(&g)
    ])
    .status
    .success());
    for mode in ["maxdeg", "abs9", "mad7_10", "ext"] {
        let out = run(&["colour-clustered", s(&g), "--mode", mode, "--seed", "2"]);
        assert!(out.status.success(), "{mode}: {}", stdout(&out));
        assert!(stdout(&out).starts_with("ok:"));
    }
    let out = run(&["colour-defective", s(&g), "--d", "2"]);
    assert!(out.status.success());
}

#[test]
fn short_lists_give_density_certificate_and_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let k6 = (0..6)
        .flat_map(|u| (u + 1..6).map(move |v| format!("{u} {v}\n")))
        .collect::<String>();
    let g = write(dir.path(), "k6.txt", &format!("6 15\n{k6}"));
    let report_path = dir.path().join("r.json");
    let out = run(&[
        "colour-defective",
        s(&g),
        "--d",
        "0",
        "--k",
        "2",
        "--json",
        s(&report_path),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: RunReport =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert!(!report.ok);
    assert!(report.colours.is_empty());
    assert!(report.certificate.is_some());
}

#[test]
fn explicit_lists_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c5.txt", C5);
    let lists = write(
        dir.path(),
        "l.txt",
        "0: 1 2\n1: 1 2\n2: 1 2\n3: 1 2\n4: 1 2\n",
    );
    let good = write(dir.path(), "good.txt", "1 2 1 2 2\n");
    let args = |phi: &Path, bound: &str| {
        run(&[
            "verify",
            s(&g),
            "--lists",
            s(&lists),
            "--colouring",
            s(phi),
            "--kind",
            "clustering",
            "--bound",
            bound,
        ])
    };
    assert!(args(&good, "2").status.success());
    assert_eq!(args(&good, "1").status.code(), Some(1));
    let outside = write(dir.path(), "bad.txt", "1 2 1 2 3\n");
    assert_eq!(args(&outside, "5").status.code(), Some(2));
}

#[test]
fn oracle_on_five_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c5.txt", C5);
    let lists = write(dir.path(), "l.txt", "uniform 2 seed=0 pool=2\n");
    let json = dir.path().join("o.json");
    let out = run(&[
        "oracle",
        s(&g),
        "--objective",
        "defect",
        "--lists",
        s(&lists),
        "--json",
        s(&json),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["minimum"], 1);
}

#[test]
fn preset_rows() {
    let out = run(&["preset", "thickness", "--t", "1"]);
    assert!(out.status.success());
    let preset: Preset = serde_json::from_str(&stdout(&out)).unwrap();
    let rows: Vec<(usize, usize)> = preset.rows.iter().map(|r| (r.colours, r.bound)).collect();
    assert_eq!(rows, vec![(5, 2), (5, 9), (4, 177)]);
    assert_eq!(run(&["preset", "stack"]).status.code(), Some(2));
}

#[test]
fn generator_is_deterministic() {
    let a = stdout(&run(&[
        "gen",
        "--family",
        "randomMadBounded",
        "--n",
        "12",
        "--target",
        "7/2",
        "--seed",
        "9",
    ]));
    let b = stdout(&run(&[
        "gen",
        "--family",
        "randomMadBounded",
        "--n",
        "12",
        "--target",
        "7/2",
        "--seed",
        "9",
    ]));
    assert_eq!(a, b);
    assert!(parse_graph(&a).is_ok());
}

#[test]
fn hidden_transversal_command() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "4 4\n0 2\n0 3\n1 2\n1 3\n");
    let parts = write(dir.path(), "p.txt", "0 1\n2 3\n");
    let out = run(&["transversal", s(&g), "--parts", s(&parts)]);
    assert_eq!(out.status.code(), Some(1));
    let g = write(dir.path(), "h.txt", "4 1\n0 2\n");
    let out = run(&["transversal", s(&g), "--parts", s(&parts)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"transversal\":["));
}
