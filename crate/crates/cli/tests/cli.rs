use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qholonomic::operator::example_annihilator;
use qholonomic::qseq::example_polynomial;
use qholonomic::PolyOperator;
use tempfile::TempDir;

fn qholo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qholo")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn example_files(dir: &TempDir) -> (PathBuf, PathBuf) {
    let op = write(dir, "pf.json", &example_annihilator().to_json());
    let init = write(dir, "init.txt", "1\n2 - q^2\n");
    (op, init)
}

#[test]
fn analyze_example_reports_headline_facts() {
    let dir = TempDir::new().unwrap();
    let (op, init) = example_files(&dir);
    let json = dir.path().join("report.json");
    let svg = dir.path().join("newton.svg");
    let o = qholo(&["analyze", s(&op), s(&init), "--json", s(&json), "--svg", s(&svg)]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("slope 0 (length 2): edge polynomial L^2 - 2 L + 1"));
    assert!(out.contains("regular singular: true"));
    assert!(out.contains("max degree: n ≡ 0 (mod 1): (3/2)n² + (1/2)n + (0)"));
    assert!(out.contains("min leading-term recurrence: x^2 - 2x + 1"));
    assert!(out.contains("max leading-term recurrence: x + 1"));
    assert!(out.contains("predicted leading term: (1 + 1·n)·(1)^n"));
    assert!(!out.contains("FAIL"));

    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(report["config"]["Tq"], 20);
    let mut verts: Vec<String> = report["tropical"]["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| format!("{},{}", v[0].as_str().unwrap(), v[1].as_str().unwrap()))
        .collect();
    verts.sort();
    assert_eq!(verts, ["-1,-2", "0,-1", "0,-3/2", "1,-3/2", "3,-2"]);
    assert_eq!(report["max_side"]["leading_terms"][3], "-1");
    assert_eq!(report["min_side"]["leading_terms"][4], "5");

    // byte-identical reruns
    let json2 = dir.path().join("report2.json");
    let svg2 = dir.path().join("newton2.svg");
    let o2 = qholo(&["analyze", s(&op), s(&init), "--json", s(&json2), "--svg", s(&svg2)]);
    assert_eq!(o.stdout, o2.stdout);
    assert_eq!(fs::read(&json).unwrap(), fs::read(&json2).unwrap());
    assert_eq!(fs::read(&svg).unwrap(), fs::read(&svg2).unwrap());
}

#[test]
fn analyze_trivial_operator() {
    let dir = TempDir::new().unwrap();
    let op = write(&dir, "op.txt", "L - 1");
    let init = write(&dir, "init.txt", "1\n");
    let o = qholo(&["analyze", s(&op), s(&init)]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("min degree: n ≡ 0 (mod 1): (0/2)n² + (0)n + (0)"));
    assert!(out.contains("min leading-term recurrence: x - 1"));
}

#[test]
fn vanishing_leading_coefficient_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let op = write(&dir, "op.txt", "L - M L - 1");
    let init = write(&dir, "init.txt", "1\n");
    let o = qholo(&["analyze", s(&op), s(&init)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("leading coefficient vanishes at n = 0"));
}

#[test]
fn malformed_inputs_exit_with_three() {
    let dir = TempDir::new().unwrap();
    let op = write(&dir, "op.txt", "L - 1");
    let init = write(&dir, "init.txt", "1\n1\n");
    assert_eq!(qholo(&["analyze", s(&op), s(&init)]).status.code(), Some(3));
    let bad = write(&dir, "bad.txt", "L ^^ 2");
    assert_eq!(qholo(&["newton", s(&bad)]).status.code(), Some(3));
    let missing = dir.path().join("missing.txt");
    assert_eq!(qholo(&["newton", s(&missing)]).status.code(), Some(3));
}

#[test]
fn guess_recovers_the_example_operator() {
    let dir = TempDir::new().unwrap();
    let seq: String = (0..18).map(|n| format!("{}\n", example_polynomial(n))).collect();
    let f = write(&dir, "seq.txt", &seq);
    let out = dir.path().join("op.json");
    let o = qholo(&["guess", s(&f), "--box", "2,6,9", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let p = PolyOperator::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(p, example_annihilator());
}

#[test]
fn guess_geometric_data() {
    let dir = TempDir::new().unwrap();
    let seq: String = (0..12).map(|n| format!("q^{n}\n")).collect();
    let f = write(&dir, "seq.txt", &seq);
    let o = qholo(&["guess", s(&f), "--box", "1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("1 L - 1 q"));
}

#[test]
fn guess_on_noise_finds_nothing() {
    let dir = TempDir::new().unwrap();
    let seq: String = (0..20u64)
        .map(|n| {
            let c: Vec<String> = (0..5u64).map(|k| format!("{}*q^{k}", (n * 7919 + k * 104_729) % 97 + 1)).collect();
            c.join(" + ") + "\n"
        })
        .collect();
    let f = write(&dir, "noise.txt", &seq);
    let o = qholo(&["guess", s(&f), "--box", "2,2,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unroll_then_degree_fit() {
    let dir = TempDir::new().unwrap();
    let op = write(&dir, "op.txt", "L - q M");
    let init = write(&dir, "init.txt", "1\n");
    let o = qholo(&["unroll", s(&op), s(&init), "--count", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let terms = stdout(&o);
    assert_eq!(terms.lines().nth(4), Some("1*q^(10)"));
    let f = write(&dir, "seq.txt", &terms);
    let o = qholo(&["degree-fit", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degree: n ≡ 0 (mod 1): (1/2)n² + (1/2)n + (0)"));
    let flat = write(&dir, "flat.txt", "1\n2\n");
    assert_eq!(qholo(&["degree-fit", s(&flat)]).status.code(), Some(2));
}

#[test]
fn figures() {
    let dir = TempDir::new().unwrap();
    let (op, _) = example_files(&dir);
    let o = qholo(&["render", "tropical", s(&op)]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert_eq!(svg.matches("<circle").count(), 5);
    assert!(svg.contains(">2</text>"));
    let newton = stdout(&qholo(&["render", "newton", s(&op)]));
    assert_eq!(newton.matches("fill=\"black\" stroke=\"black\"").count(), 2);
    let trivial = write(&dir, "triv.txt", "L - 1");
    let empty = stdout(&qholo(&["render", "tropical", s(&trivial)]));
    assert!(empty.starts_with("<svg") && !empty.contains("<circle"));
    let out = dir.path().join("sub.svg");
    assert_eq!(qholo(&["render", "subdivision", s(&op), "--svg", s(&out)]).status.code(), Some(0));
    assert!(fs::read_to_string(&out).unwrap().contains("<line"));
}

#[test]
fn factor_and_wkb_subcommands() {
    let dir = TempDir::new().unwrap();
    let op = write(&dir, "op.txt", "L^2 - L - q L + q - M");
    let o = qholo(&["factor", s(&op), "--TM", "6", "--Tq", "8"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("check slope-law: pass"));
    assert_eq!(out.matches("factor ").count(), 2);
    let init = write(&dir, "init.txt", "1\n1\n");
    let o = qholo(&["wkb", s(&op), "--init", s(&init), "--Tq", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("coordinate 1: "));
    let (pf, _) = example_files(&dir);
    // a repeated eigenvalue has no first-order factorization in this setting
    assert_eq!(qholo(&["factor", s(&pf)]).status.code(), Some(1));
}
