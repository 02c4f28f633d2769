//! Exit codes and output of the `depcalc` binary, per subcommand.

use std::path::{Path, PathBuf};
use std::process::Command;

use depcalc::poly::FinitePolynomial;
use depcalc::{evaluate, Expression, FinitePoset};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn depcalc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_depcalc"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write_temp(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn check() {
    let (code, out, _) = depcalc(&["check", &fixture("zigzag.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("(0,1,2,3)"), "{out}");
    let (code, out, _) = depcalc(&["check", &fixture("expression.json")]);
    assert_eq!((code, out.as_str()), (0, "expressible\n"));
    let (code, out, _) = depcalc(&["--format", "json", "check", &fixture("zigzag.json")]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["obstruction"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn decompose() {
    let (code, out, _) = depcalc(&["decompose", &fixture("expression.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, "(tri x0 (ox x1 (tri x2 x3)))\n");
    assert_eq!(depcalc(&["decompose", &fixture("zigzag.json")]).0, 1);

    // the printed expression evaluates back to the input
    let (_, out, _) = depcalc(&["--format", "json", "decompose", &fixture("expression.json")]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let e: Expression = v["expression"].as_str().unwrap().parse().unwrap();
    let input = FinitePoset::from_json_str(&std::fs::read_to_string(fixture("expression.json")).unwrap()).unwrap();
    assert_eq!(evaluate(&e).unwrap(), input);
}

#[test]
fn eval() {
    let (code, out, _) = depcalc(&["eval", "(ox (tri x0 x1) (tri x2 x3))"]);
    assert_eq!(code, 0);
    let p = FinitePoset::from_json_str(out.trim()).unwrap();
    assert_eq!(p.to_json_string(), out.trim());
    let (code, out, _) = depcalc(&["--format", "dot", "eval", "(tri x0 x1)"]);
    assert_eq!(code, 0);
    assert!(out.contains("0 -> 1;"));
    assert_eq!(depcalc(&["eval", "(tri x0 x0)"]).0, 2);
    assert_eq!(depcalc(&["eval", "(tri x0"]).0, 2);
}

#[test]
fn derive() {
    let dir = tempfile::tempdir().unwrap();
    let crossed = write_temp(&dir, "crossed.json", r#"{"elements":4,"relations":[[0,1],[0,3],[2,1],[2,3]]}"#);
    let crossed = crossed.to_str().unwrap();
    let (code, out, _) = depcalc(&["derive", &fixture("two_chains.json"), crossed]);
    assert_eq!(code, 0);
    assert!(out.starts_with("interchanger"), "{out}");
    assert_eq!(depcalc(&["derive", crossed, &fixture("two_chains.json")]).0, 1);
    assert_eq!(depcalc(&["derive", &fixture("zigzag.json"), &fixture("zigzag.json")]).0, 1);
    let (code, out, _) = depcalc(&["--format", "json", "derive", &fixture("two_chains.json"), crossed]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let src: Expression = v["source"].as_str().unwrap().parse().unwrap();
    assert_eq!(src.to_string(), "(ox (tri x0 x1) (tri x2 x3))");
}

#[test]
fn covers_and_intersect() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = depcalc(&["covers", &fixture("zigzag.json")]);
    assert_eq!(code, 0);
    let paths: Vec<String> = out
        .lines()
        .enumerate()
        .map(|(k, line)| {
            FinitePoset::from_json_str(line).unwrap();
            write_temp(&dir, &format!("c{k}.json"), line).to_string_lossy().into_owned()
        })
        .collect();
    let mut args = vec!["intersect"];
    args.extend(paths.iter().map(String::as_str));
    let (code, out, _) = depcalc(&args);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"elements":4,"relations":[[0,1],[2,1],[2,3]]}"#);

    let (code, out, _) = depcalc(&["--format", "json", "covers", &fixture("zigzag.json")]);
    assert_eq!(code, 0);
    let list: Vec<depcalc::poset::PosetJson> = serde_json::from_str(&out).unwrap();
    assert_eq!(list.len(), paths.len());

    let small = write_temp(&dir, "small.json", r#"{"elements":2}"#);
    assert_eq!(depcalc(&["intersect", &fixture("zigzag.json"), small.to_str().unwrap()]).0, 2);
    assert_eq!(depcalc(&["intersect"]).0, 2);
}

#[test]
fn tropical() {
    let (code, out, _) = depcalc(&["tropical", &fixture("two_chains.json"), "--runtimes", "1,3,4,1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("makespan 5\n"), "{out}");
    let (code, out, _) = depcalc(&[
        "tropical",
        &fixture("two_chains.json"),
        "--runtimes",
        "1,3,4,1",
        "--gantt",
        "--resolution",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("2 |########..| 0..4"), "{out}");
    assert_eq!(depcalc(&["tropical", &fixture("two_chains.json"), "--runtimes", "1,-3,4,1"]).0, 2);
    assert_eq!(depcalc(&["tropical", &fixture("two_chains.json"), "--runtimes", "1,3"]).0, 2);
    assert_eq!(depcalc(&["tropical", &fixture("two_chains.json")]).0, 2);
}

#[test]
fn poly() {
    let (code, out, _) = depcalc(&["--format", "json", "poly", "ox", "2,1", "1,0"]);
    assert_eq!(code, 0);
    let p = FinitePolynomial::from_json_str(out.trim()).unwrap();
    assert_eq!(p.positions(), &[2, 0, 1, 0]);
    let dir = tempfile::tempdir().unwrap();
    let file = write_temp(&dir, "p.json", r#"{"positions":[2,1]}"#);
    let (code, out, _) = depcalc(&["poly", "tri", file.to_str().unwrap(), "1,0"]);
    assert_eq!(code, 0);
    assert!(out.contains("signature {2,1,1,1,0,0}"), "{out}");
    let (code, out, _) = depcalc(&["poly", "ox", "2,1", "1,0", "--verbose"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("position 2: 1 directions\nposition 3: 0 directions\n"), "{out}");
    let (code, out, _) = depcalc(&["poly", "boxtimes", &fixture("two_chains.json"), "1", "1", "1", "1"]);
    assert_eq!((code, out.as_str()), (0, "y\nsignature {1}\n"));
    let (code, _, _) = depcalc(&[
        "poly",
        "boxtimes",
        &fixture("two_chains.json"),
        "1",
        "1",
        "1",
        "1",
        "--extension",
        "1,0,2,3",
    ]);
    assert_eq!(code, 2);
    assert_eq!(depcalc(&["poly", "boxtimes", &fixture("two_chains.json"), "1"]).0, 2);
}

#[test]
fn diagram() {
    let pg = fixture("stringdiagram_polygraph.json");
    let diag = fixture("stringdiagram.json");
    let (code, out, _) = depcalc(&["diagram", "validate", "--polygraph", &pg, &diag]);
    assert_eq!((code, out.as_str()), (0, "valid\n"));
    let (code, out, _) = depcalc(&["--format", "json", "diagram", "edge-poset", "--polygraph", &pg, &diag]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let p: depcalc::poset::PosetJson = serde_json::from_value(v["poset"].clone()).unwrap();
    assert_eq!(p.elements, 7);
    let (code, out, _) = depcalc(&[
        "diagram",
        "decorate",
        "--polygraph",
        &pg,
        &diag,
        "--assign",
        "f=1,g=1,h=1,i=1,j=1,k=1,l=1",
    ]);
    assert_eq!((code, out.as_str()), (0, "5\n"));
    let (code, _, err) = depcalc(&["diagram", "decorate", "--polygraph", &pg, &diag, "--assign", "f=1"]);
    assert_eq!(code, 2);
    assert!(err.contains("`g`"), "{err}");
    let (code, out, _) = depcalc(&[
        "diagram",
        "decorate",
        "--algebra",
        "poly",
        "--polygraph",
        &pg,
        &diag,
        "--assign",
        "f=1,g=1,h=1,i=1,j=1,k=1,l=1:0",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("signature {1,0}"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let broken = write_temp(&dir, "broken.json", r#"{"input":["x1"],"output":["y1"],"layers":[[{"gen":"g"}]]}"#);
    let (code, out, _) = depcalc(&["diagram", "validate", "--polygraph", &pg, broken.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid at stage 0"), "{out}");
    assert_eq!(depcalc(&["diagram", "edge-poset", "--polygraph", &pg, broken.to_str().unwrap()]).0, 2);
}

#[test]
fn usage_errors() {
    assert_eq!(depcalc(&[]).0, 2);
    assert_eq!(depcalc(&["nope"]).0, 2);
    assert_eq!(depcalc(&["--format", "yaml", "check", &fixture("zigzag.json")]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let junk = write_temp(&dir, "junk.json", "{");
    assert_eq!(depcalc(&["check", junk.to_str().unwrap()]).0, 2);
    let cyclic = write_temp(&dir, "cyclic.json", r#"{"elements":2,"relations":[[0,1],[1,0]]}"#);
    let (code, _, err) = depcalc(&["check", cyclic.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("cycle"), "{err}");
    assert_eq!(depcalc(&["--version"]).0, 0);
}
