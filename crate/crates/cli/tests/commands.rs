use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bredon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bredon")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel)
}

fn field(line: &str, key: &str) -> String {
    line.split_whitespace()
        .find_map(|w| w.strip_prefix(&format!("{key}=")))
        .unwrap()
        .to_string()
}

#[test]
fn info_lists_weyl_orders() {
    let o = bredon(&["info", "--group", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    let weyl: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with("class")).map(|l| field(l, "weyl")).collect();
    assert_eq!(weyl, ["1", "1", "2", "1"]);

    let o = bredon(&["info", "--group", "Z1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 1);

    let o = bredon(&["info", "--group", "S3", "--double-cosets", "1", "1"]);
    assert!(stdout(&o).contains("double cosets {0,1}\\G/{0,1}: 2"), "{}", stdout(&o));
}

#[test]
fn malformed_group_file_exits_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.grp");
    fs::write(&path, "group X\norder 2\n0 1\n1 y\n").unwrap();
    let o = bredon(&["info", "--group", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));

    let o = bredon(&["info", "--group", data("invalid/nonassoc.grp").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not associative"));
}

#[test]
fn mackey_validation() {
    let o = bredon(&["mackey", "--group", "D4", "--coeff", "burnside"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
    let o = bredon(&["mackey", "--group", "S3", "--coeff", "repring"]);
    assert_eq!(o.status.code(), Some(0));

    let corrupt = data("invalid/corrupt_ind.mky");
    let o = bredon(&["mackey", "--group", "Z2", "--coeff", "file", "--coeff-file", corrupt.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.contains("FAIL axiom (c) double coset formula") && out.contains("L = {0,1}"), "{out}");

    let o = bredon(&["mackey", "--group", "Z2", "--coeff", "file", "--coeff-file", corrupt.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn perturbed_character_table_is_rejected() {
    let o = bredon(&[
        "mackey",
        "--group",
        "S3",
        "--coeff",
        "repring",
        "--chartab",
        data("invalid/S3_perturbed.ctb").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("character table"), "{}", stderr(&o));
}

#[test]
fn bredon_examples() {
    let o = bredon(&["bredon", "--space", "reflection_circle", "--coeff", "repring"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total n=0 bredon=3\n") && stdout(&o).contains("total n=1 bredon=0\n"));

    let o = bredon(&["bredon", "--space", "orbit:{0,3,4}", "--group", "S3", "--coeff", "repring"]);
    assert!(stdout(&o).contains("total n=0 bredon=3\n"), "{}", stdout(&o));

    let o = bredon(&["bredon", "--space", "point", "--group", "Z1"]);
    assert!(stdout(&o).contains("total n=0 bredon=1\n"));

    let o = bredon(&["bredon", "--space", "point", "--group", "Z1", "--n-range", "2..1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parity_coefficients() {
    let o = bredon(&[
        "bredon", "--space", "reflection_circle", "--coeff", "repring", "--q-range", "-2..2", "--q-parity", "even",
        "--n-range", "-1..0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("bredon n=0 p=0 q=0 class=- dim=3"), "{out}");
    assert!(out.contains("bredon n=-1 p=1 q=-2 class=- dim=0"), "{out}");
    assert!(out.contains("total n=-1 bredon=0"));
}

#[test]
fn chern_agrees_and_reports_faults() {
    for (space, coeff) in [("reflection_circle", "repring"), ("s3_triangle", "burnside")] {
        let o = bredon(&["chern", "--space", space, "--coeff", coeff]);
        assert_eq!(o.status.code(), Some(0), "{space}");
        assert!(!stdout(&o).contains("MISMATCH"));
    }
    let o = bredon(&["chern", "--space", "reflection_circle", "--coeff", "repring", "--inject-fault", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("total n=0 bredon=4 chern=3 MISMATCH"));
    let err = stderr(&o);
    assert!(err.contains("mismatch at n=0") && err.contains("class={0,1} dim=2"), "{err}");
}

#[test]
fn text_and_json_reports_agree() {
    let args = ["chern", "--space", "d4_square", "--coeff", "repring"];
    let text = stdout(&bredon(&args));
    assert_eq!(text, stdout(&bredon(&args)));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&bredon(&json_args).stdout).unwrap();
    let dims: Vec<u64> = v["records"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    let text_dims: Vec<u64> = text
        .lines()
        .filter(|l| l.starts_with("bredon ") || l.starts_with("chern "))
        .map(|l| field(l, "dim").parse().unwrap())
        .collect();
    assert_eq!(dims, text_dims);
}

#[test]
fn selftest_quick_and_corrupted() {
    let o = bredon(&["selftest", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 failed\n"));

    let dir = tempfile::tempdir().unwrap();
    for sub in ["groups", "chartabs", "spaces"] {
        fs::create_dir_all(dir.path().join(sub)).unwrap();
        for e in fs::read_dir(data(sub)).unwrap() {
            let p = e.unwrap().path();
            fs::copy(&p, dir.path().join(sub).join(p.file_name().unwrap())).unwrap();
        }
    }
    let target = dir.path().join("spaces/s3_disk.gcw");
    let text = fs::read_to_string(&target).unwrap();
    let broken = text.replacen("boundary", "boundary_", 1);
    fs::write(&target, broken).unwrap();
    let o = bredon(&["selftest", "--quick", "--data-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("spaces/s3_disk.gcw"), "{}", stderr(&o));
}

#[test]
fn unknown_inputs_exit_2() {
    assert_eq!(bredon(&["info", "--group", "Z9"]).status.code(), Some(2));
    assert_eq!(bredon(&["bredon", "--space", "nowhere"]).status.code(), Some(2));
    assert_eq!(bredon(&["bredon", "--space", "point"]).status.code(), Some(2));
    assert_eq!(bredon(&["info", "--group", "S4", "--cap", "12"]).status.code(), Some(2));
    assert_eq!(bredon(&["bredon", "--space", "point", "--group", "Z2", "--coeff", "file"]).status.code(), Some(2));
}
