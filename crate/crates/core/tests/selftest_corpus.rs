use std::fs;
use std::path::Path;

use bredon_core::selftest::{run, Corpus};

fn copy_data(to: &Path) {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for dir in ["groups", "chartabs", "spaces"] {
        fs::create_dir_all(to.join(dir)).unwrap();
        for entry in fs::read_dir(root.join(dir)).unwrap() {
            let p = entry.unwrap().path();
            fs::copy(&p, to.join(dir).join(p.file_name().unwrap())).unwrap();
        }
    }
}

#[test]
fn bundled_corpus_passes_quick() {
    let report = run(&Corpus::bundled(), true);
    assert!(report.passed(), "{report}");
    assert!(report
        .checks
        .iter()
        .all(|c| c.check == "group table" || !(c.file.contains("S4") || c.file.contains("A4"))));
    assert!(report.checks.iter().any(|c| c.file == "spaces/s3_triangle.gcw" && c.check == "collapse with repring"));
}

#[test]
fn bundled_corpus_passes() {
    let report = run(&Corpus::bundled(), false);
    assert!(report.passed(), "{report}");
    assert!(report.checks.iter().any(|c| c.file == "groups/S4.grp" && c.check == "repring Mackey axioms"));
}

#[test]
fn directory_corpus_matches_bundled() {
    let dir = tempfile::tempdir().unwrap();
    copy_data(dir.path());
    let a = run(&Corpus::from_dir(dir.path()).unwrap(), true);
    let b = run(&Corpus::bundled(), true);
    assert_eq!(a.checks, b.checks);
}

#[test]
fn corrupted_files_are_named() {
    let dir = tempfile::tempdir().unwrap();
    copy_data(dir.path());
    let ctb = dir.path().join("chartabs/S3.ctb");
    let text = fs::read_to_string(&ctb).unwrap().replace("chi std: 2, 0, -1", "chi std: 2, 1, -1");
    fs::write(&ctb, text).unwrap();
    let gcw = dir.path().join("spaces/reflection_circle.gcw");
    let text = fs::read_to_string(&gcw).unwrap().replace("- 1*(b, 0)", "+ 1*(b, 0)");
    fs::write(&gcw, text).unwrap();

    let report = run(&Corpus::from_dir(dir.path()).unwrap(), true);
    assert!(!report.passed());
    let failed: Vec<(&str, &str)> = report.failures().map(|c| (c.file.as_str(), c.check.as_str())).collect();
    assert!(failed.contains(&("chartabs/S3.ctb", "orthogonality")), "{report}");
    assert!(failed.iter().all(|(f, _)| *f == "chartabs/S3.ctb" || f.starts_with("groups/S3") || *f == "spaces/reflection_circle.gcw" || f.starts_with("spaces/s3")), "{report}");
    assert!(report.to_string().contains("FAIL chartabs/S3.ctb: orthogonality"));

    let broken = dir.path().join("groups/Z3.grp");
    fs::write(&broken, fs::read_to_string(broken.as_path()).unwrap().replacen("1 2 0", "1 1 0", 1)).unwrap();
    let report = run(&Corpus::from_dir(dir.path()).unwrap(), true);
    assert!(report.failures().any(|c| c.file == "groups/Z3.grp"), "{report}");
}
