//! Reports for the bundled configs, compared byte for byte with `tests/golden`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::Command;

const CASES: &[(&str, &str, &[&str])] = &[
    ("swap_z3", "oracle-compare", &[]),
    ("swap_z3", "opext", &["--reps"]),
    ("matrix_a_z3", "opext", &["--reps"]),
    ("matrix_a_z3", "five-term", &[]),
    ("rotation_z4", "oracle-compare", &[]),
    ("s3", "kac-seq", &[]),
    ("s3", "validate", &[]),
    ("trivial_z2", "kac-seq", &[]),
    ("z2z2_on_z2_4", "opext", &[]),
    ("z12", "cohomology", &[]),
];

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).to_path_buf()
}

fn report(config: &str, task: &str, extra: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_opextkit"))
        .arg(task)
        .arg("--config")
        .arg(root().join("configs").join(format!("{config}.toml")))
        .args(["--json", "-"])
        .args(extra)
        .env("OPEXTKIT_FIXED_TIMING", "1")
        .output()
        .unwrap();
    assert!(out.status.success(), "{config} {task}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (config, task, extra) in CASES {
        let name = format!("{config}.{task}.json");
        let path = root().join("tests/golden").join(&name);
        let got = report(config, task, extra);
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
        assert!(got == want, "{name} differs from its golden file");
    }
}

#[test]
fn reports_are_deterministic() {
    let a = report("matrix_a_z3", "opext", &["--reps"]);
    let b = report("matrix_a_z3", "opext", &["--reps"]);
    assert_eq!(a, b);
}
