use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sublab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sublab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn list_names_every_suite() {
    let o = sublab(&["list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let names: Vec<&str> = text
        .lines()
        .filter_map(|l| l.split_whitespace().next())
        .collect();
    assert!(names.len() >= 10);
    for s in [
        "zp-non-usc",
        "hall-separability",
        "grigorchuk-tower",
        "law-derived-equivalence",
        "sigma-partition",
        "n-constancy",
        "envelope-law",
        "neumann-example",
        "germ-closure-probe",
        "closure-idempotence",
    ] {
        assert!(names.contains(&s), "{s} missing from {names:?}");
    }
}

#[test]
fn unknown_suite_is_an_input_error() {
    let o = sublab(&["run", "--suite", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("no-such-suite") && err.contains("zp-non-usc"),
        "{err}"
    );
}

#[test]
fn passing_suite_exits_zero_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = sublab(&["run", "--suite", "grigorchuk-tower", "--output", out]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let j = read_json(&dir.path().join("grigorchuk-tower.json"));
    assert_eq!(j["schema"], 1);
    assert_eq!(j["passed"], true);
    assert_eq!(j["parameters"]["depth"], 5);
    let csv = std::fs::read_to_string(dir.path().join("grigorchuk-tower.csv")).unwrap();
    assert!(csv.starts_with("depth,degree,order"));
    assert!(csv.contains("5,32,4194304,22"));
    assert!(dir.path().join("grigorchuk-tower.checks.csv").exists());
}

#[test]
fn failing_check_exits_one() {
    // The literal "trivial from n = 3" claim does not hold at height 2^6.
    let o = sublab(&["run", "--suite", "zp-non-usc"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL truncation-trivial-for-n-ge-3"));
    assert!(stdout(&o).contains("PASS usc-violation-witness-is-1"));
}

#[test]
fn reports_are_reproducible_apart_from_timing() {
    let runs: Vec<tempfile::TempDir> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let o = sublab(&[
                "run",
                "--suite",
                "sigma-partition",
                "--output",
                dir.path().to_str().unwrap(),
            ]);
            assert!(o.status.success());
            dir
        })
        .collect();
    for f in ["sigma-partition.csv", "sigma-partition.checks.csv"] {
        let a = std::fs::read(runs[0].path().join(f)).unwrap();
        let b = std::fs::read(runs[1].path().join(f)).unwrap();
        assert_eq!(a, b, "{f}");
    }
    let strip = |d: &Path| {
        let mut j = read_json(&d.join("sigma-partition.json"));
        j.as_object_mut().unwrap().remove("timing");
        serde_json::to_string_pretty(&j).unwrap()
    };
    assert_eq!(strip(runs[0].path()), strip(runs[1].path()));
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.toml");
    std::fs::write(
        &cfg,
        "suite = \"grigorchuk-tower\"\noutput = \"reports\"\nseed = 7\n\n[params]\nprobe_depth = 3\n",
    )
    .unwrap();
    let o = sublab(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--probe-depth",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // Output is relative to the config file.
    let j = read_json(&dir.path().join("reports/grigorchuk-tower.json"));
    assert_eq!(j["seed"], 7);
    assert_eq!(j["parameters"]["depth"], 4);
}

#[test]
fn malformed_config_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(
        &cfg,
        "suite = \"zp-non-usc\"\n[params]\nradius = 3\nbogus = 1\n",
    )
    .unwrap();
    let o = sublab(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = sublab(&["run", "--suite", "zp-non-usc", "--samples", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exceeded_budget_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.toml");
    std::fs::write(
        &cfg,
        "suite = \"grigorchuk-tower\"\n[budgets]\ndegree = 8\n",
    )
    .unwrap();
    let o = sublab(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn group_and_law_files_replace_the_corpus() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("s3.grp"),
        "name S3\ndegree 3\ngenerator (1 2 3)\ngenerator (1 2)\n",
    )
    .unwrap();
    std::fs::write(
        dir.path().join("laws.txt"),
        "law abelian\narity 2\nterm x1 x2 x1^-1 x2^-1\n\nlaw metabelian\narity 4\nterm [[x1,x2],[x3,x4]]\n",
    )
    .unwrap();
    let cfg = dir.path().join("exp.toml");
    std::fs::write(
        &cfg,
        "suite = \"law-derived-equivalence\"\noutput = \"out\"\n[inputs]\ngroups = [\"s3.grp\"]\nlaws = \"laws.txt\"\n",
    )
    .unwrap();
    let o = sublab(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}{}",
        stdout(&o),
        String::from_utf8_lossy(&o.stderr)
    );
    let csv = std::fs::read_to_string(dir.path().join("out/law-derived-equivalence.csv")).unwrap();
    assert!(
        csv.contains("S3,6,2,abelian,false,false,brute-force"),
        "{csv}"
    );
    assert!(
        csv.contains("S3,6,2,metabelian,true,true,brute-force"),
        "{csv}"
    );
}

#[test]
fn bundled_experiment_files_run() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../experiments");
    for (file, suite) in [
        ("laws.toml", "law-derived-equivalence"),
        ("envelope.toml", "envelope-law"),
        ("hall.toml", "hall-separability"),
        ("closure.toml", "closure-idempotence"),
    ] {
        let dir = tempfile::tempdir().unwrap();
        let cfg = root.join(file);
        let o = sublab(&[
            "run",
            "--config",
            cfg.to_str().unwrap(),
            "--output",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{file}: {}{}",
            stdout(&o),
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(dir.path().join(format!("{suite}.json")).exists());
    }
}
