use std::path::Path;
use std::process::{Command, Output};

fn fqt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqt")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn fixtures_list_names_the_bundled_instances() {
    let o = fqt(&["fixtures", "list"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    for name in ["carlitz-f2", "carlitz-f3", "carlitz-torsion-c2-f3", "rank2-f2", "s3-f2-demo"] {
        assert!(out.contains(name), "{name} missing from\n{out}");
    }
}

#[test]
fn s3_demo_verifies_its_decomposition() {
    let o = fqt(&["fixtures", "show", "s3-f2-demo"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(String::from_utf8(o.stdout).unwrap().contains("36 pairs checked"));
}

#[test]
fn carlitz_class_number_formula_exits_zero() {
    let o = fqt(&["verify-cnf", "--fixture", "carlitz-f2", "--precision", "6"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("verify-cnf: PASS"));
}

#[test]
fn malformed_config_names_the_field() {
    let dir = tempdir("malformed");
    let p = dir.join("bad.toml");
    std::fs::write(&p, "fixture = \"carlitz-f2\"\nprecision = \"six\"\n").unwrap();
    let o = fqt(&["verify-cnf", "--config", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("precision"), "{}", stderr(&o));

    std::fs::write(&p, "fixture = \"carlitz-f2\"\nprecison = 6\n").unwrap();
    let o = fqt(&["lvalue", "--config", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("precison"), "{}", stderr(&o));
}

#[test]
fn config_file_drives_a_custom_cover() {
    let dir = tempdir("custom");
    let p = dir.join("c.toml");
    let shown = fqt(&["fixtures", "show", "carlitz-torsion-c2-f3"]);
    let mut text = String::from_utf8(shown.stdout).unwrap();
    text = text.replace("precision = 4", "precision = 3");
    std::fs::write(&p, text).unwrap();
    let o = fqt(&["mt3", "--config", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(String::from_utf8(o.stdout).unwrap().contains("N = 3"));
}

#[test]
fn unknown_fixture_is_a_config_error() {
    let o = fqt(&["lvalue", "--fixture", "carlitz-f5"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("fixture"));
}

#[test]
fn equality_check_refuses_wild_group_order() {
    let o = fqt(&["mt3", "--fixture", "wild-c2-f2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("divides |G|"), "{}", stderr(&o));
}

#[test]
fn ball_below_the_certified_index_is_a_budget_error() {
    let o = fqt(&["class-module", "--fixture", "nontrivial-h-f2", "--ball", "1"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn prime_bound_override_voids_certification() {
    let o = fqt(&["verify-cnf", "--fixture", "carlitz-f2", "--precision", "4", "--prime-bound-override", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("WARNING"));
    assert!(String::from_utf8(o.stdout).unwrap().contains("OVERRIDDEN"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = tempdir("det-a");
    let b = tempdir("det-b");
    for d in [&a, &b] {
        let o = fqt(&["mt2", "--fixture", "carlitz-torsion-c2-f3", "--precision", "4", "--threads", "2", "--report-dir", d.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    for f in ["mt2.json", "mt2.txt"] {
        let x = std::fs::read(a.join(f)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, std::fs::read(b.join(f)).unwrap(), "{f} differs");
    }
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join("mt2.json")).unwrap()).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["certification"]["prime_bound"], 5);
}

#[test]
fn json_output_carries_exact_coefficients() {
    let o = fqt(&["lvalue", "--fixture", "carlitz-f3", "--precision", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["value"]["floor"], -3);
    assert!(v["result"]["primes"].as_array().unwrap().len() > 3);
}

#[test]
fn every_subcommand_runs_on_the_quadratic_cover() {
    for c in ["lvalue", "units", "class-module", "verify-cnf", "trace-formula", "stickelberger", "mt2", "mt3"] {
        let o = fqt(&[c, "--fixture", "carlitz-torsion-c2-f3", "--precision", "3"]);
        assert_eq!(code(&o), 0, "{c}: {}", stderr(&o));
    }
}

fn tempdir(tag: &str) -> std::path::PathBuf {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{tag}"));
    let _ = std::fs::remove_dir_all(&p);
    std::fs::create_dir_all(&p).unwrap();
    p
}
