use std::path::PathBuf;
use std::process::{Command, Output};

const K7A1: &str = "((4r + 3w, 2r^2 + 3w), (2r^2w + w^3, 2r^2w^2), (2r^2w^2, r^4w^2), (r^4w, 0))";

fn cwr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwr"))
        .args(args)
        .env_remove("CWR_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cwr-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn compute_by_name_pd_and_file() {
    let o = cwr(&["compute", "K7a1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), K7A1);

    let pd = "PD[X(3,1,4,6), X(1,5,2,4), X(5,3,6,2)]";
    assert_eq!(
        stdout(&cwr(&["compute", "--pd", pd])).trim(),
        "((3w, w^3), (w^3, 0))"
    );
    let file = temp_file("trefoil.pd", pd);
    let o = cwr(&["compute", "--pd-file", file.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "((3w, w^3), (w^3, 0))");
    std::fs::remove_file(file).unwrap();

    assert_eq!(stdout(&cwr(&["compute", "unknot"])).trim(), "((0, 0))");
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(cwr(&["compute", "K99a1"]).status.code(), Some(2));
    assert_eq!(
        cwr(&["compute", "--pd", "PD[X(1,2,3)]"]).status.code(),
        Some(2)
    );
    let non_alternating = "PD[X(6,3,1,4), X(1,5,2,4), X(5,3,6,2)]";
    let o = cwr(&["compute", "--pd", non_alternating]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_table_passes_on_bundled_catalog() {
    let o = cwr(&["verify-table"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("37/37 passed"));
}

#[test]
fn verify_table_fails_on_corrupted_catalog() {
    let text = "[[knot]]\nname = \"K3a1\"\npd = \"PD[X(3,1,4,6), X(1,5,2,4), X(5,3,6,2)]\"\ncwr = \"((3w, w^3), (w^2, 0))\"\n";
    let path = temp_file("corrupt.toml", text);
    let o = cwr(&["--catalog", path.to_str().unwrap(), "verify-table"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("K3a1"));
}

#[test]
fn compare_and_mirror_verdicts() {
    let o = cwr(&["compare", "K12a24", "K12a299"]);
    assert!(stdout(&o).trim_end().ends_with("DISTINCT"));
    let o = cwr(&["compare", "K12a29", "K12a113m"]);
    assert!(stdout(&o).trim_end().ends_with("EQUAL"));
    assert!(stdout(&cwr(&["mirror", "K4a1"]))
        .trim_end()
        .ends_with("SELF-MIRROR-EQUAL"));
    let o = cwr(&["mirror", "K3a1"]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("MIRROR-DISTINCT"));
}

#[test]
fn skein_defaults_pass() {
    for sign in ["negative", "positive"] {
        let o = cwr(&["skein", "--sign", sign, "--n-max", "2", "--k-max", "6"]);
        assert!(o.status.success(), "{}", stdout(&o));
    }
}

#[test]
fn json_output_parses() {
    let o = cwr(&["--json", "compute", "K7a1", "--wrp"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cwr"], K7A1);
    assert!(v["wrp"].is_array());
    for args in [
        &["--json", "verify-table"][..],
        &["--json", "compare", "K11a75", "K11a102"],
        &["--json", "table"],
    ] {
        let o = cwr(args);
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap();
    }
}
