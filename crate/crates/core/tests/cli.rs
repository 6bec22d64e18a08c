use std::process::{Command, Output};

fn lacunary(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lacunary"));
    cmd.args(args);
    for var in [
        "LACUNARY_MAX_EXPONENT_BITS",
        "LACUNARY_MAX_TABLE_N",
        "LACUNARY_MAX_TABLE_Q",
        "LACUNARY_MAX_TERMS",
    ] {
        cmd.env_remove(var);
    }
    cmd.envs(env.iter().copied());
    cmd.output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn success_has_schema_envelope() {
    let o = lacunary(&["refute-liouville", "--poly", "1,0,-2"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], "1.0");
    assert_eq!(v["command"], "refute-liouville");
    assert_eq!(v["result"]["status"], "certified");
}

#[test]
fn caps_reject_before_running() {
    let o = lacunary(&["audit-lemma", "--nmax", "5000", "--qmax", "3"], &[("LACUNARY_MAX_TABLE_N", "4096")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("budget exceeded"), "{}", stderr(&o));

    let o = lacunary(&["repcount", "10", "9"], &[("LACUNARY_MAX_TABLE_Q", "8")]);
    assert_eq!(o.status.code(), Some(1));

    let o = lacunary(&["digits", "mahler", "--count", "600"], &[("LACUNARY_MAX_EXPONENT_BITS", "512")]);
    assert_eq!(o.status.code(), Some(1));

    let o = lacunary(&["repcount", "10", "2"], &[("LACUNARY_MAX_TABLE_Q", "lots")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("LACUNARY_MAX_TABLE_Q"));
}

#[test]
fn unresolved_digits_are_inconclusive() {
    // the value is exactly 2, so no finite enclosure fixes its binary digits
    let o = lacunary(&["digits", "geometric", "--count", "8"], &[("LACUNARY_MAX_TERMS", "64")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn inconclusive_exit_code() {
    let o = lacunary(&["explore", "geometric", "--poly", "1,-2", "--max-horizon", "256"], &[]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["status"], "inconclusive");
}

#[test]
fn sequence_file_errors_name_the_line() {
    let dir = std::env::temp_dir().join(format!("lacunary-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "1\n2\n2\n").unwrap();
    let spec = format!("file:{}", bad.display());
    let o = lacunary(&["analyze", &spec, "--qmax", "2", "--N", "10", "--M", "1"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let good = dir.join("good.txt");
    std::fs::write(&good, "# squares\n1\n4\n9\n16\n").unwrap();
    let spec = format!("file:{}", good.display());
    let o = lacunary(&["repcount", "17", "2", "--seq", &spec, "--format", "csv"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains(",ordered,17,2,2"));

    let o = lacunary(&["analyze", "file:/nonexistent/seq.txt", "--qmax", "1", "--N", "5", "--M", "1"], &[]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_input_is_an_error() {
    for args in [
        &["refute-mahler", "--poly", "1,x"][..],
        &["refute-mahler", "--poly", "5"],
        &["refute-mahler"],
        &["digits", "mahler", "--base", "3", "--count", "4"],
        &["explore", "nu10", "--poly", "1,-1"],
        &["digits", "wobble", "--count", "4"],
    ] {
        let o = lacunary(args, &[]);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn formats_agree_on_content() {
    let json = lacunary(&["repcount", "100", "3"], &[]);
    let csv = lacunary(&["repcount", "100", "3", "--format", "csv"], &[]);
    let text = lacunary(&["repcount", "100", "3", "--format", "text"], &[]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let count = v["result"]["count"].as_str().unwrap().to_string();
    assert!(String::from_utf8_lossy(&csv.stdout).trim_end().ends_with(&count));
    assert!(String::from_utf8_lossy(&text.stdout).contains(&count));
}
