//! End-to-end tests of the binary's surface: output shapes, exit codes,
//! and cache behavior. Heavy computations stay in the acceptance suite;
//! everything here runs in milliseconds.

use std::process::{Command, Output};

fn weylkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylkit"))
        .args(args)
        .env_remove("WEYLKIT_CACHE")
        .output()
        .expect("spawn weylkit")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn roots_reports_the_stated_counts() {
    let doc = stdout_json(&weylkit(&["roots", "--type", "E8", "--format", "json"]));
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "roots");
    assert_eq!(doc["report"]["roots"], 240);
    assert_eq!(doc["report"]["positive_roots"], 120);

    let text = weylkit(&["roots", "--type", "E8"]);
    let line = String::from_utf8(text.stdout).unwrap();
    assert!(line.contains("240 roots"), "{line}");
    assert!(line.contains("120 positive"), "{line}");
}

#[test]
fn weyl_order_displays_the_factorial_form_for_e8() {
    let doc = stdout_json(&weylkit(&["weyl-order", "--type", "E8", "--format", "json"]));
    assert_eq!(doc["report"]["order"], "696729600");
    assert_eq!(doc["report"]["display"], "4!\u{b7}6!\u{b7}8!");
}

#[test]
fn classes_csv_has_one_row_per_class() {
    let out = weylkit(&["classes", "--type", "B2", "--format", "csv"]);
    assert!(out.status.success());
    let body = String::from_utf8(out.stdout).unwrap();
    let mut lines = body.lines();
    assert_eq!(
        lines.next(),
        Some("class,size,min_length,element_order,elliptic")
    );
    assert_eq!(lines.count(), 5, "W(B2) has five classes");
}

#[test]
fn census_json_is_reproducible_for_equal_configs() {
    let args = ["census", "--type", "B2", "--samples", "2000", "--seed", "11", "--format", "json"];
    let first = weylkit(&args);
    let second = weylkit(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(doc["report"]["distinct_fingerprints"], 5);
}

#[test]
fn cmin_descends_a_word_to_its_class_minimum() {
    let doc = stdout_json(&weylkit(&[
        "cmin", "--type", "B2", "--word", "0,1,0", "--format", "json",
    ]));
    assert_eq!(doc["report"]["outcome"]["start_length"], 3);
    assert_eq!(doc["report"]["outcome"]["min_length"], 1);
}

#[test]
fn strata_csv_and_json_share_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let cold = weylkit(&["strata", "--q", "3", "--format", "json", "--cache-dir", dir_arg]);
    assert!(cold.status.success());
    assert!(String::from_utf8_lossy(&cold.stderr).contains("cache miss"));
    let warm = weylkit(&["strata", "--q", "3", "--format", "json", "--cache-dir", dir_arg]);
    assert!(String::from_utf8_lossy(&warm.stderr).contains("cache hit"));
    assert_eq!(cold.stdout, warm.stdout, "cold and warm bytes differ");

    let csv = weylkit(&["strata", "--q", "3", "--format", "csv", "--cache-dir", dir_arg]);
    let body = String::from_utf8(csv.stdout).unwrap();
    assert!(body.starts_with("stratum,min_length,delta,class_id"));
    // Five strata whose realized sets cover the 20 classes with overlaps.
    assert!(body.lines().count() > 20);

    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 1, "one cache entry for one (kind, key)");
}

#[test]
fn unknown_type_and_bad_q_exit_2() {
    for args in [
        &["roots", "--type", "F4"][..],
        &["roots", "--type", "A9"],
        &["strata", "--q", "2"],
        &["strata", "--type", "A2"],
        &["chevgroup", "--type", "D4", "--p", "2"],
        &["roots", "--type", "E8", "--format", "csv"],
        &["not-a-command"],
    ] {
        let out = weylkit(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn resource_caps_exit_3_with_a_partial_report() {
    let out = weylkit(&[
        "chevgroup", "--type", "A2", "--p", "3", "--cap", "100", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["report"]["status"], "resource_cap_exceeded");
    assert_eq!(doc["report"]["reached"], "100");
}

#[test]
fn env_var_cache_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_weylkit"))
            .args(["classes", "--type", "B2", "--format", "json"])
            .env("WEYLKIT_CACHE", dir.path())
            .output()
            .expect("spawn weylkit")
    };
    let cold = run();
    assert!(cold.status.success());
    assert!(String::from_utf8_lossy(&cold.stderr).contains("cache miss"));
    let warm = run();
    assert!(String::from_utf8_lossy(&warm.stderr).contains("cache hit"));
    assert_eq!(cold.stdout, warm.stdout);
    assert!(dir.path().read_dir().unwrap().next().is_some());
}

#[test]
fn corrupt_cache_entries_recompute_and_heal() {
    let dir = tempfile::tempdir().unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let cold = weylkit(&["classes", "--type", "B2", "--format", "json", "--cache-dir", dir_arg]);
    assert!(cold.status.success());
    let entry = dir.path().read_dir().unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, b"{definitely not a report").unwrap();
    let healed = weylkit(&["classes", "--type", "B2", "--format", "json", "--cache-dir", dir_arg]);
    assert!(healed.status.success());
    assert!(String::from_utf8_lossy(&healed.stderr).contains("cache miss"));
    assert_eq!(cold.stdout, healed.stdout);
    let bytes = std::fs::read(&entry).unwrap();
    assert!(serde_json::from_slice::<serde_json::Value>(&bytes).is_ok(), "entry was rewritten");
}

#[test]
fn help_lists_every_command() {
    let out = weylkit(&["--help"]);
    assert!(out.status.success());
    let help = String::from_utf8(out.stdout).unwrap();
    for cmd in [
        "roots", "weyl-order", "classes", "census", "cmin", "adjoint-check",
        "chevgroup", "strata", "verify",
    ] {
        assert!(help.contains(cmd), "help is missing `{cmd}`");
    }
    assert!(help.contains("--format"));
    assert!(help.contains("--cache-dir"));
    assert!(help.contains("--threads"));
}

#[test]
fn threads_flag_does_not_change_bytes() {
    let base = weylkit(&["census", "--type", "A3", "--samples", "5000", "--format", "json"]);
    let one = weylkit(&[
        "census", "--type", "A3", "--samples", "5000", "--format", "json", "--threads", "1",
    ]);
    let four = weylkit(&[
        "census", "--type", "A3", "--samples", "5000", "--format", "json", "--threads", "4",
    ]);
    assert!(base.status.success());
    assert_eq!(base.stdout, one.stdout);
    assert_eq!(base.stdout, four.stdout);
}

#[test]
fn adjoint_check_covers_the_requested_type_only() {
    let doc = stdout_json(&weylkit(&["adjoint-check", "--type", "A2", "--format", "json"]));
    assert_eq!(doc["report"]["dim"], 8);
    assert_eq!(doc["report"]["mplus_dim"], 3);
    assert_eq!(doc["report"]["passed"], true);
    // 4 operators x (4 + 9 + 25) field pairs.
    assert_eq!(doc["report"]["one_parameter_products"], 152);
}

#[test]
fn rejected_cache_dir_exits_2() {
    let file = tempfile::NamedTempFile::new().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_weylkit"))
        .args(["roots", "--type", "E8"])
        .arg("--cache-dir")
        .arg(file.path()) // a file, not a directory
        .output()
        .expect("spawn weylkit");
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}
