//! End-to-end tests that spawn the built binary and check each subcommand's
//! output, exit codes, and error paths.

use serde_json::{json, Value};
use std::process::{Command, Output};

fn midset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_midset"))
        .args(args)
        // Keep stderr to the plain one-line error form.
        .env_remove("RUST_BACKTRACE")
        .output()
        .expect("binary should spawn")
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout should be JSON")
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn cantor_level_emits_the_stage_interchange_form() {
    let output = midset(&["cantor", "--level", "1"]);
    assert_eq!(
        stdout_json(&output),
        json!([
            {"lo": "0/1", "lo_closed": true, "hi": "1/3", "hi_closed": true},
            {"lo": "2/3", "lo_closed": true, "hi": "1/1", "hi_closed": true},
        ])
    );
}

#[test]
fn cantor_partition_lists_every_indexed_cell() {
    let output = midset(&["cantor", "--partition", "2"]);
    let cells = stdout_json(&output);
    let cells = cells.as_array().unwrap();
    assert_eq!(cells.len(), 9);
    for (position, cell) in cells.iter().enumerate() {
        assert_eq!(cell["level"], 2);
        assert_eq!(cell["index"], position as u64 + 1);
        assert_eq!(cell["cell"]["lo_closed"], false);
        assert_eq!(cell["cell"]["hi_closed"], false);
    }
    assert_eq!(cells[0]["cell"]["lo"], "0/1");
    assert_eq!(cells[8]["cell"]["hi"], "1/1");
}

#[test]
fn cantor_requires_exactly_one_mode() {
    assert_eq!(midset(&["cantor"]).status.code(), Some(2));
    let both = midset(&["cantor", "--level", "1", "--partition", "1"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn midpoints_of_any_stage_are_the_open_unit_interval() {
    let expected = json!([
        {"lo": "0/1", "lo_closed": false, "hi": "1/1", "hi_closed": false},
    ]);
    let pairwise = midset(&["midpoints", "--level", "3"]);
    assert_eq!(stdout_json(&pairwise), expected);
    let recursive = midset(&["midpoints", "--level", "3", "--method", "selfsimilar"]);
    assert_eq!(stdout_json(&recursive), expected);
}

#[test]
fn midpoints_can_attach_the_certificate_list() {
    let output = midset(&["midpoints", "--level", "2", "--emit-certificates"]);
    let value = stdout_json(&output);
    assert_eq!(
        value["midpoints"],
        json!([{"lo": "0/1", "lo_closed": false, "hi": "1/1", "hi_closed": false}])
    );
    assert_eq!(
        value["certificates"],
        json!([
            {"level": 2, "s": 4, "m": 1, "n": 7},
            {"level": 2, "s": 5, "m": 1, "n": 9},
            {"level": 2, "s": 6, "m": 3, "n": 9},
        ])
    );
}

#[test]
fn witness_emits_the_pair_list_for_a_separated_target() {
    let output = midset(&["witness", "--z", "1/2", "--depth", "2"]);
    let pairs = stdout_json(&output);
    assert_eq!(
        pairs,
        json!([
            {
                "level": 1,
                "X": {"lo": "0/1", "lo_closed": true, "hi": "1/3", "hi_closed": true},
                "Y": {"lo": "2/3", "lo_closed": true, "hi": "1/1", "hi_closed": true},
                "bound": "1/3",
            },
            {
                "level": 2,
                "X": {"lo": "0/1", "lo_closed": true, "hi": "1/9", "hi_closed": true},
                "Y": {"lo": "8/9", "lo_closed": true, "hi": "1/1", "hi_closed": true},
                "bound": "1/9",
            },
        ])
    );
    assert!(!stderr_text(&output).contains("coincide"));
}

#[test]
fn witness_notes_when_no_distinct_pair_is_certified() {
    let output = midset(&["witness", "--z", "1/4", "--depth", "4"]);
    assert!(output.status.success());
    assert!(stderr_text(&output).contains("coincide"));
    let pairs = stdout_json(&output);
    for pair in pairs.as_array().unwrap() {
        assert_eq!(pair["X"], pair["Y"]);
    }
}

#[test]
fn witness_rejects_targets_outside_the_open_unit_interval() {
    let output = midset(&["witness", "--z", "3/2", "--depth", "2"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_text(&output).contains("(0, 1)"));
}

#[test]
fn verify_prints_one_line_per_level_and_succeeds() {
    let output = midset(&["verify", "--max-level", "4"]);
    assert!(output.status.success());
    let text = String::from_utf8_lossy(&output.stdout);
    for level in 1..=4 {
        assert!(
            text.contains(&format!("level  {level}: ok")),
            "missing line for level {level} in: {text}"
        );
    }
    assert!(text.contains("measure=1/1"));
    assert!(text.contains("all 4 stage midpoint sets equal the open unit interval exactly"));
}

#[test]
fn cover_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cover.json");
    let output = midset(&[
        "cover",
        "--grid",
        "9",
        "--stage",
        "3",
        "--depth",
        "6",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(stderr_text(&output).contains("8 sphere assignments"));
    assert!(output.stdout.is_empty());

    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["grid_denominator"], 9);
    assert_eq!(report["measure_S"], "1/1");
    assert_eq!(report["measure_B_stage"], "8/27");
    assert_eq!(report["assignments"].as_array().unwrap().len(), 8);
}

#[test]
fn cover_streams_the_report_to_stdout_by_default() {
    let output = midset(&["cover", "--grid", "3", "--stage", "2", "--depth", "4"]);
    let report = stdout_json(&output);
    assert_eq!(report["sample_count"], 2);
    assert_eq!(report["assignments"][0]["center"], "1/3");
}

#[test]
fn measure_prints_the_exact_fraction() {
    let output = midset(&["measure", "--level", "5"]);
    assert!(output.status.success());
    assert_eq!(
        String::from_utf8_lossy(&output.stdout).trim(),
        "(2/3)^5 = 32/243"
    );
}

#[test]
fn resource_caps_limit_depth_and_can_be_raised() {
    let over_stage_cap = midset(&["measure", "--level", "15"]);
    assert_eq!(over_stage_cap.status.code(), Some(1));
    assert!(stderr_text(&over_stage_cap).contains("cap"));

    let raised = midset(&["measure", "--level", "15", "--cap", "16"]);
    assert!(raised.status.success());
    assert_eq!(
        String::from_utf8_lossy(&raised.stdout).trim(),
        "(2/3)^15 = 32768/14348907"
    );

    let over_pairwise_cap = midset(&["midpoints", "--level", "13"]);
    assert_eq!(over_pairwise_cap.status.code(), Some(1));
    assert!(stderr_text(&over_pairwise_cap).contains("cap"));

    let recursive_still_runs = midset(&["midpoints", "--level", "13", "--method", "selfsimilar"]);
    assert!(recursive_still_runs.status.success());
}
