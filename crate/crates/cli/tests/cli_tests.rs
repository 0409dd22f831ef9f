//! End-to-end tests of the `gctool` binary: exit codes, report content,
//! tabular outputs, and byte-level determinism.

use std::path::PathBuf;
use std::process::Command;

use gctool_core::examples::{torus_coupling_form, torus_omega2};
use gctool_core::gcs::GenStructure;
use gctool_core::json::{bundle_to_json, StructureBundle};
use gctool_core::mat::Mat;
use gctool_core::scalar::{rat, Rat};

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gctool"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("gctool-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("temp file written");
    path
}

fn int_matrix(rows: &[Vec<i64>]) -> Mat<Rat> {
    Mat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect(),
    )
}

/// CSV rows as (a, b, c, type, exact) tuples, header dropped.
fn csv_rows(text: &str) -> Vec<(String, String, String, usize, bool)> {
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 5, "row: {l}");
            (
                f[0].to_string(),
                f[1].to_string(),
                f[2].to_string(),
                f[3].parse().unwrap(),
                f[4].parse().unwrap(),
            )
        })
        .collect()
}

#[test]
fn verify_passes_on_the_symplectic_fixture() {
    let (code, stdout, _) = run(&["verify", &fixture("symplectic_bundle.json")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"all_pass\": true"));
    assert!(stdout.contains("\"type = 0\""));
    assert!(stdout.contains("sign_convention"), "convention block present");
}

#[test]
fn verify_fails_the_identity_matrix_with_a_named_square_check() {
    let rows: Vec<String> = (0..8)
        .map(|i| {
            let cells: Vec<String> = (0..8)
                .map(|j| if i == j { "1" } else { "0" }.to_string())
                .collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    let text = format!("{{\"structure\": [{}]}}", rows.join(","));
    let path = temp_file("identity.json", &text);
    let (code, stdout, _) = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.contains("square check failed"));
    assert!(stdout.contains("\"all_pass\": false"));
}

#[test]
fn verify_passes_the_full_bundle_fixture_with_pair_and_algebra() {
    let (code, stdout, _) = run(&["verify", &fixture("kt_bundle.json")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("pair anticommutator is a scalar"));
    assert!(stdout.contains("\"p = 0\""));
    assert!(stdout.contains("structure is integrable over the base algebra"));
    assert!(stdout.contains("pair is integrable over the base algebra"));
}

#[test]
fn verify_rejects_bad_inputs_with_exit_two() {
    let path = temp_file("broken.json", "{ not json");
    let (code, _, stderr) = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error:"));

    // 2×2 means dim V = 1, which no structure admits.
    let path = temp_file("odd.json", "{\"structure\": [[0, -1], [1, 0]]}");
    let (code, _, stderr) = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("even"));
}

#[test]
fn verify_accepts_the_float_lane() {
    let (code, stdout, _) = run(&[
        "verify",
        "--mode",
        "float",
        &fixture("symplectic_bundle.json"),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"mode\": \"float\""));
}

#[test]
fn example_bundle_exit_codes_track_the_parameters() {
    let (code, stdout, _) = run(&["example", "kt", "--b1", "0", "--b2", "1"]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("\"all_pass\": true"));

    let (code, stdout, _) = run(&["example", "kt", "--b1", "1", "--b2", "2"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("N(E1, E2, E5) = 3/4"), "pinpointed entry");

    let (code, _, stderr) = run(&["example", "kt", "--b2", "0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("nonzero"));
}

#[test]
fn example_torus_reports_the_absence_of_a_maximal_member() {
    let (code, stdout, _) = run(&[
        "example", "torus", "--lambda", "3/5,1", "--mu", "4/5,0", "--grid", "16",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("no maximal type"));

    let (code, _, stderr) = run(&["example", "torus", "--lambda", "1,1", "--mu", "1,0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("λ² + µ² = 1") || stderr.contains("λ² + μ² = 1"));
}

#[test]
fn example_rejects_unknown_names_and_bad_params() {
    let (code, _, _) = run(&["example", "nope"]);
    assert_eq!(code, 2);
    let (code, _, stderr) = run(&["example", "kt", "--b1", "abc"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("abc"));
    // A decimal that is not exactly representable needs the float lane.
    let (code, _, _) = run(&["example", "kt", "--b1", "0.3"]);
    assert_eq!(code, 2);
    // In the float lane the decimal parses; a nonzero b1 then fails the
    // integrability checks, which is a verdict (1), not a parameter error.
    let (code, _, _) = run(&["example", "kt", "--b1", "0.25", "--mode", "float"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["example", "kt", "--b1", "0", "--b2", "0.25", "--mode", "float"]);
    assert_eq!(code, 0);
}

#[test]
fn typemap_of_the_bundle_pair_is_constantly_type_one() {
    let (code, stdout, _) = run(&[
        "typemap",
        "--grid",
        "16",
        "--format",
        "csv",
        &fixture("kt_bundle.json"),
    ]);
    assert_eq!(code, 0);
    let rows = csv_rows(&stdout);
    assert_eq!(rows.len(), 16 * 16 + 6);
    assert!(rows.iter().all(|r| r.3 == 1));
    assert_eq!(rows.iter().filter(|r| r.4).count(), 6, "exact axis rows");
}

#[test]
fn typemap_marks_only_the_poles_of_the_twisted_symplectic_pair() {
    let (code, stdout, _) = run(&[
        "typemap",
        "--grid",
        "16",
        "--format",
        "csv",
        &fixture("holosymplectic_pair.json"),
    ]);
    assert_eq!(code, 0);
    let rows = csv_rows(&stdout);
    let complex_rows: Vec<_> = rows.iter().filter(|r| r.3 == 2).collect();
    assert_eq!(complex_rows.len(), 2);
    for r in &complex_rows {
        assert!(r.0 == "1" || r.0 == "-1");
        assert_eq!(r.1, "0");
        assert_eq!(r.2, "0");
        assert!(r.4, "the poles are exact samples");
    }
    assert!(rows.iter().filter(|r| !r.4).all(|r| r.3 == 0));
}

#[test]
fn typemap_of_the_torus_pair_never_reaches_maximal_type() {
    let lambdas = [rat(3, 5), rat(1, 1)];
    let mus = [rat(4, 5), rat(0, 1)];
    let i1 = GenStructure::from_symplectic(&torus_coupling_form(&lambdas), 1e-9).unwrap();
    let i2 = GenStructure::from_symplectic(&torus_omega2(2), 1e-9)
        .unwrap()
        .b_transform(&torus_coupling_form(&mus));
    let bundle = StructureBundle {
        structure: i1.mat().clone(),
        pair: Some(i2.mat().clone()),
        base_algebra: None,
    };
    let path = temp_file("torus_pair.json", &bundle_to_json(&bundle));
    let (code, stdout, _) = run(&[
        "typemap",
        "--grid",
        "16",
        "--format",
        "csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let rows = csv_rows(&stdout);
    assert!(rows.iter().all(|r| r.3 != 4));
    assert!(2 * rows.iter().filter(|r| r.3 == 0).count() > rows.len());
}

#[test]
fn typemap_requires_a_pair_matrix() {
    let (code, _, stderr) = run(&["typemap", &fixture("symplectic_bundle.json")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("pair"));
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let args = ["verify", &fixture("kt_bundle.json")];
    let (_, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);

    let out1 = std::env::temp_dir().join(format!("gctool-det-{}-1.csv", std::process::id()));
    let out2 = std::env::temp_dir().join(format!("gctool-det-{}-2.csv", std::process::id()));
    for out in [&out1, &out2] {
        let (code, stdout, _) = run(&[
            "typemap",
            "--grid",
            "8",
            "--format",
            "csv",
            "--output",
            out.to_str().unwrap(),
            &fixture("holosymplectic_pair.json"),
        ]);
        assert_eq!(code, 0);
        assert!(stdout.is_empty(), "output went to the file");
    }
    assert_eq!(
        std::fs::read(&out1).unwrap(),
        std::fs::read(&out2).unwrap()
    );
}

#[test]
fn twistor_report_classifies_the_three_regimes() {
    // Anticommuting complex pair: every fiber keeps maximal type.
    let li = int_matrix(&[
        vec![0, -1, 0, 0],
        vec![1, 0, 0, 0],
        vec![0, 0, 0, -1],
        vec![0, 0, 1, 0],
    ]);
    let lj = int_matrix(&[
        vec![0, 0, -1, 0],
        vec![0, 0, 0, 1],
        vec![1, 0, 0, 0],
        vec![0, -1, 0, 0],
    ]);
    let i1 = GenStructure::from_complex(&li, 1e-9).unwrap();
    let i2 = GenStructure::from_complex(&lj, 1e-9).unwrap();
    let bundle = StructureBundle {
        structure: i1.mat().clone(),
        pair: Some(i2.mat().clone()),
        base_algebra: None,
    };
    let path = temp_file("quaternion_pair.json", &bundle_to_json(&bundle));
    let (code, stdout, _) = run(&["twistor-report", "--grid", "8", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"regime\": \"B-twisted hypercomplex\""));
    assert!(stdout.contains("\"min_twistor_type\": 3"));
    assert!(stdout.contains("\"max_twistor_type\": 3"));

    // The symplectic S² factor lowers every twistor type by one.
    let (code, stdout, _) = run(&[
        "twistor-report",
        "--grid",
        "8",
        "--s2-symplectic",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"min_twistor_type\": 2"));

    let (code, stdout, _) = run(&[
        "twistor-report",
        "--grid",
        "8",
        &fixture("holosymplectic_pair.json"),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"regime\": \"hypersymplectic\""));

    let (code, stdout, _) = run(&[
        "twistor-report",
        "--grid",
        "8",
        &fixture("kt_bundle.json"),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"regime\": \"intermediate/unclassified\""));
}

#[test]
fn config_violations_exit_with_parameter_errors() {
    for args in [
        vec!["example", "kt", "--epsilon", "0"],
        vec!["example", "kt", "--epsilon", "-1e-9"],
        vec!["typemap", "--grid", "1", &fixture("kt_bundle.json")],
    ] {
        let (code, _, stderr) = run(&args);
        assert_eq!(code, 2, "args {args:?}: {stderr}");
    }
}

#[test]
fn output_flag_redirects_the_report() {
    let out = std::env::temp_dir().join(format!("gctool-out-{}.json", std::process::id()));
    let (code, stdout, _) = run(&[
        "verify",
        "--output",
        out.to_str().unwrap(),
        &fixture("symplectic_bundle.json"),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    let (_, direct, _) = run(&["verify", &fixture("symplectic_bundle.json")]);
    assert_eq!(written, direct);
}
