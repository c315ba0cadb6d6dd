use std::fs;
use std::path::PathBuf;

use digitop::cli::{dispatch_with_env, CliOutput};
use digitop::fixtures::build;
use digitop::io::image_from_file;
use digitop::verify::{check_fixed_point_spectrum, RunConfig, Verdict, VerificationReport};
use digitop::Builtin;

fn run(args: &[&str]) -> CliOutput {
    let mut argv = vec!["digitop"];
    argv.extend_from_slice(args);
    dispatch_with_env(argv, None)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("digitop-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn cube_fixed_point_spectrum() {
    let out = run(&["spectrum", "f", "--image", "builtin:cube"]);
    assert_eq!(out.code, 0, "{out:?}");
    assert_eq!(out.stdout.trim(), "{0,1,2,3,4,5,6,8}");
}

#[test]
fn figure1_is_rigid_either_way() {
    for args in [
        &["homotopy", "rigid", "--image", "builtin:figure1"][..],
        &["homotopy", "rigid", "builtin:figure1"][..],
    ] {
        let out = run(args);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout.trim(), "true");
    }
    assert_eq!(run(&["homotopy", "rigid", "builtin:cycle:4"]).stdout.trim(), "false");
}

#[test]
fn cube_into_a_point() {
    let out = run(&[
        "spectrum", "cs", "--i", "2", "--image", "builtin:cube", "--codomain", "builtin:singleton",
    ]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.trim(), "{8}");
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["verify", "everything"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("unknown suite"));
    assert_eq!(run(&["spectrum"]).code, 2);
    assert_eq!(run(&["spectrum", "f", "--image", "builtin:nothing"]).code, 2);
    assert_eq!(run(&["spectrum", "f"]).code, 2);
    assert_eq!(run(&["--format", "yaml", "spectrum", "f", "builtin:cube"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn malformed_files_report_position() {
    let path = scratch("bad.json", "{\n  \"dimension\": 1,\n  \"points\": [[0], [1]],\n  \"adjacency\": {\"type\": \"ct\" \"t\": 1}\n}\n");
    let out = run(&["image", "info", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("bad.json"), "{}", out.stderr);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
}

#[test]
fn map_check_and_apply() {
    let bad = r#"{"domain": "builtin:interval:0:2", "codomain": "builtin:interval:0:2", "assignment": [0, 2, 0]}"#;
    let out = run(&["map", "check", bad]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("not continuous"));

    let path = scratch(
        "fold.json",
        r#"{"domain": "builtin:cycle:4", "codomain": "builtin:cycle:4", "assignment": [0, 1, 0, 3]}"#,
    );
    let out = run(&["map", "check", path.to_str().unwrap()]);
    assert_eq!((out.code, out.stdout.trim()), (0, "continuous"));
    let out = run(&["map", "apply", path.to_str().unwrap(), "--index", "2"]);
    assert_eq!(out.stdout.trim(), "(2) -> (0)");
    let out = run(&["map", "apply", "const:1", "--image", "builtin:cube", "--point", "1,1,1"]);
    assert_eq!(out.stdout.trim(), "(1,1,1) -> (0,0,1)");
}

#[test]
fn counting_and_enumerating() {
    assert_eq!(run(&["maps", "count", "--image", "builtin:cycle:4"]).stdout.trim(), "84");
    assert_eq!(
        run(&["maps", "count", "--domain", "builtin:cube", "--codomain", "builtin:cube_minus_vertex"])
            .stdout
            .trim(),
        "8965"
    );
    let out = run(&["--format", "json", "maps", "enumerate", "--image", "builtin:interval:0:1"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4], r#"{"count":4,"exhausted":true}"#);
    let out = run(&["maps", "enumerate", "--image", "builtin:cycle:4", "--limit", "10"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 11);
}

#[test]
fn homotopy_commands() {
    let out = run(&["--format", "json", "homotopy", "are-homotopic", "id", "const:0", "--image", "builtin:cycle:4"]);
    let v: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
    assert_eq!(v["answer"], "yes");
    let out = run(&["homotopy", "are-homotopic", "id", "const:0", "--image", "builtin:cycle:5"]);
    assert_eq!(out.stdout.trim(), "no");
    assert!(run(&["homotopy", "contractible", "builtin:cube"]).stdout.starts_with("yes"));
    assert_eq!(run(&["homotopy", "contractible", "builtin:figure1"]).stdout.trim(), "no");
    // rotations are one step from the identity
    let out = run(&["homotopy", "class", "id", "--image", "builtin:cycle:5"]);
    assert!(out.stdout.starts_with("5 maps"), "{}", out.stdout);
}

#[test]
fn homotopy_spectra_commands() {
    assert_eq!(run(&["hspectrum", "hcs", "id", "id", "--image", "builtin:figure1"]).stdout.trim(), "{18}");
    assert_eq!(
        run(&["hspectrum", "hcs", "const:0", "const:0", "--image", "builtin:interval:0:3"]).stdout.trim(),
        "{0,1,2,3,4}"
    );
    assert_eq!(run(&["hspectrum", "mc", "id", "const:0", "--image", "builtin:cycle:4"]).stdout.trim(), "0");
    assert_eq!(run(&["hspectrum", "mcf", "id", "--image", "builtin:figure1"]).stdout.trim(), "18");
    let out = run(&["--j-max", "3", "hspectrum", "mj", "builtin:cycle:6"]);
    assert_eq!(out.stdout, "m_1 = 6\nm_2 = 0\nm_3 = 0\n");
    let out = run(&["--j-max", "2", "hspectrum", "mj", "--map", "id", "--image", "builtin:figure1"]);
    assert_eq!(out.stdout, "m_1 = 18\nm_2 = 18\n");
}

#[test]
fn spectrum_union_and_common_fixed() {
    let out = run(&["--i-max", "4", "spectrum", "cs", "--union", "--image", "builtin:cycle:5", "--codomain", "builtin:discrete:2"]);
    assert!(out.stdout.contains("CS_4 = {0,5}"), "{}", out.stdout);
    assert_eq!(run(&["spectrum", "cfs", "builtin:cycle:4", "--i", "2"]).stdout.trim(), "{0,1,2,3,4}");
}

#[test]
fn node_budget_from_the_environment() {
    let argv = ["digitop", "spectrum", "f", "--image", "builtin:cube"];
    let out = dispatch_with_env(argv, Some("5"));
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("(partial)"));
    assert_eq!(dispatch_with_env(argv, Some("lots")).code, 2);
    // the flag wins over the environment
    let mut with_flag = argv.to_vec();
    with_flag.extend(["--budget-nodes", "100000000"]);
    assert_eq!(dispatch_with_env(with_flag, Some("5")).code, 0);
}

#[test]
fn image_build_round_trips() {
    let out = run(&["image", "build", "builtin:tee4"]);
    let path = scratch("tee.json", &out.stdout);
    let info = run(&["--format", "json", "image", "info", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(info.stdout.trim()).unwrap();
    assert_eq!(v["edges"], 3);
    assert_eq!(v["degrees"], serde_json::json!([1, 1, 1, 3]));
}

#[test]
fn verify_reports_are_sorted_json_and_replayable() {
    let out = run(&["--format", "json", "verify", "paper-fixtures"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let reports: Vec<VerificationReport> = out
        .stdout
        .lines()
        .map(|l| {
            // keys come out sorted
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]));
            serde_json::from_value(v).unwrap()
        })
        .collect();
    assert!(reports.len() > 100);
    assert!(reports.iter().all(|r| r.verdict.is_pass()), "some check did not pass");
    assert!(reports.windows(2).all(|w| w[0].canonical_cmp(&w[1]).is_le()));

    // serialized instances load back and give the same verdict
    let f_cube = reports
        .iter()
        .find(|r| r.instance.description == "F(cube)")
        .unwrap();
    let x = image_from_file(f_cube.instance.x.clone().unwrap()).unwrap().image;
    let again = check_fixed_point_spectrum(&x, &[0, 1, 2, 3, 4, 5, 6, 8], "F(cube)", &RunConfig::default());
    assert!(again.same_outcome(f_cube));
}

#[test]
fn corrupted_cube_fails_with_a_counterexample() {
    let cube = build(Builtin::Cube).unwrap();
    let broken = cube.without_edge(0, 1).unwrap();
    let r = check_fixed_point_spectrum(&broken, &[0, 1, 2, 3, 4, 5, 6, 8], "F(cube minus an edge)", &RunConfig::default());
    match &r.verdict {
        Verdict::Fail { witness, .. } => {
            assert_eq!(witness.len(), 1);
            // the witness is a continuous self-map of the corrupted image whose
            // fixed point count lies outside the expected spectrum
            let x = image_from_file(r.instance.x.clone().unwrap()).unwrap().image;
            let x = std::sync::Arc::new(x);
            let f = digitop::DigitalMap::from_assignment(&x, &x, witness[0].clone()).unwrap();
            let fixed = digitop::maps::fixed_point_set(&f).unwrap().len();
            assert!(![0, 1, 2, 3, 4, 5, 6, 8].contains(&fixed));
        }
        other => panic!("expected a failure, got {other:?}"),
    }
}

#[test]
fn random_suite_is_reproducible() {
    let args = ["--format", "json", "--seed", "11", "verify", "random-small", "--instances", "15", "--max-points", "5"];
    let a = run(&args);
    let mut par = args.to_vec();
    par.push("--parallel");
    let b = run(&par);
    assert_eq!(a.code, 0);
    let strip = |s: &str| -> Vec<serde_json::Value> {
        s.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("elapsed_ms");
                v
            })
            .collect()
    };
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
    assert!(strip(&a.stdout).iter().all(|v| v["seed"] == 11));
}

#[test]
fn conjecture_command() {
    let out = run(&["conjecture", "--max-x", "4", "--max-y", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("# reduction:"));
    assert!(out.stdout.contains("7 passed, 0 failed"), "{}", out.stdout);
}
