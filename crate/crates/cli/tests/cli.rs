use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_falconer"));
    c.env_remove("FALCONER_OUT");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Exit code and the parsed one-line error record.
fn fails(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let stderr = String::from_utf8_lossy(&out.stderr);
    let line = stderr.lines().last().unwrap_or_default();
    assert_eq!(stderr.lines().count(), 1, "{args:?}: {stderr}");
    let record: Value = serde_json::from_str(line).unwrap_or_else(|_| panic!("{args:?}: not JSON: {stderr}"));
    let code = out.status.code().unwrap();
    assert_eq!(record["error"]["code"], code);
    (code, record)
}

fn message(record: &Value) -> String {
    record["error"]["message"].as_str().unwrap().to_string()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn census_of_the_3x3_grid() {
    let v = ok_json(&["census", "--grid", "2", "--k", "2"]);
    assert_eq!(v["count"], 8);
    let v = ok_json(&["census", "--q", "2", "--relation", "similarity"]);
    assert_eq!(v["count"], 6);
}

#[test]
fn thresholds_values() {
    let v = ok_json(&["thresholds", "--k", "3", "--d", "3"]);
    assert_eq!((v["t"].as_f64(), v["s"].as_f64(), v["lower"].as_f64()), (Some(2.5), Some(2.25), Some(2.0)));
    assert_eq!(v["exact"]["t"], "5/2");
    let v = ok_json(&["thresholds", "--k", "2", "--d", "2"]);
    assert_eq!(v["exact"]["t"], "5/3");
    assert_eq!(v["exact"]["planar_special"], "8/5");
}

#[test]
fn point_set_census_writes_class_table_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "pts.csv", "# dim=2 mode=exact\n0,0\n1,0\n0,1\n1,1\n");
    let out = dir.path().join("out");
    let v = ok_json(&["census", "--input", &input, "--k", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(v["count"], 1);
    let classes: Value = serde_json::from_str(&fs::read_to_string(out.join("classes.json")).unwrap()).unwrap();
    assert_eq!(classes, serde_json::json!([{"key": [1, 1, 2], "multiplicity": 4}]));
    let manifest: Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let files: Vec<&str> = manifest["outputs"].as_array().unwrap().iter().map(|o| o["file"].as_str().unwrap()).collect();
    assert_eq!(files, ["census.json", "classes.json"]);
    assert_eq!(manifest["parameters"]["k"], 2);
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
    assert!(manifest["created"].as_str().unwrap().ends_with('Z'));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["spheres", "--n", "25", "--upto"])
        .env("FALCONER_OUT", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 12);
    let csv = fs::read_to_string(dir.path().join("counts.csv")).unwrap();
    assert!(csv.starts_with("# lattice points, d=2\n# n,count\n0,1\n1,4\n"));
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn other_subcommands_produce_reports() {
    let v = ok_json(&["spheres", "--d", "3", "--n", "3"]);
    assert_eq!(v["count"], 8);
    let v = ok_json(&["three-spheres", "--radii", "1,1,1"]);
    assert_eq!(v["classes"], 2);
    let v = ok_json(&["sharpness", "--d", "2", "--s", "1.5", "--q", "4"]);
    assert_eq!(v["centers"], 25);
    let v = ok_json(&["growth", "--q", "2,3,4,5"]);
    assert_eq!(v["entries"][3]["count"], 172);
    let v = ok_json(&["mattila", "--measure", "delta", "--tmin", "1", "--tmax", "2"]);
    assert!((v["value"].as_f64().unwrap() - 1.5).abs() < 1e-9);
    let v = ok_json(&["frostman", "--measure", "cantor:3", "--radii", "0.34,0.12,0.04"]);
    assert!(v["exponent"].as_f64().unwrap() > 1.0);
    let v = ok_json(&["spectral", "--measure", "cantor:2", "--tmin", "1", "--tmax", "8", "--points", "5", "--nodes", "64", "--s", "1.2"]);
    assert_eq!(v["curve"].as_array().unwrap().len(), 5);
    assert!(v["fit"]["slope"].is_number() && v["energy"]["value"].is_number());
    let v = ok_json(&["group-energy", "--measure", "grid:8", "--grid-res", "8", "--samples", "4"]);
    assert!(v["value"].as_f64().unwrap() > 0.0);
    let v = ok_json(&["group-energy", "--measure", "grid:8", "--grid-res", "8", "--samples", "4", "--scales", "0.5", "2"]);
    assert!(v["value"].as_f64().unwrap() > 0.0);
    let dir = tempfile::tempdir().unwrap();
    let two = write(dir.path(), "two.csv", "# dim=2 mode=exact\n0,0\n1,0\n");
    let v = ok_json(&["thickened", "--input", &two, "--epsilon", "0.1"]);
    assert_eq!(v["value"], 0.5);
}

#[test]
fn validate_reads_and_normalizes() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "a.csv", "# dim=2 mode=exact\n0,0\n1,0\n0,1\n");
    let v = ok_json(&["validate", "--input", &p]);
    assert_eq!((v["dim"].as_u64(), v["points"].as_u64()), (Some(2), Some(3)));
    assert_eq!(v["mode"], "exact");

    let p = write(dir.path(), "w.csv", "# dim=1 mode=float\n0.0,0.5\n1.0,0.5000001\n");
    let out = run(&["validate", "--input", &p, "--out", dir.path().join("o").to_str().unwrap()]);
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("warning") && stderr.contains("rescaled"), "{stderr}");
    let csv = fs::read_to_string(dir.path().join("o/points.csv")).unwrap();
    assert!(csv.starts_with("# dim=1 mode=float\n# x0,weight\n"));
    // the written file reads back
    ok_json(&["validate", "--input", dir.path().join("o/points.csv").to_str().unwrap()]);
}

#[test]
fn bad_point_files_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&str, &str)] = &[
        ("", "empty"),
        ("0,0\n1,1\n", "header"),
        ("# dim=2\n0,0\n", "dim= and mode="),
        ("# dim=2 mode=fuzzy\n0,0\n", "fuzzy"),
        ("# dim=0 mode=exact\n0\n", "dim must be"),
        ("# dim=2 mode=exact color=red\n0,0\n", "unknown header key"),
        ("# dim=2 mode=exact junk\n0,0\n", "malformed header"),
        ("# dim=2 mode=exact\n", "no points"),
        ("# dim=2 mode=exact\n0,0\n1,0,3,4\n", "row 3: expected 2 or 3 columns, found 4"),
        ("# dim=2 mode=exact\n0,0\n1.5,0\n", "row 3: \"1.5\" is not an integer"),
        ("# dim=2 mode=float\n0,0\nnan,1\n", "row 3"),
        ("# dim=1 mode=float\n0,0.5\n1,-0.5\n", "row 3: weight"),
        ("# dim=1 mode=float\n0,0.5\n1\n", "row 3: weight column"),
        ("# dim=1 mode=float\n0,0.5\n1,0.6\n", "weights sum"),
        ("# dim=2 mode=exact\n-3037000000,0\n3037000000,0\n", "overflow"),
    ];
    for (i, (body, needle)) in cases.iter().enumerate() {
        let p = write(dir.path(), &format!("c{i}.csv"), body);
        let (code, rec) = fails(&["validate", "--input", &p]);
        assert_eq!(code, 3, "{body:?}");
        assert_eq!(rec["error"]["kind"], "bad_input");
        let msg = message(&rec).to_lowercase();
        assert!(msg.contains(&needle.to_lowercase()), "{body:?}: {msg}");
    }
}

#[test]
fn bad_parameters_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["census", "--k", "2"],
        vec!["census", "--q", "2", "--k", "3"],
        vec!["three-spheres", "--radii", "1,1"],
        vec!["three-spheres", "--radii", "1,7,1"],
        vec!["thresholds", "--k", "3", "--d", "2"],
        vec!["spheres", "--d", "4", "--n", "3"],
        vec!["sharpness", "--s", "2.5", "--q", "4"],
        vec!["spectral", "--measure", "nonsense"],
        vec!["spectral", "--measure", "cantor:x"],
        vec!["spectral", "--measure", "delta", "--tmin", "5", "--tmax", "1"],
        vec!["spectral", "--measure", "delta", "--nodes", "4"],
        vec!["spectral", "--measure", "delta", "--d", "4"],
        vec!["mattila", "--measure", "delta", "--tmin", "2", "--tmax", "1"],
        vec!["group-energy", "--measure", "cantor-cells:2"],
        vec!["group-energy", "--measure", "grid:8", "--grid-res", "4"],
        vec!["group-energy", "--measure", "grid:8", "--grid-res", "0"],
        vec!["group-energy", "--measure", "grid:8", "--k", "0"],
        vec!["frostman", "--measure", "delta", "--radii", "0.1,0.2"],
        vec!["thickened", "--input", "PLACEHOLDER", "--epsilon", "0"],
    ];
    let two = write(dir.path(), "two.csv", "# dim=2 mode=exact\n0,0\n1,0\n");
    for args in cases {
        let args: Vec<&str> = args.iter().map(|a| if *a == "PLACEHOLDER" { two.as_str() } else { a }).collect();
        let (code, rec) = fails(&args);
        assert_eq!(code, 3, "{args:?}: {rec}");
    }
}

#[test]
fn budget_errors() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "g.csv", "# dim=2 mode=exact\n0,0\n1,0\n2,0\n0,1\n1,1\n2,1\n");
    for args in [
        vec!["census", "--q", "40", "--budget", "10"],
        vec!["census", "--input", grid.as_str(), "--budget", "3"],
        vec!["thickened", "--input", grid.as_str(), "--epsilon", "0.1", "--budget", "5"],
        vec!["mattila", "--measure", "cantor:2", "--tmax", "100", "--budget", "10"],
        vec!["group-energy", "--measure", "grid:8", "--grid-res", "8", "--budget", "16"],
    ] {
        let (code, rec) = fails(&args);
        assert_eq!(code, 5, "{args:?}");
        assert_eq!(rec["error"]["kind"], "budget_exceeded");
    }
    // over budget but sampled
    let v = ok_json(&["thickened", "--input", &grid, "--epsilon", "0.1", "--budget", "5", "--samples", "1000"]);
    assert_eq!(v["exact"], false);
    let v = ok_json(&["census", "--input", &grid, "--budget", "3", "--samples", "10"]);
    assert_eq!(v["sampled"], true);
}

#[test]
fn computation_errors() {
    let (code, rec) = fails(&["growth", "--q", "4,8"]);
    assert_eq!(code, 6);
    assert!(message(&rec).contains("at least 4"));
    let (code, _) = fails(&["spectral", "--measure", "delta", "--tmin", "0.1", "--tmax", "0.5", "--points", "3", "--s", "1"]);
    assert_eq!(code, 6);
}

#[test]
fn io_errors() {
    let (code, rec) = fails(&["validate", "--input", "/nonexistent/points.csv"]);
    assert_eq!(code, 4);
    assert_eq!(rec["error"]["kind"], "io");
    let (code, _) = fails(&["run", "/nonexistent/experiment.cfg"]);
    assert_eq!(code, 4);
    let dir = tempfile::tempdir().unwrap();
    let blocker = write(dir.path(), "file", "x");
    let (code, _) = fails(&["thresholds", "--k", "1", "--d", "2", "--out", &format!("{blocker}/sub")]);
    assert_eq!(code, 4);
}

#[test]
fn usage_errors() {
    for args in [
        vec!["frobnicate"],
        vec!["thresholds", "--k", "1"],
        vec!["census", "--q", "two"],
        vec!["census", "--q", "2", "--input", "x.csv"],
    ] {
        let (code, rec) = fails(&args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(rec["error"]["kind"], "usage");
    }
    let out = run(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("Exit codes"));
}

#[test]
fn config_files_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.cfg", "# planar triangles\nexperiment = census\nq = 3\nk = 2\ninclude_degenerate = false\n");
    assert_eq!(ok_json(&["run", &cfg])["count"], 29);
    let v = ok_json(&["run", &cfg, "--q", "2", "--relation", "similarity"]);
    assert_eq!((v["count"].as_u64(), v["q"].as_u64()), (Some(6), Some(2)));

    let out = dir.path().join("out");
    let cfg2 = write(dir.path(), "g.cfg", "experiment = group-energy\nmeasure = grid:8\ngrid_res = 8\nsamples = 4\n");
    ok_json(&["--out", out.to_str().unwrap(), "run", &cfg2]);
    let manifest: Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "group-energy");
    assert_eq!(manifest["parameters"]["grid_res"], 8);

    for (body, needle) in [
        ("q = 3\n", "experiment"),
        ("experiment = census\nq 3\n", "line 2"),
        ("experiment = census\nq = 3\nq = 4\n", "duplicate"),
        ("experiment = census\nq = 3\ncolour = blue\n", "colour"),
        ("experiment = run\n", "cannot run"),
        ("experiment = census\nq = x\n", "bad.cfg"),
    ] {
        let p = write(dir.path(), "bad.cfg", body);
        let (code, rec) = fails(&["run", &p]);
        assert_eq!(code, 3, "{body:?}");
        assert!(message(&rec).contains(needle), "{body:?}: {rec}");
    }
}

#[test]
fn seeded_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "g.csv", "# dim=2 mode=exact\n0,0\n1,0\n2,0\n0,1\n1,1\n2,1\n");
    let commands: Vec<Vec<&str>> = vec![
        vec!["group-energy", "--measure", "grid:8", "--grid-res", "8", "--samples", "8", "--seed", "3"],
        vec!["thickened", "--input", &grid, "--epsilon", "0.3", "--budget", "5", "--samples", "500", "--seed", "2"],
        vec!["census", "--input", &grid, "--budget", "3", "--samples", "10", "--seed", "1"],
    ];
    for args in commands {
        let mut payloads = Vec::new();
        for i in 0..3 {
            let out = dir.path().join(format!("r{i}"));
            let mut full = args.clone();
            let o = out.to_str().unwrap().to_string();
            full.extend(["--out", o.as_str()]);
            let res = run(&full);
            assert!(res.status.success());
            let name = format!("{}.json", args[0]);
            payloads.push((res.stdout, fs::read(out.join(name)).unwrap()));
        }
        assert!(payloads.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}
