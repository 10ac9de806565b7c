use std::io::Write;
use std::process::{Command, Output};

use tropical_ot::scalar::ExtendedReal;
use tropical_ot::{is_plan, MaxPlusMeasure, Plan};

fn tropot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropot")).args(args).env_remove("TROPOT_SEED").output().unwrap()
}

fn problem(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

const FUNDAMENTAL_3X3: &str = r#"{"mu":[0,0,0],"nu":[0,0,0],"cost":[[5,1,5],[5,2,5],[3,5,4]]}"#;

#[test]
fn solve_fundamental_three_by_three() {
    let f = problem(FUNDAMENTAL_3X3);
    let out: serde_json::Value =
        serde_json::from_str(&stdout(&tropot(&["solve", f.path().to_str().unwrap(), "--format", "json"]))).unwrap();
    assert_eq!(out["cost"], 4.0);
    assert_eq!(out["support"], serde_json::json!([[1, 2], [2, 2], [3, 1], [3, 3]]));
    assert_eq!(out["plan"][0][0], "-inf");
    let via_option = stdout(&tropot(&["solve", "--input", f.path().to_str().unwrap(), "--format", "json"]));
    assert_eq!(serde_json::from_str::<serde_json::Value>(&via_option).unwrap(), out);
}

#[test]
fn plan_json_round_trips_through_is_plan() {
    let f = problem(r#"{"mu":[0,-2,-1,0],"nu":[-3,0,0],"cost":[[1,2,3],[4,0,6],[7,8,0],[2,2,2]]}"#);
    let out: serde_json::Value =
        serde_json::from_str(&stdout(&tropot(&["solve", f.path().to_str().unwrap(), "--format", "json"]))).unwrap();
    let rows: Vec<Vec<ExtendedReal<f64>>> = serde_json::from_value(out["plan"].clone()).unwrap();
    let mu: Vec<f64> = serde_json::from_value(out["mu"].clone()).unwrap();
    let nu: Vec<f64> = serde_json::from_value(out["nu"].clone()).unwrap();
    let h = Plan::from_rows(rows).unwrap();
    assert!(h.support().len() < 12, "some entry should be -inf");
    assert!(is_plan(&h, &MaxPlusMeasure::new(mu).unwrap(), &MaxPlusMeasure::new(nu).unwrap()).unwrap());
}

#[test]
fn raw_weights_are_normalized_with_a_warning() {
    let f = problem(r#"{"mu":[3,1,2],"nu":[-1,0],"cost":[[1,2],[3,4],[0,7]]}"#);
    let o = tropot(&["solve", f.path().to_str().unwrap(), "--format", "json"]);
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("warning: mu weights were not normalized"), "{err}");
    let out: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out["mu"], serde_json::json!([0.0, -1.0, -2.0]));
    assert_eq!(out["row_order"], serde_json::json!([1, 3, 2]));
    assert_eq!(out["col_order"], serde_json::json!([2, 1]));
}

#[test]
fn regions_of_six_point_example() {
    let f = problem(r#"{"mu":[0,0,-2,-3,-4,-4],"nu":[0,0,0,-1,-2,-2]}"#);
    let out: serde_json::Value =
        serde_json::from_str(&stdout(&tropot(&["regions", f.path().to_str().unwrap(), "--format", "json"]))).unwrap();
    let lambdas: Vec<f64> = out.as_array().unwrap().iter().map(|r| r["lambda"].as_f64().unwrap()).collect();
    assert_eq!(lambdas, vec![0.0, -1.0, -2.0, -3.0, -4.0]);
    assert_eq!(out[1]["cells"], serde_json::json!([[1, 4], [2, 4]]));
    let table = stdout(&tropot(&["regions", f.path().to_str().unwrap()]));
    assert!(table.contains("1 1 1 2 3 3\n"), "{table}");
}

#[test]
fn analyze_reports_reduction_and_matching() {
    let f = problem(r#"{"mu":[0,0],"nu":[0,0],"cost":[[1,2],[4,3]]}"#);
    let out: serde_json::Value =
        serde_json::from_str(&stdout(&tropot(&["analyze", f.path().to_str().unwrap(), "--format", "json"]))).unwrap();
    assert_eq!(out["plan_reduced"], false);
    assert_eq!(out["reduced_plan"], serde_json::json!([[0.0, "-inf"], ["-inf", 0.0]]));
    assert_eq!(out["unique"], false);

    let f = problem(FUNDAMENTAL_3X3);
    let out: serde_json::Value =
        serde_json::from_str(&stdout(&tropot(&["analyze", f.path().to_str().unwrap(), "--format", "json"]))).unwrap();
    assert_eq!(out["contains_perfect_matching"], false);
    assert_eq!(out["unique"], true);
}

#[test]
fn formula_and_enumeration() {
    assert_eq!(stdout(&tropot(&["formula", "--n", "2", "--p", "0.5", "--exact-rational"])), "7/16\n");
    assert_eq!(stdout(&tropot(&["formula", "--n", "2", "--p", "1/2"])), "0.4375\n");
    assert_eq!(stdout(&tropot(&["oracle", "prob", "--n", "2", "--p", "1/2"])), "7/16\n");
    assert_eq!(
        stdout(&tropot(&["formula", "--n", "2", "--probs", "1/4,1/4,1/2", "--j", "1", "--exact-rational"])),
        stdout(&tropot(&["formula", "--n", "2", "--p", "1/4", "--exact-rational"]))
    );
    let sched = stdout(&tropot(&["formula", "--n", "4,8", "--schedule", "n-pow:0.5"]));
    assert_eq!(sched.lines().count(), 2);
}

#[test]
fn simulate_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let path = dir.path().join(name);
        let p = path.to_str().unwrap();
        stdout(&tropot(&[
            "simulate",
            "--event",
            "beta1",
            "--n",
            "2,3",
            "--p",
            "0.5",
            "--trials",
            "500",
            "--seed",
            "9",
            "--threads",
            threads,
            "--csv",
            p,
        ]));
        std::fs::read_to_string(path).unwrap()
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "3");
    assert_eq!(a, b);
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("event,n,p_or_M,trials,seed,frequency,stderr,exact"));
    let first = lines.next().unwrap();
    assert!(first.starts_with("beta1,2,0.5,500,9,") && first.ends_with(",0.4375"), "{first}");
}

#[test]
fn seed_comes_from_environment() {
    let run = |seed: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_tropot"))
            .args(["simulate", "--event", "pm", "--n", "4", "--p", "0.4", "--trials", "300"])
            .env("TROPOT_SEED", seed)
            .output()
            .unwrap();
        stdout(&o).lines().nth(1).unwrap().split_whitespace().nth(4).unwrap().to_string()
    };
    assert_eq!(run("5"), run("5"));
}

#[test]
fn validation_errors_exit_with_two() {
    let cases = [
        r#"{"mu":[0,0],"nu":[0],"cost":[[1]]}"#,
        r#"{"mu":[0],"nu":[0],"cost":[[-1]]}"#,
        r#"{"mu":[0],"nu":[0],"cost":[[1]"#,
        r#"{"mu":[],"nu":[0],"cost":[]}"#,
    ];
    for json in cases {
        let f = problem(json);
        let o = tropot(&["solve", f.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{json}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.starts_with("error: ") && err.lines().count() == 1, "{err}");
    }
    assert_eq!(tropot(&["formula", "--n", "2", "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(tropot(&["solve", "/nonexistent/problem.json"]).status.code(), Some(2));
}

#[test]
fn version_names_library_and_format() {
    let v = stdout(&tropot(&["--version"]));
    assert!(v.contains("library") && v.contains("format 1"), "{v}");
}
