use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn convball(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convball")).args(args).output().expect("spawn convball")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn problem_file(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("convball-cli-{}-{name}.toml", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn radius_lipschitz_first_table() {
    let o = convball(&["radius", "--class", "lipschitz", "--c0", "96.6628", "--c", "96.6628", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema"], "convball.radius.v1");
    let rho_min = v["radii"]["rho_min"].as_f64().unwrap();
    assert!((rho_min / 0.00208131 - 1.0).abs() < 0.01);
    let rho1 = v["radii"]["rho"][0].as_f64().unwrap();
    assert!((rho1 / 0.00295578 - 1.0).abs() < 1e-5);
}

#[test]
fn radius_q1_radii_match_across_classes() {
    let lip = json(&convball(&["radius", "--class", "lipschitz", "--c0", "0.5", "--c", "0.8", "--format", "json"]));
    let hol =
        json(&convball(&["radius", "--class", "hoelder", "--c0", "0.5", "--c", "0.8", "--q", "1", "--format", "json"]));
    assert_eq!(lip["radii"].to_string(), hol["radii"].to_string());
}

#[test]
fn radius_rejects_center_above_full() {
    let o = convball(&["radius", "--class", "lipschitz", "--c0", "2", "--c", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error"));
}

#[test]
fn radius_rejects_lipschitz_with_fractional_exponent() {
    let o = convball(&["radius", "--class", "lipschitz", "--c0", "1", "--c", "1", "--q", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn radius_csv_has_header_and_rows() {
    let o = convball(&["radius", "--class", "hoelder", "--c0", "0.0608658", "--c", "0.094888", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "label,value");
    assert!(lines[1].starts_with("rho1,4.0477"));
    assert_eq!(lines.len(), 8);
}

#[test]
fn solve_planck_reaches_root() {
    let o = convball(&["solve", "--method", "seventh", "--example", "planck", "--x0", "4.0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["converged"], true);
    let x: f64 = v["final_x"][0].as_str().unwrap().parse().unwrap();
    assert!((x - 4.965114).abs() < 1e-6);
    assert!((x - 4.965114231744276).abs() < 1e-12);
}

#[test]
fn solve_newton_from_published_root_takes_one_step() {
    let v = json(&convball(&[
        "solve",
        "--method",
        "newton",
        "--example",
        "planck",
        "--x0",
        "4.965114",
        "--format",
        "json",
    ]));
    assert!(v["iterations"].as_u64().unwrap() <= 1);
}

#[test]
fn solve_hammerstein_broadcasts_start() {
    let o = convball(&["solve", "--method", "seventh", "--example", "hammerstein", "--x0", "0.3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["iterations"].as_u64().unwrap() <= 5);
    assert_eq!(v["steps"][0]["x"].as_array().unwrap().len(), 16);
}

#[test]
fn solve_rejects_wrong_start_length() {
    let o = convball(&["solve", "--method", "seventh", "--example", "hammerstein", "--x0", "0.1,0.2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_reports_non_convergence() {
    let o = convball(&["solve", "--method", "newton", "--example", "planck", "--x0", "3", "--max-iter", "1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn solve_verifies_bounds_inside_ball() {
    let o = convball(&[
        "solve",
        "--method",
        "seventh",
        "--example",
        "planck",
        "--x0",
        "5.5",
        "--verify-bounds",
        "--class",
        "hoelder",
        "--c0",
        "0.0608658",
        "--c",
        "0.094888",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let bounds = v["bounds"].as_array().unwrap();
    assert!(!bounds.is_empty());
    assert!(bounds.iter().all(|b| b["holds"] == true));
}

#[test]
fn solve_bounds_refuse_start_outside_ball() {
    let o = convball(&[
        "solve",
        "--method",
        "seventh",
        "--example",
        "planck",
        "--x0",
        "9",
        "--verify-bounds",
        "--class",
        "hoelder",
        "--c0",
        "0.0608658",
        "--c",
        "0.094888",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_bounds_need_constants() {
    let o = convball(&["solve", "--method", "seventh", "--example", "planck", "--x0", "5", "--verify-bounds"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reproduce_first_two_tables_pass() {
    for t in ["1", "2"] {
        let o = convball(&["reproduce", "--table", t]);
        assert_eq!(o.status.code(), Some(0), "table {t}: {}", stderr(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn reproduce_markdown_marks_quoted_columns() {
    let text = stdout(&convball(&["reproduce", "--table", "1"]));
    assert!(text.contains("CHMT"));
    assert!(text.contains("not computed by this tool"));
}

#[test]
fn reproduce_all_csv_has_fifteen_rows() {
    let o = convball(&["reproduce", "--table", "all", "--format", "csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "label,computed,paper,rel_dev,status");
    assert_eq!(lines.len(), 16);
    assert!(lines[1].starts_with("table1.rho1,"));
    assert!(!text.contains("CHMT"));
    // Failing rows are reported with both values on stderr and a nonzero exit.
    let failing = lines.iter().filter(|l| l.ends_with(",FAIL")).count();
    assert_eq!(o.status.code() == Some(0), failing == 0);
    assert_eq!(stderr(&o).matches("computed").count(), failing);
}

#[test]
fn reproduce_json_parses_back() {
    let v = json(&convball(&["reproduce", "--table", "2", "--format", "json"]));
    assert_eq!(v["schema"], "convball.reproduce.v1");
    let c: convball_core::ContinuityConstants = serde_json::from_value(v["tables"][0]["constants"].clone()).unwrap();
    assert_eq!(c.center(), 0.0608658);
    assert_eq!(v["tables"][0]["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn estimate_planck_stays_near_stated_constants() {
    let args = ["estimate", "--example", "planck", "--q", "1", "--radius", "1", "--samples", "10000", "--seed", "7"];
    let o = convball(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["estimate"]["kappa0_hat"].as_f64().unwrap() <= 0.0608658 * 1.05);
    assert!(v["estimate"]["kappa_hat"].as_f64().unwrap() <= 0.094888 * 1.05);
    assert_eq!(v["caveat"], "sampled lower bound");
    assert!(stdout(&convball(&args)).contains("sampled lower bound"));
}

#[test]
fn estimate_is_deterministic_for_a_seed() {
    let args =
        ["estimate", "--example", "planck", "--radius", "1", "--samples", "500", "--seed", "11", "--format", "csv"];
    assert_eq!(convball(&args).stdout, convball(&args).stdout);
}

#[test]
fn estimate_affine_file_gives_zero() {
    let path = problem_file(
        "affine",
        "variables = [\"x\", \"y\"]\nequations = [\"2*x + y - 3\", \"x - y\"]\nroot = [1.0, 1.0]\n",
    );
    let o = convball(&[
        "estimate",
        "--problem",
        path.to_str().unwrap(),
        "--radius",
        "0.5",
        "--seed",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["estimate"]["kappa0_hat"].as_f64(), Some(0.0));
    assert_eq!(v["estimate"]["kappa_hat"].as_f64(), Some(0.0));
}

#[test]
fn estimate_without_root_exits_six() {
    let path = problem_file("noroot", "variables = [\"x\"]\nequations = [\"x^2 - 1\"]\n");
    let o = convball(&["estimate", "--problem", path.to_str().unwrap(), "--radius", "0.5", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(6));
}

#[test]
fn malformed_problem_file_exits_two() {
    let path = problem_file("bad", "variables = [\"x\"]\nequations = [\"x^^2\"]\n");
    let o = convball(&["solve", "--method", "newton", "--problem", path.to_str().unwrap(), "--x0", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn order_at_extended_precision() {
    for (m, lo, hi) in [("seventh", 6.5, 7.5), ("newton", 1.8, 2.2)] {
        let o = convball(&[
            "order",
            "--method",
            m,
            "--example",
            "planck",
            "--x0",
            "4.3",
            "--precision",
            "64",
            "--format",
            "json",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let coc = json(&o)["estimate"]["coc"].as_f64().unwrap();
        assert!((lo..=hi).contains(&coc), "{m}: {coc}");
    }
}

#[test]
fn order_at_double_precision_lacks_data() {
    let o = convball(&["order", "--method", "seventh", "--example", "planck", "--x0", "4.3", "--precision", "16"]);
    assert_eq!(o.status.code(), Some(7));
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(convball(&["radius"]).status.code(), Some(2));
    assert_eq!(convball(&["solve", "--method", "seventh", "--x0", "1"]).status.code(), Some(2));
    assert_eq!(convball(&["bogus"]).status.code(), Some(2));
    assert_eq!(convball(&["--help"]).status.code(), Some(0));
}
