use std::process::{Command, Output};

use serde_json::Value;

fn borwein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_borwein"))
        .args(args)
        .env_remove("BORWEIN_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn expand_dumps_decimal_strings() {
    let out = borwein(&["expand", "--p", "3", "--s", "1", "--n", "1", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["degree"], 12);
    let coeffs: Vec<&str> = v["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "-1", "-1", "1", "-1", "0", "2", "0", "-1", "1", "-1", "-1", "1"]);
}

#[test]
fn msum_both_methods_agree() {
    let out = borwein(&["msum", "--p", "3", "--s", "1", "--n", "1", "--b", "all", "--method", "both"]);
    assert!(out.status.success());
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    let direct: Vec<&str> = rows.iter().map(|r| r["m_direct"].as_str().unwrap()).collect();
    assert_eq!(direct, ["4", "-1", "-2", "2", "-2", "-1"]);
    for row in rows {
        assert_eq!(row["m_direct"], row["m_charsum"]);
    }
}

#[test]
fn msum_single_residue_and_ell() {
    let out = borwein(&["msum", "--p", "3", "--s", "1", "--n", "1", "--b", "3"]);
    assert_eq!(json(&out)[0]["m_direct"], "2");

    // modulus 3: indices 2, 5, 8, 11 give -1 + 0 - 1 - 1
    let out = borwein(&["msum", "--p", "3", "--s", "1", "--n", "1", "--ell", "1", "--b", "2"]);
    assert!(out.status.success());
    assert_eq!(json(&out)[0]["m_direct"], "-3");
    assert_eq!(json(&out)[0]["modulus"], 3);

    let out = borwein(&["msum", "--p", "3", "--s", "1", "--n", "1", "--ell", "1", "--method", "charsum"]);
    assert_eq!(out.status.code(), Some(4));
    let out = borwein(&["msum", "--p", "3", "--s", "1", "--n", "1", "--b", "6"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_main_grid_passes() {
    let out = borwein(&["verify", "--suite", "main1", "--p", "3,5", "--s", "1,2", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    // sum over p in {3,5}, s in {1,2}, n <= 6 of N_p
    assert_eq!(rows.len(), 2 * (3 * 28 + 5 * 28));
    assert!(rows.iter().all(|r| r["within_bound"] == true));
}

#[test]
fn verify_csv_schema_and_order() {
    let out = borwein(&["verify", "--p", "5,3", "--s", "1", "--n-max", "1", "--format", "csv", "--no-timestamp"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,s,n,b,m_direct,m_charsum,main_num,main_den,bound_ok,sign_ok"));
    let keys: Vec<(u32, u32, u32, u64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(keys.first(), Some(&(3, 1, 0, 0)));
}

#[test]
fn verify_rejects_p_two() {
    let out = borwein(&["verify", "--p", "2", "--s", "1", "--n-max", "1"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn csv_timestamp_is_optional_and_output_is_deterministic() {
    let args = ["verify", "--p", "3", "--s", "1,2", "--n-max", "3", "--format", "csv"];
    let with = borwein(&args);
    assert!(stdout(&with).starts_with("# generated_unix="));

    let mut quiet = args.to_vec();
    quiet.push("--no-timestamp");
    let a = borwein(&quiet);
    quiet.extend(["--threads", "1"]);
    let b = borwein(&quiet);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), stdout(&with).split_once('\n').unwrap().1);
}

#[test]
fn writes_to_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.json");
    let out = borwein(&["recursions", "--n-max", "8", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 8);
    assert!(steps.iter().all(|s| s["passed"] == true));
}

#[test]
fn budget_flag_and_environment() {
    let out = borwein(&["expand", "--p", "3", "--s", "1", "--n", "30", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(env!("CARGO_BIN_EXE_borwein"))
        .args(["expand", "--p", "3", "--s", "1", "--n", "30"])
        .env("BORWEIN_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn usage_errors_exit_four() {
    for args in [
        &["expand", "--p", "4", "--s", "1", "--n", "1"][..],
        &["expand", "--p", "3", "--s", "0", "--n", "1"],
        &["expand", "--p", "3", "--s", "1"],
        &["expand", "--p", "3", "--s", "1", "--n", "1", "--bogus"],
        &["frobnicate"],
        &["supnorm", "--p", "3", "--s", "1", "--n", "1", "--samples", "47"],
        &["maxcoeff", "--p", "3", "--n-min", "3", "--n-max", "1"],
        &["maxcoeff", "--p", "19", "--n-max", "0", "--threads", "0"],
    ] {
        let out = borwein(args);
        assert_eq!(out.status.code(), Some(4), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_and_version_succeed() {
    assert!(borwein(&["--help"]).status.success());
    assert!(borwein(&["--version"]).status.success());
    assert!(stdout(&borwein(&["verify", "--help"])).contains("--suite"));
}

#[test]
fn supnorm_and_maxcoeff_tables() {
    let out = borwein(&["supnorm", "--p", "3", "--s", "1", "--n", "0"]);
    let v = json(&out)[0]["value"].as_f64().unwrap();
    assert!((v - 16.0 / (3.0 * 3f64.sqrt())).abs() < 1e-9);

    let out = borwein(&["maxcoeff", "--p", "3", "--n-max", "5", "--format", "csv", "--no-timestamp"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("p,s,n,max_abs_coeff,log_ratio,supnorm_estimate,samples,"));
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().nth(2).unwrap().starts_with("3,1,1,2,"));

    let out = borwein(&["maxcoeff", "--p", "17", "--n-max", "1"]);
    assert!(out.status.success());
    assert!(json(&out)[1]["trend_base_1.219"].is_f64());
}
