use std::path::Path;
use std::process::{Command, Output};

use locrep::code::repetition_code;
use locrep::field::FieldSpec;
use locrep::io;
use serde_json::{json, Value};

fn locrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locrep"))
        .args(args)
        .env_remove("LOCREP_SEARCH_CAP")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn build(dir: &Path, r: &str, m: &str) -> String {
    let path = dir.join(format!("square_{r}_{m}.json"));
    let p = path.to_str().unwrap().to_owned();
    let out = locrep(&["build", "--family", "square", "--r", r, "--M", m, "-o", &p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

#[test]
fn bounds_square_example() {
    let out = locrep(&["bounds", "--theorem", "square", "--n", "9", "--M", "3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["value"], 6);
    assert_eq!(v["s"], 1);
    assert_eq!(v["theorem"], "square");
}

#[test]
fn bounds_rdc_and_domain_errors() {
    let out = locrep(&["bounds", "--theorem", "rdc", "--n", "36", "--M", "9", "--r", "5", "--delta", "3"]);
    assert_eq!(stdout_json(&out)["value"], 27);
    let out = locrep(&["bounds", "--theorem", "square", "--n", "10", "--M", "3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = locrep(&["bounds", "--theorem", "nonsense", "--n", "9", "--M", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_distance_phi_rho_verify() {
    let dir = tempfile::tempdir().unwrap();
    let code = build(dir.path(), "2", "3");

    let out = locrep(&["distance", &code]);
    assert_eq!(stdout_json(&out), json!({ "d": 6 }));

    let out = locrep(&["phi", &code, "--x-max", "2"]);
    let v = stdout_json(&out);
    assert_eq!(v["phi"], json!([0, 3, 5]));
    assert_eq!(v["rho"], 1);
    assert_eq!(v["size_cap"], 3);

    let out = locrep(&["rho", &code]);
    assert_eq!(stdout_json(&out), json!({ "rho": 1, "size_cap": 3 }));

    let out = locrep(&["verify", &code, "--locality", "2", "--delta", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["holds"], true);

    let out = locrep(&["verify", &code, "--locality", "1", "--delta", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["holds"], false);

    let out = locrep(&["verify", &code, "--optimal-square"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!({ "d": 6, "designed": 6, "s": 1, "optimal": true }));
}

#[test]
fn repetition_distance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.json");
    io::write_code(&repetition_code(FieldSpec::with_degree(4).unwrap(), 3).unwrap(), &path).unwrap();
    let out = locrep(&["distance", path.to_str().unwrap()]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"d\":3}\n");
}

#[test]
fn build_is_byte_identical_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = build(dir.path(), "3", "6");
    let to_stdout = locrep(&["build", "--family", "square", "--r", "3", "--M", "6"]);
    let file = std::fs::read(&a).unwrap();
    assert_eq!(to_stdout.stdout, file);
    let parsed = io::read_code(&a).unwrap();
    assert_eq!(io::code_to_json(&parsed).as_bytes(), &file[..]);
}

#[test]
fn repair_plan_and_unrepairable_exit() {
    let dir = tempfile::tempdir().unwrap();
    let code = build(dir.path(), "2", "4");
    let out = locrep(&["repair", &code, "--erase", "1,2", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["steps"][0]["members"], json!([1, 4, 7]));
    assert_eq!(v["steps"][1]["members"], json!([2, 5, 8]));

    let out = locrep(&["repair", &code, "--erase", "1,2,4,5", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1"));

    let out = locrep(&["repair", &code, "--erase", "0", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.csv");
    let out = locrep(&["table", "--r", "5", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "M,bound_square,bound_rdc");
    assert_eq!(lines.len(), 21);
}

#[test]
fn search_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let code = build(dir.path(), "3", "4");
    let out = Command::new(env!("CARGO_BIN_EXE_locrep"))
        .args(["distance", &code])
        .env("LOCREP_SEARCH_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_locrep"))
        .args(["distance", &code])
        .env("LOCREP_SEARCH_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&locrep(&["distance", &code]))["d"], 12);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(locrep(&[]).status.code(), Some(2));
    assert_eq!(locrep(&["distance", "/nonexistent/code.json"]).status.code(), Some(2));
    assert_eq!(
        locrep(&["build", "--family", "hexagon", "--r", "2", "--M", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(locrep(&["--help"]).status.code(), Some(0));
}
