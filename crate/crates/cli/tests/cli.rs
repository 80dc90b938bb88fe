use std::path::PathBuf;
use std::process::{Command as Proc, Output};

use ccs_cli::{execute, parse_batch_line, parse_class, render, run_batch, Command, Failure, Format, Request};
use ccs_core::FieldSpec;
use serde_json::json;

fn ccs(args: &[&str]) -> Output {
    Proc::new(env!("CARGO_BIN_EXE_ccs")).args(args).env_remove("CCS_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn text_output_matches_printed_classes() {
    let o = ccs(&["segre", "--vars", "x,y,z,w", "x*y, x*z, y*z"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "3*H^2 - 10*H^3");
    let o = ccs(&["csm", "--vars", "x,y,z", "x*y*(x+y)"]);
    assert_eq!(stdout(&o), "3*H + 4*H^2");
    let o = ccs(&["fulton", "--vars", "x,y,z", "x*y"]);
    assert_eq!(stdout(&o), "2*H + 2*H^2");
}

#[test]
fn json_output_shapes() {
    let o = ccs(&["segre", "--format", "json", "--vars", "x,y,z,w", "x*y, x*z, y*z"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, json!({"n": 3, "coefficients": [0, 0, 3, -10]}));
    let o = ccs(&["euler", "--format", "json", "--vars", "x,y,z", "x*y*(x+y)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, json!({"euler": 4}));
}

#[test]
fn inferred_variables_and_affine_euler() {
    let o = ccs(&["euleraffine", "x^3+y^3-1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "-3");
    let o = ccs(&["euleraffine", "x*y*(x+y)"]);
    assert_eq!(stdout(&o), "1");
}

#[test]
fn milnor_report_lists_every_class() {
    let o = ccs(&["milnor", "--vars", "x,y,z,w", "x*y, x*z"]);
    let text = stdout(&o);
    assert!(text.contains("Milnor class: 2*H^3"), "{text}");
    assert!(text.contains("Fulton class: H + 4*H^2 + 2*H^3"), "{text}");
}

#[test]
fn excess_takes_a_class() {
    let o = ccs(&["excess", "--d", "5", "--n", "3", "11*H^2 - 58*H^3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "18");
}

#[test]
fn exit_codes() {
    assert_eq!(ccs(&["segre", "x*y +"]).status.code(), Some(2));
    assert_eq!(ccs(&["segre", "--vars", "x,y", "x*q"]).status.code(), Some(2));
    assert_eq!(ccs(&["csm", "--field", "fp:7", "--vars", "x,y,z", "x*y"]).status.code(), Some(4));
    let forced = ccs(&["csm", "--field", "fp:32003", "--force", "--vars", "x,y,z", "x*y"]);
    assert_eq!(forced.status.code(), Some(0));
    assert_eq!(stdout(&forced), "2*H + 3*H^2");
    // segre runs over any field
    assert_eq!(ccs(&["segre", "--field", "fp:32003", "--vars", "x,y,z", "x*y"]).status.code(), Some(0));
    assert_eq!(ccs(&["segre", "--vars", "x,y", "x^2 + y"]).status.code(), Some(1));
}

#[test]
fn seed_flag_and_environment() {
    let a = ccs(&["fulton", "--seed", "5", "--vars", "x,y,z,w", "x*y, x*z, y*z"]);
    let b = Proc::new(env!("CARGO_BIN_EXE_ccs"))
        .args(["fulton", "--vars", "x,y,z,w", "x*y, x*z, y*z"])
        .env("CCS_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(stdout(&a), "3*H^2 + 2*H^3");
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn batch_mode_tags_lines() {
    let dir = std::env::temp_dir().join(format!("ccs-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file: PathBuf = dir.join("jobs.txt");
    std::fs::write(
        &file,
        "# corpus\nsegre; x,y,z,w; q; x*y, x*z, y*z\n\ncsm; x,y,z; q; x*y\nexcess; 5,3; q; 13*H^2 - 70*H^3\nsegre; x; q; x +\n",
    )
    .unwrap();
    let o = ccs(&["--batch", file.to_str().unwrap()]);
    assert!(o.status.success());
    let records: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 4);
    assert_eq!(records[0], json!({"line": 2, "command": "segre", "result": {"n": 3, "coefficients": [0, 0, 3, -10]}}));
    assert_eq!(records[1]["line"], 4);
    assert_eq!(records[1]["result"]["coefficients"], json!([0, 2, 3]));
    assert_eq!(records[2]["result"], json!({"euler": 0}));
    assert_eq!(records[3]["line"], 6);
    assert_eq!(records[3]["exit_code"], 2);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn library_requests() {
    let mut req = Request::new(Command::Segre, "x*y, x*z, y*z");
    req.vars = Some(["x", "y", "z", "w"].map(String::from).to_vec());
    let out = execute(&req).unwrap();
    assert_eq!(render(&out, Format::Text), "3*H^2 - 10*H^3");

    let zero = Request { vars: Some(["x", "y", "z"].map(String::from).to_vec()), ..Request::new(Command::Csm, "0") };
    assert_eq!(render(&execute(&zero).unwrap(), Format::Text), "1 + 3*H + 3*H^2");

    let prime = Request { field: FieldSpec::prime_field(5).unwrap(), ..Request::new(Command::Euler, "x*y") };
    assert!(matches!(execute(&prime), Err(Failure::UnsupportedField(_))));
}

#[test]
fn batch_lines_parse() {
    let r = parse_batch_line("degrees; x,y,z; fp:101; x^2, y^2", 3).unwrap();
    assert_eq!(r.command, Command::Degrees);
    assert_eq!(r.field, FieldSpec::prime_field(101).unwrap());
    assert_eq!(r.vars.as_deref().unwrap().len(), 3);
    assert_eq!(r.seed, 3);
    assert!(parse_batch_line("segre; x", 0).is_err());
    assert!(parse_batch_line("frobnicate; x; q; x", 0).is_err());

    let records = run_batch("degrees; x,y,z; q; x*y, x*z, y*z", 1, false);
    assert_eq!(records[0]["result"]["degrees"], json!([1, 2, 1]));
}

#[test]
fn class_parsing() {
    let c = parse_class("3*H^2 - 10*H^3", 3).unwrap();
    assert_eq!(c.to_string(), "3*H^2 - 10*H^3");
    assert!(parse_class("H^4", 3).is_err());
}
