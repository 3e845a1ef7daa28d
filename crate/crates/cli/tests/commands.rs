use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use spencer_core::format::{parse_cochain, write_algebra, write_cochain};
use spencer_core::{conformal_algebra, Rational, SpencerComplex};
use tempfile::TempDir;

fn spencer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spencer"))
        .args(args)
        .env("SEED", "7")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn co4() -> SpencerComplex<Rational> {
    SpencerComplex::with_leading_w(conformal_algebra(4).unwrap(), 4).unwrap()
}

/// Data rows of a text table, split on whitespace.
fn rows(out: &str) -> Vec<Vec<String>> {
    out.lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect()
}

#[test]
fn validate_accepts_a_model_algebra() {
    let dir = TempDir::new().unwrap();
    let f = write(
        dir.path(),
        "co3.alg",
        &write_algebra(&conformal_algebra::<Rational>(3).unwrap()),
    );
    let o = spencer(&["validate", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn validate_names_a_failing_triple() {
    let dir = TempDir::new().unwrap();
    let text = write_algebra(&conformal_algebra::<Rational>(3).unwrap());
    let line = text
        .lines()
        .find(|l| l.starts_with("[e1,f1] ="))
        .expect("bracket present")
        .to_string();
    let bent = text.replace(&line, &format!("{line} + 1*b12"));
    let f = write(dir.path(), "bent.alg", &bent);
    let o = spencer(&["validate", f.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL jacobi ("), "{}", stdout(&o));
}

#[test]
fn validate_reports_parse_position() {
    let dir = TempDir::new().unwrap();
    let text = write_algebra(&conformal_algebra::<Rational>(3).unwrap());
    let cut: String = text.lines().take(4).map(|l| format!("{l}\n")).collect();
    let f = write(dir.path(), "cut.alg", &cut);
    let o = spencer(&["validate", f.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn prolong_so_and_co() {
    let o = spencer(&["prolong", "--family", "so", "--dim", "4"]);
    assert_eq!(code(&o), 0);
    let r = rows(&stdout(&o));
    assert_eq!((r[0][1].as_str(), r[1][1].as_str()), ("6", "0"));

    let o = spencer(&["prolong", "--family", "co", "--dim", "3", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "order,dim,cumulative,verdict");
    assert!(lines[1].starts_with("0,4,7,"));
    assert!(lines[2].starts_with("1,3,10,"));
    assert!(lines[3].starts_with("2,0,10,"));
}

#[test]
fn prolong_gl_complex_is_not_finite() {
    let o = spencer(&["prolong", "--family", "glC", "--m", "2", "--max-order", "3"]);
    assert_eq!(code(&o), 0);
    let dims: Vec<String> = rows(&stdout(&o)).iter().map(|r| r[1].clone()).collect();
    assert_eq!(dims, ["8", "12", "16", "20"]);
    assert!(stdout(&o).contains("not finite"), "{}", stdout(&o));
}

#[test]
fn cohomology_table_for_conformal() {
    let o = spencer(&[
        "cohomology",
        "--family",
        "conformal",
        "--dim",
        "3",
        "--w",
        "2",
        "--p",
        "0..2",
    ]);
    assert_eq!(code(&o), 0);
    let h: Vec<String> = rows(&stdout(&o)).iter().map(|r| r[6].clone()).collect();
    assert_eq!(h, ["0", "0", "3"]);

    let o = spencer(&[
        "cohomology",
        "--family",
        "space-form",
        "--dim",
        "5",
        "--w",
        "3",
        "--p",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",25"), "{}", stdout(&o));
}

#[test]
fn cohomology_for_cr_vanishes() {
    let o = spencer(&["cohomology", "--family", "cr", "--m", "2", "--k", "1", "--p", "1..2"]);
    assert_eq!(code(&o), 0);
    assert!(rows(&stdout(&o)).iter().all(|r| r[6] == "0"));
}

#[test]
fn solve_zero_curvature() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "z.coc", "cochain p 1 q 2 level 0 W 4\n");
    let o = spencer(&[
        "solve",
        "--family",
        "conformal",
        "--dim",
        "4",
        "--cochain",
        f.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("cochain p 2 q 1"));
}

#[test]
fn solve_reports_obstruction() {
    let c = co4();
    let (z, b) = (c.cocycles(1, 2, 0), c.coboundaries(1, 2, 0));
    let generator = z
        .basis()
        .iter()
        .find(|v| !b.contains(v).unwrap())
        .expect("nonzero cohomology");
    let x = c.from_coords(1, 2, 0, generator).unwrap();
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "gen.coc", &write_cochain(&c, &x));
    let o = spencer(&[
        "solve",
        "--family",
        "conformal",
        "--dim",
        "4",
        "--cochain",
        f.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("OBSTRUCTED"));
    let rep = parse_cochain(&c, &stdout(&o)).unwrap();
    assert!(!rep.is_zero());
}

#[test]
fn solve_round_trips_a_coboundary() {
    let c = co4();
    let dim = c.dim_c(2, 1, 0);
    let coords: Vec<Rational> = (0..dim)
        .map(|i| Rational::from_integer(((i * 7 % 5) as i64 - 2).into()))
        .collect();
    let y = c.from_coords(2, 1, 0, &coords).unwrap();
    let z = c.spencer_d(&y).unwrap();
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "dy.coc", &write_cochain(&c, &z));
    let out = dir.path().join("sol.coc");
    let o = spencer(&[
        "solve",
        "--family",
        "conformal",
        "--dim",
        "4",
        "--cochain",
        f.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let w = parse_cochain(&c, &fs::read_to_string(out).unwrap()).unwrap();
    assert!(c.spencer_d(&w).unwrap().add(&z).unwrap().is_zero());
}

#[test]
fn solve_rejects_a_non_cocycle() {
    let c = co4();
    let z = c.cocycles(1, 2, 0);
    let dim = c.dim_c(1, 2, 0);
    let off = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| Rational::from_integer(i64::from(i == j).into()))
                .collect::<Vec<_>>()
        })
        .find(|v| !z.contains(v).unwrap())
        .expect("some cochain is not closed");
    let x = c.from_coords(1, 2, 0, &off).unwrap();
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "nc.coc", &write_cochain(&c, &x));
    let o = spencer(&[
        "solve",
        "--family",
        "conformal",
        "--dim",
        "4",
        "--cochain",
        f.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1, "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn paper_verify_passes() {
    let o = spencer(&["paper-verify", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",pass")));
}

#[test]
fn property_check_is_reproducible() {
    let a = spencer(&["property-check", "--trials", "5"]);
    let b = spencer(&["property-check", "--trials", "5"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(code(&spencer(&["cohomology", "--dim", "3"])), 3);
    assert_eq!(code(&spencer(&["prolong", "--family", "so"])), 3);
}
