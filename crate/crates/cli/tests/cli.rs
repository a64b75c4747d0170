use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const UNIT_DISC: &str =
    r#"{"support_center":[0,0],"support_radius":1,"terms":[{"shape":{"kind":"disk","center":[0,0],"radius":1},"coeff":1}]}"#;
const ZERO: &str = r#"{"support_center":[0,0],"support_radius":1,"terms":[]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_expkernel"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn value_of(out: &str) -> f64 {
    let line = out.lines().next().unwrap();
    line.trim_start_matches("E = ").split(' ').next().unwrap().parse().unwrap()
}

#[test]
fn eval_unit_disc() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "disc.json", UNIT_DISC);
    let o = run(&["eval", path(&f), "--lambda", "0.5,0", "--w", "0,0"]);
    assert_eq!(code(&o), 0);
    assert!((value_of(&stdout(&o)) - 0.25).abs() < 1e-6);
    let o = run(&["eval", path(&f), "--lambda", "0,0", "--w", "0,0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("E = 0 + 0i (diagonal divergent)"));
    let o = run(&["eval", path(&f), "--lambda=-2", "--w", "-3,0"]);
    assert_eq!(code(&o), 0);
    assert!((value_of(&stdout(&o)) - 5.0 / 6.0).abs() < 1e-6);
}

#[test]
fn eval_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"support_center\":[0,0],");
    assert_eq!(code(&run(&["eval", path(&bad), "--lambda", "0.5", "--w", "0"])), 2);
    let unknown = write(&dir, "unknown.json", &UNIT_DISC.replace("\"terms\"", "\"extra\":1,\"terms\""));
    assert_eq!(code(&run(&["eval", path(&unknown), "--lambda", "0.5", "--w", "0"])), 2);
    let over = write(&dir, "over.json", &UNIT_DISC.replace("\"coeff\":1", "\"coeff\":2"));
    assert_eq!(code(&run(&["eval", path(&over), "--lambda", "0.5", "--w", "0"])), 2);
    assert_eq!(code(&run(&["eval", "/nonexistent/file.json", "--lambda", "0.5", "--w", "0"])), 2);
    let f = write(&dir, "disc.json", UNIT_DISC);
    assert_eq!(code(&run(&["--tol", "0", "eval", path(&f), "--lambda", "0.5", "--w", "0"])), 3);
}

#[test]
fn grid_zero_density() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "zero.json", ZERO);
    let out = dir.path().join("g.csv");
    let o = run(&["grid", path(&f), "--w", "0.1,0.2", "--n", "2", "--out", path(&out)]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,y,re_E,im_E,abs_E,err");
    assert_eq!(lines.len(), 5);
    for l in &lines[1..] {
        let abs: f64 = l.split(',').nth(4).unwrap().parse().unwrap();
        assert_eq!(abs, 1.0);
    }
}

#[test]
fn grid_unit_disc_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "disc.json", UNIT_DISC);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |out: &Path, threads: &str| {
        vec![
            "--threads".to_string(),
            threads.to_string(),
            "grid".into(),
            path(&f).into(),
            "--w".into(),
            "0".into(),
            "--x-range=-0.5,0.5".into(),
            "--y-range=-0.5,0.5".into(),
            "--n".into(),
            "7".into(),
            "--out".into(),
            path(out).into(),
        ]
    };
    assert_eq!(bin().args(args(&a, "1")).status().unwrap().code(), Some(0));
    assert_eq!(bin().args(args(&b, "4")).status().unwrap().code(), Some(0));
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let rows: Vec<Vec<f64>> = text.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 49);
    assert_eq!((rows[0][0], rows[0][1], rows[1][0], rows[1][1]), (-0.5, -0.5, -0.5 + 1.0 / 6.0, -0.5));
    for r in rows {
        assert!((r[4] - (r[0] * r[0] + r[1] * r[1])).abs() < 1e-6);
    }
    assert_eq!(code(&run(&["grid", path(&f), "--w", "0", "--n", "1"])), 2);
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "shift"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
    assert_eq!(code(&run(&["verify", "disc-closed-forms"])), 0);
    assert_eq!(code(&run(&["verify", "shift", "--tol", "0"])), 3);
    assert_eq!(code(&run(&["verify", "no-such-suite"])), 2);
    // the N >= 64 tail threshold is not met by the closed forms themselves
    let o = run(&["verify", "tails"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL tails below 1e-2 for N >= 64"));
}

#[test]
fn estimates() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "disc.json", UNIT_DISC);
    let last = |o: &Output, key: &str| -> f64 {
        let s = stdout(o);
        let line = s.lines().find(|l| l.starts_with(key)).unwrap().to_string();
        line.split('=').nth(1).unwrap().trim().parse().unwrap()
    };
    let o = run(&["estimate", path(&f), "--w", "0", "--mode", "gamma"]);
    assert_eq!(code(&o), 0);
    assert!((last(&o, "gamma") - 1.0).abs() < 0.02);
    let o = run(&["estimate", path(&f), "--w", "0", "--mode", "lipschitz"]);
    assert_eq!(code(&o), 0);
    assert!((last(&o, "slope") - 2.0).abs() < 0.05);
    assert_eq!(code(&run(&["estimate", path(&f), "--w", "2", "--mode", "lipschitz"])), 4);
    let ring = write(
        &dir,
        "ring.json",
        r#"{"support_center":[0,0],"support_radius":1,"terms":[{"shape":{"kind":"annulus","center":[0,0],"r_inner":0.003,"r_outer":0.5},"coeff":1}]}"#,
    );
    assert_eq!(code(&run(&["estimate", path(&ring), "--w", "0", "--mode", "gamma"])), 4);
}
