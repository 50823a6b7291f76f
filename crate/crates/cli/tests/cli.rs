use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const K4: &str = "p graph 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
const C5: &str = "p graph 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
const TRIANGLE: &str = "p graph 3 3\ne 1 2\ne 2 3\ne 3 1\n";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conndel")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad report ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn solve_answers_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let out = run(&["solve", path(&k4), "--k", "1", "--oracle-check"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["answer"], "yes");
    assert_eq!(r["subcommand"], "solve");
    assert_eq!(r["witness"].as_array().unwrap().len(), 1);
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);

    let c5 = write(&dir, "c5.txt", C5);
    let out = run(&["solve", path(&c5), "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["answer"], "no");
}

#[test]
fn verify_wbd_witnesses() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let matching = write(&dir, "m.txt", "e 1 2\ne 3 4\n");
    let out = run(&["verify", "wbd", path(&k4), path(&matching), "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));

    let star = write(&dir, "s.txt", "e 1 2\ne 1 3\n");
    let out = run(&["verify", "wbd", path(&k4), path(&star), "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let c5 = write(&dir, "c5.txt", C5);
    let one = write(&dir, "one.txt", "e 1 2\n");
    let out = run(&["verify", "wbd", path(&c5), path(&one), "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generated_pcpsc_instance_matches_source() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.txt", TRIANGLE);
    let gen = dir.path().join("tri.dig");
    let out = run(&["gen", "pcpsc", path(&tri), "--k", "1", "--out", path(&gen)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(fs::read_to_string(&gen).unwrap().contains("p digraph 21"));
    let out = run(&["oracle", "pcpsc", path(&gen), "--k", "1", "--max-vertices", "30", "--max-edges", "200"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["answer"], "yes");
}

#[test]
fn kernelize_writes_an_instance() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let kern = dir.path().join("kernel.txt");
    let out = run(&["kernelize", path(&k4), "--k", "1", "--out", path(&kern)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&kern).unwrap();
    let k: String = text.lines().next().unwrap().trim_start_matches("# k").trim().to_string();
    let out = run(&["solve", path(&kern), "--k", &k]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "p graph 2 1\ne 1 9\n");
    assert_eq!(run(&["solve", path(&bad), "--k", "1"]).status.code(), Some(2));
    let path3 = write(&dir, "p3.txt", "p graph 3 2\ne 1 2\ne 2 3\n");
    assert_eq!(run(&["solve", path(&path3), "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["solve"]).status.code(), Some(2));

    let k4 = write(&dir, "k4.txt", K4);
    let out = run(&["oracle", "wbd", path(&k4), "--k", "1", "--max-vertices", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("p graph 7 15\n");
    for (u, v) in [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 1), (1, 3), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7), (4, 7)] {
        text.push_str(&format!("e {u} {v} {}\n", (u * v) % 3 + 1));
    }
    let g = write(&dir, "g.txt", &text);
    let a = run(&["--no-timing", "solve", path(&g), "--k", "3", "--target", "0", "--jobs", "1"]);
    let b = run(&["--no-timing", "solve", path(&g), "--k", "3", "--target", "0", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(report(&a).get("wall_time_ms").is_none());
}
