use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shortcycles"))
        .args(args)
        .output()
        .expect("binary runs")
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("shortcycles-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

const TRIANGLE: &str = "digraph 3 3\n0 1\n1 2\n2 0\n";
const BITRIANGLE: &str = "digraph 3 6\n0 1\n1 0\n1 2\n2 1\n0 2\n2 0\n";
const DAG: &str = "digraph 3 2\n0 1\n1 2\n";

#[test]
fn girth_triangle_and_dag() {
    let s = Scratch::new("girth");
    let out = bin(&["girth", &s.file("t.txt", TRIANGLE)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["girth"], 3);
    assert_eq!(v["certificate"]["kind"], "exact-girth");

    let out = bin(&["girth", &s.file("d.txt", DAG), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["girth"], "inf");
}

#[test]
fn malformed_input_is_a_usage_error() {
    let s = Scratch::new("bad");
    let out = bin(&["girth", &s.file("b.txt", "digrph 3 0\n")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    let out = bin(&["girth", "/nonexistent/graph.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn peel_examples() {
    let s = Scratch::new("peel");
    let v = json(&bin(&["peel", &s.file("bt.txt", BITRIANGLE)]));
    assert_eq!(v["certificate"]["vertices"].as_array().unwrap().len(), 2);
    assert_eq!(v["certificate"]["bound"], serde_json::json!({"num": 2, "den": 1}));
    assert_eq!(v["certificate"]["kind"], "two-phi");

    let v = json(&bin(&["peel", &s.file("t.txt", TRIANGLE)]));
    assert_eq!(v["trace"]["steps"].as_array().unwrap().len(), 0);
    assert_eq!(v["certificate"]["vertices"], serde_json::json!([0, 1, 2]));

    let out = bin(&["peel", &s.file("d.txt", DAG)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertex 2"));
}

#[test]
fn rainbow_examples() {
    let s = Scratch::new("rainbow");
    let four = s.file("r4.txt", "rainbow 4 4\n0-1\n0-2,1-2\n0-3,1-3\n2-3\n");
    let v = json(&bin(&["rainbow", &four]));
    assert_eq!(v["length"], 3);
    assert_eq!(v["certificate"]["bound"], serde_json::json!({"num": 3, "den": 1}));

    let shared = s.file("rs.txt", "rainbow 3 3\n0-1\n0-1,0-2\n1-2\n");
    assert_eq!(json(&bin(&["rainbow", &shared]))["length"], 2);

    let lone = s.file("r1.txt", "rainbow 2 1\n0-1\n");
    assert_eq!(bin(&["rainbow", &lone]).status.code(), Some(2));
    let out = bin(&["rainbow", "--oracle", &lone]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["rg"], "inf");

    let v = json(&bin(&["rainbow", "--trace", &four]));
    assert!(!v["levels"].as_array().unwrap().is_empty());
}

#[test]
fn two_cycles_bidirected_triangle() {
    let s = Scratch::new("two");
    let v = json(&bin(&["two-cycles", &s.file("bt.txt", BITRIANGLE)]));
    assert_eq!(v["intersection_size"], 1);
    assert_eq!(v["intersection_bound"], 1);
    assert_eq!(v["short_cycle"]["bound"], serde_json::json!({"num": 2, "den": 1}));
    let out = bin(&["two-cycles", &s.file("d.txt", DAG)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = bin(&["verify", "--n", "4", "--generator", "labeled", "--checks", "two-phi,two-psi-strict"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["violation_count"], 0);
    assert_eq!(v["instances"], 4096);

    let out = bin(&["verify", "--n", "9", "--generator", "labeled"]);
    assert_eq!(out.status.code(), Some(3));

    let out = bin(&["verify", "--n", "3", "--generator", "labeled", "--checks", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = bin(&["verify", "--n", "3", "--generator", "pairings", "--checks", "two-phi"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_outmaps_small() {
    let out = bin(&["verify", "--n", "2..4", "--generator", "outmaps:1:2", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    // 1 + 3^3 + 6^4 digraphs.
    assert_eq!(v["instances"], 1 + 27 + 1296);
}

#[test]
fn search_ratio_is_seeded() {
    let a = bin(&["search-ratio", "--n", "5", "--budget", "200", "--seed", "4"]);
    let b = bin(&["search-ratio", "--n", "5", "--budget", "200", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["evaluated"], 200);
}

#[test]
fn unknown_format_is_rejected() {
    let out = bin(&["girth", "x.txt", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2));
}
