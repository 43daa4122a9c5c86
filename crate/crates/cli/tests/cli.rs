use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ryser(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ryser"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn generated(dir: &Path, args: &[&str], name: &str) -> PathBuf {
    let out = ryser(args);
    assert!(out.status.success());
    write(dir, name, &stdout(&out))
}

fn f6(dir: &Path) -> PathBuf {
    generated(dir, &["gen", "paper", "--name", "f6"], "f6.txt")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f6 = f6(dir.path());
    let ok = ryser(&["verify", p(&f6)]);
    assert_eq!(ok.status.code(), Some(0));

    let disjoint = write(dir.path(), "d.txt", "parts 2 2\n1 1\n2 2\n");
    let bad = ryser(&["verify", p(&disjoint)]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("E1 and E2"));
    let v = json(&ryser(&["verify", p(&disjoint), "--json"]));
    assert_eq!(v["schema"], "ryser.verify/1");
    assert_eq!(v["intersecting"], false);
    assert_eq!(v["disjoint_pair"], serde_json::json!([1, 2]));

    let range = write(dir.path(), "r.txt", "parts 2 2\n1 1\n1 3\n");
    let err = ryser(&["verify", p(&range)]);
    assert_eq!(err.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&err.stderr).contains("line 3"));

    let missing = ryser(&["verify", "/nonexistent/file"]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(ryser(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn tau_of_paper_instances() {
    let dir = TempDir::new().unwrap();
    let f6 = f6(dir.path());
    let f7 = generated(dir.path(), &["gen", "paper", "--name", "f7"], "f7.txt");
    assert_eq!(stdout(&ryser(&["tau", p(&f6)])), "tau 5\n");
    assert_eq!(stdout(&ryser(&["tau", p(&f7), "--threads", "2"])), "tau 6\n");
    let empty = write(dir.path(), "e.txt", "parts 1 1\n");
    assert_eq!(stdout(&ryser(&["tau", p(&empty)])), "tau 0\n");

    let limited = ryser(&["tau", p(&f6), "--limit", "4"]);
    assert_eq!(limited.status.code(), Some(1));
    assert_eq!(stdout(&limited), "tau > 4\n");

    let v = json(&ryser(&["tau", p(&f6), "--certificate", "--json"]));
    assert_eq!(v["schema"], "ryser.tau/1");
    assert_eq!(v["tau"], 5);
    assert_eq!(v["certificate"]["tau"], 5);
    assert_eq!(v["certificate"]["exhausted"], 4);
    assert_eq!(v["certificate"]["cover"].as_array().unwrap().len(), 5);
}

#[test]
fn report_of_f6() {
    let dir = TempDir::new().unwrap();
    let f6 = f6(dir.path());
    let text = stdout(&ryser(&["report", p(&f6)]));
    assert!(text.contains("(1,6) {E10, E11, E12, E13}"));
    assert!(text.contains("|E1 ∩ E9| = 2"));
    assert!(text.contains("tau 5"));

    let v = json(&ryser(&["report", p(&f6), "--json"]));
    assert_eq!(v["schema"], "ryser.report/1");
    assert_eq!(v["tau"], 5);
    assert_eq!(v["nu"], 1);
    assert_eq!(v["ryser_ratio"], serde_json::json!({"numerator": 1, "denominator": 1}));
    assert_eq!(v["degree_table"]["max_degree"], 4);
    assert_eq!(v["linearity"]["pairs"].as_array().unwrap().len(), 2);
    assert!(v["eight_edge_lemma"].is_null());
}

#[test]
fn report_of_small_inputs() {
    let dir = TempDir::new().unwrap();
    let plane = generated(dir.path(), &["gen", "tpp", "--q", "2"], "q2.txt");
    let v = json(&ryser(&["report", p(&plane), "--json"]));
    assert_eq!(v["degree_table"]["max_degree"], 2);
    assert_eq!(v["linearity"]["pairs"], serde_json::json!([]));

    let single = write(dir.path(), "s.txt", "parts 1 1 1\n1 1 1\n");
    let out = ryser(&["report", p(&single)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(" 1    | (1,1) {E1}"));
}

#[test]
fn gen_pad_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let q3 = stdout(&ryser(&["gen", "tpp", "--q", "3"]));
    assert_eq!(q3.lines().filter(|l| !l.starts_with("parts")).count(), 9);
    assert_eq!(ryser(&["gen", "tpp", "--q", "6"]).status.code(), Some(2));

    let f6 = f6(dir.path());
    let padded = ryser(&["pad", p(&f6), "--to", "7"]);
    let padded = write(dir.path(), "p.txt", &stdout(&padded));
    assert!(fs::read_to_string(&padded).unwrap().starts_with("parts 6 5 5 5 5 5 13\n"));
    assert_eq!(stdout(&ryser(&["tau", p(&padded)])), "tau 5\n");
    assert_eq!(ryser(&["pad", p(&f6), "--to", "5"]).status.code(), Some(2));

    // Padding to the current rank reads and rewrites the instance unchanged.
    for (args, rank) in [
        (&["gen", "paper", "--name", "f7"][..], "7"),
        (&["gen", "tpp", "--q", "4"][..], "5"),
        (&["gen", "tpp", "--q", "9"][..], "10"),
    ] {
        let a = generated(dir.path(), args, "a.txt");
        let text = fs::read_to_string(&a).unwrap();
        assert_eq!(stdout(&ryser(&["pad", p(&a), "--to", rank])), text);
    }
}

#[test]
fn canon_ignores_relabeling() {
    let dir = TempDir::new().unwrap();
    let f6 = f6(dir.path());
    let text = fs::read_to_string(&f6).unwrap();
    // Swap parts 2 and 3, reverse the vertices of part 4 and the edge order.
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let mut rows: Vec<Vec<usize>> = lines
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    for row in &mut rows {
        row.swap(1, 2);
        row[3] = 6 - row[3];
    }
    rows.reverse();
    let mut other = header + "\n";
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        other += &(cells.join(" ") + "\n");
    }
    let g = write(dir.path(), "g.txt", &other);
    let a = ryser(&["canon", p(&f6)]);
    let b = ryser(&["canon", p(&g)]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let v = json(&ryser(&["canon", p(&g), "--json"]));
    assert_eq!(v["schema"], "ryser.canon/1");
    assert_eq!(v["rank"], 6);
    assert_eq!(v["edges"], 13);
    assert!(stdout(&a).contains(v["form"].as_str().unwrap()));
}

#[test]
fn search_output() {
    let out = ryser(&["search", "--r", "4", "--m", "6", "--tau", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# instance 1\nparts "));
    let summary: Value =
        serde_json::from_str(text.lines().last().unwrap().strip_prefix("# summary ").unwrap())
            .unwrap();
    assert_eq!(summary["schema"], "ryser.search/1");
    assert_eq!(summary["status"], "found");
    assert_eq!(summary["count"], 1);

    let none = json(&ryser(&["search", "--r", "4", "--m", "5", "--tau", "3", "--json"]));
    assert_eq!(none["status"], "exhausted");
    assert_eq!(none["count"], 0);
    assert_eq!(none["instances"], serde_json::json!([]));

    let bad = ryser(&["search", "--r", "3", "--m", "3", "--tau", "3", "--cap", "2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn search_is_deterministic_across_threads() {
    let run = |threads: &str| {
        let mut v = json(&ryser(&[
            "search", "--r", "4", "--m", "6", "--tau", "3", "--mode", "all", "--threads", threads,
            "--json",
        ]));
        v.as_object_mut().unwrap().remove("seconds");
        v
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn search_checkpoint_resume() {
    let dir = TempDir::new().unwrap();
    let state = dir.path().join("state.json");
    let args = |extra: &[&str]| {
        let mut a = vec![
            "search", "--r", "4", "--m", "6", "--tau", "3", "--mode", "all", "--json",
            "--checkpoint", state.to_str().unwrap(),
        ];
        a.extend_from_slice(extra);
        a.iter().map(|s| s.to_string()).collect::<Vec<_>>()
    };
    let call = |a: Vec<String>| {
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        json(&ryser(&refs))
    };
    let first = call(args(&["--max-subtrees", "0"]));
    assert_eq!(first["status"], "interrupted");
    let mut last = first;
    for _ in 0..64 {
        if last["status"] != "interrupted" {
            break;
        }
        last = call(args(&["--max-subtrees", "1"]));
    }
    let mut oneshot = json(&ryser(&[
        "search", "--r", "4", "--m", "6", "--tau", "3", "--mode", "all", "--json",
    ]));
    for v in [&mut last, &mut oneshot] {
        v.as_object_mut().unwrap().remove("seconds");
    }
    assert_eq!(last, oneshot);

    let wrong = ryser(&[
        "search", "--r", "5", "--m", "6", "--tau", "3", "--checkpoint", state.to_str().unwrap(),
    ]);
    assert_eq!(wrong.status.code(), Some(2));
}
