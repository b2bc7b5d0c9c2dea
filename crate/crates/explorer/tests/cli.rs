use std::process::{Command, Output};

use lambda_pairs::combinatorics::Partition;
use lambda_pairs::quiver::{QMatrix, QuiverRep};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambda-explorer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn pairs_text_marks_box_pairs() {
    let o = run(&["pairs", "3,1,1", "--type", "A", "--box", "3x3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for p in ["(-7/2, -5/2)", "(-3/2, 3/2)", "(-1/2, 1/2)", "(5/2, 7/2)"] {
        assert!(text.contains(p), "{text}");
    }
    assert_eq!(
        text.lines().filter(|l| l.ends_with("box")).count(),
        2,
        "{text}"
    );
}

#[test]
fn move_accepts_negative_endpoints() {
    let v = json(&["move", "3,1,1", "-3/2", "3/2"]);
    assert_eq!(v["payload"]["result"], "3,3,2");
    assert_eq!(v["provenance"]["tool"], "lambda-explorer");
    assert_eq!(v["provenance"]["schema"], 1);
}

#[test]
fn diamonds() {
    let v = json(&["diamond", "0", "1", "2,1"]);
    assert!(v.to_string().contains("\"1,1\""), "{v}");
    let o = run(&["diamond", "0", "2,2", "3,2,1", "--type", "D"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no completion"));
}

#[test]
fn posets_in_every_format() {
    let v = json(&[
        "poset", "orbits", "--box", "A2x2", "--lambda", "0", "--fiber", "dual",
    ]);
    assert_eq!(v["payload"]["nodes"].as_array().map(Vec::len), Some(7));
    let o = run(&["poset", "cells", "--box", "D3", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(
        dot.starts_with("// lambda-explorer") && dot.contains("digraph"),
        "{dot}"
    );
    assert_eq!(dot.matches(" -> ").count(), 3);
    let o = run(&["poset", "cells", "--box", "A2x2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_round_trips_through_out_file() {
    let dir = std::env::temp_dir().join(format!("lambda-explorer-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cells.json");
    let o = run(&[
        "poset",
        "cells",
        "--box",
        "A1x2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        serde_json::from_str::<Value>(&serde_json::to_string(&v).unwrap()).unwrap(),
        v
    );
    assert_eq!(v["provenance"]["box"], "A1x2");
    assert_eq!(v["payload"]["nodes"].as_array().map(Vec::len), Some(3));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_suites_report_pass() {
    for (suite, shape) in [
        ("parity", "D4"),
        ("ff-oracle", "A2x2"),
        ("codim2-class", "A2x3"),
    ] {
        let o = run(&["check", suite, "--box", shape]);
        assert_eq!(o.status.code(), Some(0), "{suite} {shape}");
        assert!(stdout(&o).starts_with("PASS"), "{}", stdout(&o));
    }
    let v = json(&["check", "pairs", "--box", "A2x2"]);
    assert_eq!(v["payload"]["failures"].as_array().map(Vec::len), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["pairs", "3,x"][..],
        &["check", "nosuch", "--box", "A2x2"],
        &["poset", "cells", "--box", "A10x10"],
        &["pairs", "3,1,1", "--format", "dot"],
        &["oracle", "--box", "A2x2", "--lambda", "0", "--field", "5"],
        &["check", "ff-oracle", "--box", "D3"],
    ] {
        let o = run(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(
            String::from_utf8_lossy(&o.stderr).contains("error"),
            "{args:?}"
        );
    }
}

#[test]
fn failing_check_exits_one() {
    let dir = std::env::temp_dir().join(format!("lambda-explorer-rep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rep.json");
    let part = |s: &str| s.parse::<Partition>().unwrap();
    let mut rep = QuiverRep::zero("D3".parse().unwrap());
    for l in ["0", "2,2", "3,2,1"] {
        rep.dims.insert(part(l), 1);
    }
    let one = QMatrix::from_ints(1, 1, &[1]).unwrap();
    rep.p.insert((part("0"), part("2,2")), one.clone());
    rep.p.insert((part("2,2"), part("3,2,1")), one);
    let rep = serde_json::to_string(&rep).unwrap();
    std::fs::write(&path, rep).unwrap();
    let o = run(&["algebra", "check-rep", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(
        o.status.code(),
        Some(1),
        "{}{}",
        stdout(&o),
        String::from_utf8_lossy(&o.stderr)
    );
}
