use std::process::Command;

use serde_json::Value;
use tamari_core::{SignedWord, Tree};

fn tamari(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tamari")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = tamari(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out.trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

const GOLDEN: &[(&[&str], &str)] = &[
    (&["order", "join", "(x(xx))", "((xx)x)"], "((xx)x)"),
    (&["order", "meet", "(x(xx))", "((xx)x)", "--method", "covering"], "(x(xx))"),
    (&["order", "leq", "(x(x(xx)))", "(((xx)x)x)"], "true"),
    (&["word", "act", "-t", "(x(xx))", "-w", "a[]"], "((xx)x)"),
    (&["lattice", "enum", "3", "--count"], "5"),
    (&["lattice", "enum", "2"], "(x(xx))\n((xx)x)"),
    (&["tree", "polish", "((xx)x)"], "xxoxo"),
    (&["tree", "from-polish", "xxxoo"], "(x(xx))"),
    (&["tree", "zigzag", "e"], "x"),
    (&["tree", "zigzag", "01"], "((xx)x)"),
    (&["tree", "comb", "3", "--side", "left"], "(((xx)x)x)"),
    (&["word", "reverse", "a[10,3]' a[,4]"], "a[,7] a[0,3]'\nnumerator: a[,7]\ndenominator: a[0,3]\nsteps: 1"),
    (&["word", "nf", "a[11] a[]"], "a[] a[1]"),
    (&["word", "check-normal", "a[11] a[]"], "false"),
    (&["word", "check-normal", "a[] a[]"], "true"),
    (&["word", "lambda", "a[] a[] a[]"], "6"),
    (&["word", "to-x", "01100"], "x0' x1' x2' x2' x2' x3' x2 x2 x2 x2 x1 x0"),
    (&["word", "from-x", "x1 x0'"], "a[1] a[]'"),
    (&["word", "lower-bound", "a[1] a[11]' a[] a[11]'"], "4"),
    (&["elem", "eq", "a[] a[]", "a[1] a[] a[0]"], "true"),
    (&["elem", "pair", "a[]"], "(x(xx)) -> ((xx)x)"),
    (&["elem", "plmap", "a[]", "--at", "1/2"], "1/2^2"),
    (&["dist", "(x(x(xx)))", "(((xx)x)x)"], "2"),
    (&["dist", "(x(x(xx)))", "(((xx)x)x)", "--plus"], "2"),
    (&["diameter", "5"], "5"),
];

#[test]
fn golden_outputs() {
    for (args, want) in GOLDEN {
        assert_eq!(ok(args), *want, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["order", "join", "(xx)", "((xx)x)"], 1),
        (&["word", "act", "-t", "(xx)", "-w", "a[]"], 1),
        (&["dist", "(((xx)x)x)", "(x(x(xx)))", "--plus"], 1),
        (&["word", "act", "-t", "(xx", "-w", "a[]"], 2),
        (&["word", "nf", "a[2]"], 2),
        (&["tree", "from-polish", "xoxx"], 2),
        (&["frobnicate"], 2),
        (&["dist"], 2),
        (&["diameter", "11"], 3),
        (&["lattice", "enum", "99"], 3),
    ];
    for (args, code) in cases {
        let (got, out, err) = tamari(args);
        assert_eq!(got, *code, "{args:?}: {err}");
        assert!(out.is_empty());
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error"), "{err}");
    }
}

#[test]
fn json_values_reparse() {
    let t: Tree = json(&["order", "join", "((xx)(xx))", "(x((xx)x))"]).as_str().unwrap().parse().unwrap();
    assert_eq!(t.size(), 3);
    let list = json(&["lattice", "enum", "4"]);
    let trees: Vec<Tree> = list.as_array().unwrap().iter().map(|v| v.as_str().unwrap().parse().unwrap()).collect();
    assert_eq!(trees.len(), 14);
    let rev = json(&["word", "reverse", "a[]' a[1] a[1]' a[11]"]);
    for key in ["word", "numerator", "denominator"] {
        let w: SignedWord = rev[key].as_str().unwrap().parse().unwrap();
        assert_eq!(w.to_string(), rev[key].as_str().unwrap());
    }
    let pair = json(&["elem", "mul", "a[]", "a[1]"]);
    let neg: Tree = pair["neg"].as_str().unwrap().parse().unwrap();
    let pos: Tree = pair["pos"].as_str().unwrap().parse().unwrap();
    let back = json(&["elem", "from-pair", &neg.to_string(), &pos.to_string()]);
    assert_eq!(back, pair);
    let up = json(&["exp", "upfamily", "2"]);
    assert_eq!(up["dist_plus"], 6);
    assert_eq!(up["witness_valid"], true);
}

#[test]
fn output_is_deterministic_and_copied_to_file() {
    let dir = std::env::temp_dir().join(format!("tamari-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hasse.dot");
    let args = ["lattice", "enum", "3", "--dot", "--out", path.to_str().unwrap()];
    let first = ok(&args);
    assert_eq!(ok(&args), first);
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim_end(), first);
    assert!(first.starts_with("digraph"));
    assert_eq!(first.matches("->").count(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = tamari(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}
