use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn itl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&v).expect("schema compiles")
}

fn without_timing(mut v: Value) -> Value {
    match &mut v {
        Value::Object(m) => {
            m.remove("wall_ms");
            for (_, x) in m.iter_mut() {
                *x = without_timing(x.take());
            }
        }
        Value::Array(a) => {
            for x in a.iter_mut() {
                *x = without_timing(x.take());
            }
        }
        _ => {}
    }
    v
}

const TWICE: &str = r#"{"kind":"ep","start":0,"prefix":[],"cycle":[2]}"#;
const EVENS: &str = r#"{"kind":"word","prefix":"","cycle":"10"}"#;

/// (arguments, expected exit code)
const GOLDEN: &[(&[&str], i32)] = &[
    (&["list"], 0),
    (&["list", "--format", "json"], 0),
    (
        &[
            "check-rel",
            "--rel",
            "forall_k",
            "--k",
            "0",
            "--lhs",
            TWICE,
            "--rhs",
            EVENS,
        ],
        0,
    ),
    (
        &["check-rel", "--rel", "nope", "--lhs", TWICE, "--rhs", EVENS],
        2,
    ),
    (
        &[
            "check-rel",
            "--rel",
            "forall_k",
            "--lhs",
            "{",
            "--rhs",
            EVENS,
        ],
        2,
    ),
    (
        &[
            "check-rel",
            "--rel",
            "forall_k",
            "--lhs",
            "@/no/such/file",
            "--rhs",
            EVENS,
        ],
        2,
    ),
    (&["profile", "--f", TWICE, "--x", EVENS, "--n", "4"], 0),
    (
        &[
            "verify",
            "--lemma",
            "vojtas_forall_k{k=2}",
            "--trials",
            "50",
        ],
        0,
    ),
    (
        &[
            "verify",
            "--lemma",
            "vojtas_forall_k{k=2}",
            "--trials",
            "200",
            "--mutant",
        ],
        0,
    ),
    // a single vacuous trial cannot expose the mutant
    (
        &[
            "verify",
            "--lemma",
            "vojtas_forall_k{k=2}",
            "--trials",
            "1",
            "--mutant",
        ],
        1,
    ),
    (&["verify", "--lemma", "no_such_lemma"], 2),
    (&["verify", "--lemma", "vojtas_forall_k{k=0}"], 2),
    (&["verify", "--trials", "5"], 2),
    (&["verify", "--all", "--trials", "0"], 2),
    (&["demo", "forall0"], 0),
    (&["demo", "col1_pair"], 0),
    (&["demo", "measure_sum_degenerate"], 0),
    (&["demo", "nope"], 2),
    (&["frobnicate"], 2),
    (&[], 2),
];

#[test]
fn golden_exit_codes() {
    for (args, want) in GOLDEN {
        let o = itl(args);
        assert_eq!(
            code(&o),
            *want,
            "itl {args:?}\nstderr: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        if *want == 2 {
            assert!(!o.stderr.is_empty(), "itl {args:?} printed no diagnostic");
        }
    }
}

#[test]
fn check_rel_prints_the_verdict() {
    let o = itl(&[
        "check-rel",
        "--rel",
        "forall_k",
        "--k",
        "0",
        "--lhs",
        TWICE,
        "--rhs",
        EVENS,
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"]["verdict"], "false");
    let o = itl(&[
        "check-rel",
        "--rel",
        "forall_k",
        "--k",
        "1",
        "--lhs",
        TWICE,
        "--rhs",
        EVENS,
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"]["verdict"], "true");
}

#[test]
fn file_inputs_work() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(&f, TWICE).unwrap();
    let arg = format!("@{}", f.display());
    let o = itl(&["profile", "--f", &arg, "--x", EVENS, "--n", "3"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["values"], serde_json::json!([1, 1, 1]));
}

#[test]
fn reports_match_schema_and_repeat() {
    let dir = tempfile::tempdir().unwrap();
    let single = schema("suite_report.schema.json");
    let all = schema("verify_all.schema.json");
    let mut runs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.json"));
        let o = itl(&[
            "verify",
            "--all",
            "--trials",
            "40",
            "--seed",
            "9",
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(all.is_valid(&v));
        for r in v["reports"].as_array().unwrap() {
            assert!(single.is_valid(r), "{r}");
        }
        assert!(!dir.path().join(format!("r{i}.json.tmp")).exists());
        runs.push(without_timing(v));
    }
    assert_eq!(runs[0], runs[1]);

    let path = dir.path().join("one.json");
    let o = itl(&[
        "verify",
        "--lemma",
        "M_scaling_forall",
        "--trials",
        "30",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(single.is_valid(&v));
}

#[test]
fn csv_reports_have_one_row_per_connection() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o = itl(&[
        "verify",
        "--all",
        "--trials",
        "20",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "lemma,trials,pass,evidence,vacuous,fail,inconclusive,seed,wall_ms"
    );
    let listed: Value = serde_json::from_slice(&itl(&["list", "--format", "json"]).stdout).unwrap();
    assert_eq!(
        lines.count(),
        listed["connections"].as_array().unwrap().len()
    );
}

#[test]
fn thread_cap_does_not_change_results() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_itl"))
            .env("ITL_THREADS", threads)
            .args([
                "verify",
                "--lemma",
                "Rk_to_colk_forall",
                "--trials",
                "100",
                "--format",
                "json",
            ])
            .output()
            .unwrap();
        without_timing(serde_json::from_slice(&o.stdout).unwrap())
    };
    assert_eq!(run("1"), run("4"));
}
