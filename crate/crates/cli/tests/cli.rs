use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel).to_string_lossy().into_owned()
}

fn lprl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lprl")).args(args).output().expect("spawn lprl")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let o = lprl(&all);
    (code(&o), serde_json::from_str(&stdout(&o)).expect("one JSON object"))
}

#[test]
fn unsat_sentence_exits_one() {
    let o = lprl(&["sat", &corpus("sat/unsat_chain.lprl")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("UNSAT"));
}

#[test]
fn witness_round_trips_through_eval() {
    for file in ["sat/gni.lprl", "sat/con_live.lprl", "sat/finite_projection.lprl"] {
        let (c, v) = machine(&["sat", &corpus(file)]);
        assert_eq!(c, 0, "{file}");
        assert_eq!(v["verdict"], "SAT");
        let mut args = vec!["eval".to_string(), corpus(file)];
        for (var, lit) in v["witness"].as_object().unwrap() {
            args.push(format!("{var}={}", lit.as_str().unwrap()));
        }
        let o = lprl(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(code(&o), 0, "{file}: {}", stdout(&o));
        assert_eq!(stdout(&o).trim(), "TRUE");
    }
}

#[test]
fn eval_false_exits_one() {
    let o = lprl(&["eval", &corpus("sat/od.lprl"), "{};{l}", "{};{}"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).trim(), "FALSE");
}

#[test]
fn mc_with_wrong_kripke_count_is_a_usage_error() {
    let o = lprl(&["mc", &corpus("mc/od.lprl"), &corpus("mc/leaky.json")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("arity mismatch: expected 2, got 1"));
}

#[test]
fn mc_verdicts_and_exit_codes() {
    let det = corpus("mc/low_deterministic.json");
    let leaky = corpus("mc/leaky.json");
    let (c, v) = machine(&["mc", &corpus("mc/od.lprl"), &det, &det]);
    assert_eq!((c, v["verdict"].as_str()), (0, Some("HOLDS")));
    let (c, v) = machine(&["mc", &corpus("mc/od.lprl"), &leaky, &leaky]);
    assert_eq!((c, v["verdict"].as_str()), (1, Some("FAILS")));
}

#[test]
fn bind_overrides_positional_order() {
    let a = format!("{}#A", corpus("mc/network.json"));
    let b = format!("{}#B", corpus("mc/network.json"));
    let sentence = corpus("mc/con_b_to_a.lprl");
    let bound = format!("x={a}");
    assert_eq!(code(&lprl(&["mc", &sentence, "--bind", &bound, &b])), 0);
    assert_eq!(code(&lprl(&["mc", &sentence, &b, &a])), 0);
    assert_eq!(code(&lprl(&["mc", &sentence, &a, &b])), 1);
}

#[test]
fn cap_exceeded_exits_three() {
    let leaky = corpus("mc/leaky.json");
    let (c, v) = machine(&["mc", "--cap", "3", &corpus("mc/od.lprl"), &leaky, &leaky]);
    assert_eq!(c, 3);
    assert!(v["error"].as_str().unwrap().contains("cap"));
}

#[test]
fn parse_errors_and_cyclic_sentences_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lprl");
    std::fs::write(&bad, "props: p;\nforall x. [G p](x) &").unwrap();
    let o = lprl(&["sat", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
    let o = lprl(&["sat", &corpus("cyclic/duplicate_pair.lprl")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("linked by 2 constraints"));
    assert_eq!(code(&lprl(&["frobnicate"])), 2);
}

#[test]
fn dump_automata_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("automata");
    let o = lprl(&["sat", "--dump-automata", out.to_str().unwrap(), &corpus("sat/ni.lprl")]);
    assert_eq!(code(&o), 0);
    let sentence = std::fs::read_to_string(out.join("sentence.hba.txt")).unwrap();
    assert!(sentence.starts_with("# width: 2"));
    assert!(sentence.contains(" --> "));
    assert!(out.join("clause0.hba.txt").exists());
}

#[test]
fn machine_output_is_stable() {
    let det = corpus("mc/low_deterministic.json");
    let args = ["mc", &corpus("mc/ni.lprl"), &det, &det];
    assert_eq!(machine(&args).1, machine(&args).1);
    let args = ["sat", &corpus("sat/mixed.lprl")];
    assert_eq!(machine(&args).1, machine(&args).1);
}
