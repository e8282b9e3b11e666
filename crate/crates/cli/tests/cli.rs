use std::io::Write;
use std::process::{Command, Output, Stdio};

use mucalc_core::formula::{parse_with, ParseOptions};
use mucalc_core::game::parse_game;
use mucalc_core::kripke::parse_model;

fn mucalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mucalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn mucalc_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mucalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = mucalc(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["fragment", "mu z. x \\/ <a> z", "--vars", "x"]).trim(), "C(x): yes, C0(x): no");
    assert_eq!(ok(&["fragment", "<a> x \\/ x", "--vars", "x"]).trim(), "C(x): yes, C0(x): yes");
    assert_eq!(ok(&["clord", "--model", "chain:3", "p \\/ <a> x", "--var", "x"]).trim(), "3");
    assert_eq!(ok(&["transform", "--op", "cnf", "[a] x", "--var", "x"]).trim(), "[a] false");
}

#[test]
fn exit_codes() {
    assert_eq!(mucalc(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(mucalc(&["fragment", "x"]).status.code(), Some(64));
    assert_eq!(mucalc(&["clord", "--model", "chain:x", "x"]).status.code(), Some(64));
    assert_eq!(mucalc(&["parse", "mu z. ~z"]).status.code(), Some(65));
    assert_eq!(mucalc(&["parse", "(x"]).status.code(), Some(65));
    assert_eq!(mucalc(&["eval", "--model", "/no/such/file", "x"]).status.code(), Some(65));
    assert_eq!(mucalc(&["eval", "--model", "chain:2", "<b> p"]).status.code(), Some(65));
    assert_eq!(mucalc(&["parse", "x#b"]).status.code(), Some(65));
    assert!(mucalc(&["--allow-reserved", "parse", "x#b"]).status.success());
    assert!(mucalc(&["--help"]).status.success());
}

#[test]
fn continuity_exit_codes() {
    assert_eq!(mucalc(&["check-continuity", "<a> x"]).status.code(), Some(0));
    assert_eq!(mucalc(&["check-continuity", "nu z. x /\\ <a> z"]).status.code(), Some(0));
    let o = mucalc(&["check-continuity", "mu z. x \\/ [a] z", "--var", "x"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("NotContinuous"));
    // The witness is printed in the model format.
    let model_text = &text[text.find("states:").unwrap()..];
    assert!(parse_model(model_text).unwrap().len() <= 2);

    // Outside the grammar but equivalent to the normal form.
    let o = mucalc(&["check-continuity", "[a] false \\/ x", "--max-states", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn outputs_read_back() {
    let boxed = ok(&["transform", "--op", "boxing", "x \\/ mu z. x \\/ z \\/ [a] (x /\\ z)"]);
    parse_with(&boxed, ParseOptions::internal()).unwrap();
    let again = mucalc_stdin(&["--allow-reserved", "print", "@-"], &boxed);
    assert_eq!(stdout(&again), boxed);

    for op in ["lift", "flatten", "cnf", "translate", "thomason", "sum", "totalize", "master-box"] {
        let phi = if op == "thomason" { "mu z. x \\/ [h] <v> z" } else { "mu z. x \\/ [a] z" };
        let out = ok(&["transform", "--op", op, phi]);
        parse_with(&out, ParseOptions::internal()).unwrap_or_else(|e| panic!("{op}: {e}"));
    }

    for spec in [&["chain", "4"][..], &["ordchain", "3"], &["sum", "2", "3"]] {
        let mut args = vec!["gen-model"];
        args.extend_from_slice(spec);
        let text = ok(&args);
        let m = parse_model(&text).unwrap();
        assert_eq!(m.to_string(), text);
    }

    let dump = ok(&["game", "--model", "chain:2", "nu z. p /\\ [a] z", "--dump"]);
    let g = parse_game(&dump).unwrap();
    assert_eq!(g.to_string(), dump);
}

#[test]
fn model_files_and_stdin() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "# two states\nstates: s t\nrel a: s->t, t->t\nval x: t\n").unwrap();
    let path = file.path().to_str().unwrap();
    assert_eq!(ok(&["eval", "--model", path, "mu z. x \\/ [a] z"]).trim(), "{s, t}");
    assert_eq!(ok(&["eval", "--model", path, "[a] false", "--state", "s"]).trim(), "false");
    let o = mucalc_stdin(&["eval", "--model", "-", "<a> x"], "states: u v\nrel a: u->v\nval x: v\n");
    assert_eq!(stdout(&o).trim(), "{u}");

    let thomason = ok(&["gen-model", "thomason", "ordchain:2"]);
    assert!(parse_model(&thomason).unwrap().len() == 5);
}

#[test]
fn game_agrees_with_eval() {
    let phi = "nu y. mu z. (p /\\ <a> y) \\/ <a> z";
    let truth = ok(&["eval", "--model", "sum:2,2", "--json", phi]);
    let truth: serde_json::Value = serde_json::from_str(&truth).unwrap();
    let holding: Vec<&str> = truth["states"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let text = ok(&["game", "--model", "sum:2,2", phi]);
    for line in text.lines() {
        let (state, winner) = line.split_once(": ").unwrap();
        assert_eq!(winner == "Eva", holding.contains(&state), "{line}");
    }
}

#[test]
fn classification_and_approximants() {
    let text = ok(&["classify", "(mu z1. y0 /\\ (nu z0. z0 /\\ [a] z1)) \\/ (<a> y0 /\\ y1)"]);
    let classes: Vec<&str> = text.lines().map(|l| l.rsplit(' ').next().unwrap()).collect();
    assert_eq!(classes, ["very-bad", "not-bad", "not-bad"]);

    let text = ok(&["approx", "--model", "ordchain:3", "(nu z. <v> x /\\ <h> z) \\/ [v] false"]);
    assert!(text.starts_with("0: {}\n1: {0}\n2: {0, 1}\n3: {0, 1, 2}\n"));
    assert!(text.ends_with("closure ordinal: 3\n"));
}

#[test]
fn bisimulation_classes() {
    let mut a = tempfile::NamedTempFile::new().unwrap();
    write!(a, "states: s\nrel a: s->s\n").unwrap();
    let mut b = tempfile::NamedTempFile::new().unwrap();
    write!(b, "states: u v\nrel a: u->v, v->u\n").unwrap();
    let (pa, pb) = (a.path().to_str().unwrap(), b.path().to_str().unwrap());
    assert_eq!(ok(&["bisim", pb]).trim(), "u v");
    assert_eq!(ok(&["bisim", pa, pb, "--pair", "s", "v"]).trim(), "bisimilar");
    assert_eq!(ok(&["bisim", "chain:2", "--pair", "s0", "s1"]).trim(), "not bisimilar");
}

#[test]
fn json_mode() {
    let text = ok(&["--json", "fragment", "[a] x", "--vars", "x"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["in_c"], false);
    let text = ok(&["--json", "check-continuity", "<a> x"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "InC0");
}

#[test]
fn selftest_subset() {
    let text = ok(&["selftest", "--only", "2,3,9"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
    assert_eq!(mucalc(&["selftest", "--only", "13"]).status.code(), Some(64));
}
