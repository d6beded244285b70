use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn rmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmc")).args(args).output().expect("rmc runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = rmc(&all);
    let v = serde_json::from_str(&stdout(&out)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)));
    (code(&out), v)
}

fn corpus(path: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(path).to_string_lossy().into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verdict_exit_codes() {
    let holds = rmc(&["check", "as-gf", "--rts", "herman-lp", "--goal", "one-token", "--length", "7"]);
    assert_eq!(code(&holds), 0, "{}", stdout(&holds));
    assert!(stdout(&holds).contains("VERDICT: HOLDS"));

    let fails = rmc(&["check", "as-gf", "--rts", "herman-lp", "--goal", "one-token"]);
    assert_eq!(code(&fails), 1);
    assert!(stdout(&fails).contains("< • >"));

    assert_eq!(code(&rmc(&["check", "ef", "--rts", "herman-lp", "--goal", "empty"])), 1);

    let unknown = rmc(&["check", "as-f", "--rts", "herman-lp", "--goal", "one-token", "--max-length", "8"]);
    assert_eq!(code(&unknown), 2);
    assert!(stdout(&unknown).contains("UNKNOWN"));
}

#[test]
fn usage_and_input_errors_exit_3() {
    assert_eq!(code(&rmc(&["check", "nonsense"])), 3);
    assert_eq!(code(&rmc(&["check", "ef", "--rts", "no-such-system"])), 3);
    assert_eq!(code(&rmc(&["check", "as-gf", "--rts", "succ-walk", "--goal", "all"])), 3);
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.nfa", "type: nfa\nalphabet: a\nstates: q\ninitial: r\n");
    let out = rmc(&["algebra", "complement", "--a", &bad]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    assert_eq!(code(&rmc(&["--help"])), 0);
}

#[test]
fn json_reports() {
    let (c, v) = json(&["check", "deadlock-free", "--rts", corpus("toggle/toggle.rts").as_str()]);
    assert_eq!(c, 1);
    assert_eq!(v["command"], "check deadlock-free");
    assert_eq!(v["outcome"], "fails");
    assert_eq!(v["witness"]["configurations"].as_array().unwrap().last().unwrap(), "b");
    for key in ["bound_used", "checks", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }

    let (c, v) = json(&["check", "egf", "--rts", "succ-walk", "--goal", "all"]);
    assert_eq!(c, 0);
    assert_eq!(v["witness"]["kind"], "clique-prefix");

    let (c, v) = json(&["check", "af", "--rts", "herman-lp", "--goal", "one-token", "--max-length", "5"]);
    assert_eq!(c, 1);
    assert_eq!(v["witness"]["kind"], "lasso");
    assert!(v["witness"]["loop_start"].is_u64());
}

#[test]
fn validate_and_abstract() {
    for name in ["herman-lp", "herman-grow", "succ-walk", "toggle"] {
        let (c, v) = json(&["validate", "--rts", name]);
        assert_eq!(c, 0, "{name}");
        assert!(v["checks"].as_array().unwrap().iter().all(|k| k["passed"] == true));
    }
    let (c, _) = json(&["abstract", "validate", "--rts", "succ-walk"]);
    assert_eq!(c, 0);
    assert_eq!(code(&rmc(&["abstract", "sure-term", "--rts", "toggle"])), 0);
    assert_eq!(code(&rmc(&["abstract", "liveness", "--rts", "succ-walk", "--goal", "all"])), 0);
    assert_eq!(code(&rmc(&["abstract", "safety", "--rts", "toggle", "--goal", "b"])), 1);
    let (c, v) = json(&["abstract", "as-liveness", "--rts", "toggle", "--goal", "a", "--pre-of-goal", "a"]);
    assert_eq!(c, 1);
    assert!(v["note"].as_str().unwrap().contains("inconclusive"));
}

#[test]
fn oracle_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("slice.txt");
    let (c, v) = json(&[
        "oracle",
        "--rts",
        "herman-lp",
        "--length",
        "5",
        "--property",
        "asgf",
        "--goal",
        "one-token",
        "--dump-slice",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["bound_used"], 5);
    let text = std::fs::read_to_string(&dump).unwrap();
    assert!(text.lines().any(|l| l == "< • ◦ ◦ > -> < ◦ • ◦ >"));
    assert!(text.contains("non-trivial: "));

    let (c, _) = json(&["oracle", "--rts", "herman-lp", "--length", "5", "--property", "af", "--goal", "one-token"]);
    assert_eq!(c, 1);
    assert_eq!(code(&rmc(&["oracle", "--rts", "herman-lp", "--length", "5", "--property", "xx"])), 3);
}

#[test]
fn simulate_is_seeded() {
    let args = ["simulate", "--rts", "herman-lp", "--from", "< • • • >", "--goal", "one-token", "--seed", "7", "--runs", "200"];
    let (c, v) = json(&args);
    assert_eq!(c, 0);
    assert_eq!(v["data"]["goal_hit_frequency"], 1.0);
    let (_, again) = json(&args);
    assert_eq!(again["data"], v["data"]);

    let (_, v) = json(&["simulate", "--rts", "toggle", "--from", "a"]);
    assert_eq!(v["data"]["termination_frequency"], 1.0);
}

#[test]
fn algebra_on_files() {
    let dir = tempfile::tempdir().unwrap();
    let a_star = write(dir.path(), "a.nfa", "type: nfa\nalphabet: a b\nstates: q\ninitial: q\nfinal: q\nq a q\n");
    let (c, v) = json(&["algebra", "complement", "--a", &a_star]);
    assert_eq!(c, 0);
    let comp = write(dir.path(), "c.nfa", v["output"].as_str().unwrap());
    let (_, v) = json(&["algebra", "intersect", "--a", &a_star, "--b", &comp]);
    let empty = v["output"].as_str().unwrap();
    assert!(!empty.lines().any(|l| l.starts_with("final:") && l.len() > "final:".len()));

    let succ = corpus("succ-walk/delta.t");
    let (c, v) = json(&["algebra", "compose", "--a", &succ, "--b", &succ]);
    assert_eq!(c, 0);
    assert!(v["output"].as_str().unwrap().starts_with("type: transducer"));
    let (_, v) = json(&["algebra", "project", "--a", &succ, "--track", "bottom"]);
    assert!(v["output"].as_str().unwrap().starts_with("type: nfa"));
    let (c, _) = json(&["algebra", "image", "--a", &succ, "--b", &corpus("succ-walk/init.nfa"), "--direction", "post"]);
    assert_eq!(c, 0);
    assert_eq!(code(&rmc(&["algebra", "inverse", "--a", &a_star])), 3);

    // (a+b)* a (a+b)^4 over a cap of 8 subsets
    let mut t = String::from("type: nfa\nalphabet: a b\nstates: q0 q1 q2 q3 q4 q5\ninitial: q0\nfinal: q5\nq0 a q0\nq0 b q0\nq0 a q1\n");
    for i in 1..5 {
        t.push_str(&format!("q{i} a q{}\nq{i} b q{}\n", i + 1, i + 1));
    }
    let big = write(dir.path(), "big.nfa", &t);
    let out = Command::new(env!("CARGO_BIN_EXE_rmc"))
        .args(["algebra", "complement", "--a", &big])
        .env("RMC_STATE_CAP", "8")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn constraints() {
    let dir = tempfile::tempdir().unwrap();
    let interp = write(
        dir.path(),
        "v.t",
        "type: transducer\nalphabet-top: x\nalphabet-bottom: a b\ndeterministic: true\nstates: p q\ninitial: p\nfinal: q\np x/a q\n",
    );
    let base = ["constraint", "--interp", &interp, "--constraint", "x"];
    let run = |q: &str, extra: &[&str]| {
        let mut args = vec![base[0], q];
        args.extend_from_slice(&base[1..]);
        args.extend_from_slice(extra);
        code(&rmc(&args))
    };
    assert_eq!(run("separates", &["--from", "a", "--to", "b"]), 0);
    assert_eq!(run("separates", &["--from", "b", "--to", "a"]), 1);
    assert_eq!(run("inductive", &["--rts", "toggle"]), 1);
    assert_eq!(run("certify", &["--rts", "toggle", "--from", "a", "--to", "b"]), 1);
    assert_eq!(run("inductive", &[]), 3);
}
