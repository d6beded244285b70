use std::path::PathBuf;

use rmc_core::format::{parse_interpretation, serialize_nfa};
use rmc_core::procedures::check_deadlock_freedom;
use rmc_core::{corpus, parse_automaton, parse_nfa, parse_rts_bundle, Automaton, Basis, Error, Format, Report};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn parse_line(text: &str) -> usize {
    match parse_automaton(text) {
        Err(Error::Parse { line, .. }) => line,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn bundles_on_disk_match_embedded_corpus() {
    for name in corpus::SYSTEMS {
        let from_disk = parse_rts_bundle(&corpus_dir().join(name).join(format!("{name}.rts"))).unwrap();
        let embedded = corpus::load(name).unwrap();
        assert_eq!(from_disk.delta(), embedded.delta(), "{name}");
        assert_eq!(from_disk.initial(), embedded.initial(), "{name}");
        assert_eq!(from_disk.reach(), embedded.reach(), "{name}");
        assert_eq!(from_disk.preach(), embedded.preach(), "{name}");
    }
}

#[test]
fn every_corpus_file_round_trips() {
    for (path, text) in corpus::files() {
        if path.ends_with(".rts") {
            continue;
        }
        let a = parse_automaton(text).unwrap();
        assert_eq!(parse_automaton(&a.serialize()).unwrap(), a, "{path}");
    }
}

#[test]
fn comments_and_blank_lines() {
    let text = "; a*\n\ntype: nfa\nalphabet: a  ; one letter\nstates: q\ninitial: q\nfinal: q\nq a q\n";
    let n = parse_nfa(text).unwrap();
    assert!(n.accepts(&[0, 0]).unwrap());
    assert_eq!(parse_nfa(&serialize_nfa(&n)).unwrap(), n);
}

#[test]
fn parse_errors_carry_lines() {
    let head = "type: nfa\nalphabet: a\nstates: q\ninitial: q\nfinal: q\n";
    assert_eq!(parse_line(&format!("{head}q b q\n")), 6);
    assert_eq!(parse_line(&format!("{head}q a r\n")), 6);
    assert_eq!(parse_line(&format!("{head}q a q\nq a q\n")), 7);
    assert_eq!(parse_line("type: nfa\nstates: q\n"), 2);
    assert_eq!(parse_line("type: nfa\nalphabet: a\nstates: q\ninitial: q\nfinal: q\ncolour: red\n"), 6);
    assert_eq!(parse_line("type: dfa\n"), 1);
    assert!(matches!(parse_automaton("type: nfa\nalphabet: a #\n"), Err(Error::Parse { line: 2, .. }) | Err(Error::InvalidAlphabet(_))));
}

#[test]
fn interpretations_must_be_deterministic() {
    let ok = "type: transducer\nalphabet-top: x\nalphabet-bottom: a\ndeterministic: true\nstates: p q\ninitial: p\nfinal: q\np x/a q\n";
    assert!(parse_interpretation(ok).is_ok());
    let fork = ok.replace("p x/a q\n", "p x/a q\np x/a p\n");
    assert!(matches!(parse_interpretation(&fork), Err(Error::NotDeterministic(_))));
    let Automaton::Transducer(_) = parse_automaton(ok).unwrap() else { panic!("expected a transducer") };
}

#[test]
fn bundle_errors() {
    let dir = corpus_dir().join("toggle");
    assert!(matches!(parse_rts_bundle(&dir.join("missing.rts")), Err(Error::Io { .. })));
}

#[test]
fn reports_round_trip() {
    let rts = corpus::load("toggle").unwrap();
    let v = check_deadlock_freedom(&rts, Basis::Exact).unwrap();
    let r = Report::from_verdict("check df", &v, rts.alphabet());
    assert_eq!(r.exit_code(), 1);
    assert_eq!(Report::from_json(&r.emit(Format::Json)).unwrap(), r);
    let human = r.emit(Format::Human);
    assert!(human.contains("VERDICT: FAILS"));
    assert!(human.lines().any(|l| l.trim() == "1: b"));
}
