mod common;

use common::{all_words, alphabet, random_nfa, random_transducer};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmc_core::{
    convolve, corpus, includes, parse_nfa, parse_transducer, Alphabet, Direction, Error, Nfa, NfaBuilder,
    PairSymbol, Track, Transducer, Word,
};

const A: usize = 0;
const B: usize = 1;

fn ab() -> Alphabet {
    alphabet(2)
}

fn build(al: &Alphabet, n: usize, initial: &[usize], finals: &[usize], edges: &[(usize, usize, usize)]) -> Nfa {
    let mut b = NfaBuilder::with_states(al.clone(), n);
    for &q in initial {
        b.set_initial(q);
    }
    for &q in finals {
        b.set_final(q, true);
    }
    for &(p, l, q) in edges {
        b.add_transition(p, l, q);
    }
    b.build()
}

fn a_star() -> Nfa {
    build(&ab(), 1, &[0], &[0], &[(0, A, 0)])
}

fn b_plus() -> Nfa {
    build(&ab(), 2, &[0], &[1], &[(0, B, 1), (1, B, 1)])
}

fn succ() -> Transducer {
    corpus::load("succ-walk").unwrap().delta().clone()
}

fn equivalent(x: &Nfa, y: &Nfa) -> bool {
    includes(x, y).unwrap().holds() && includes(y, x).unwrap().holds()
}

fn words_up_to(k: usize, n: usize) -> Vec<Word> {
    (0..=n).flat_map(|i| all_words(k, i)).collect()
}

fn valid_transducer(r: &mut ChaCha8Rng, al: &Alphabet, max_states: usize) -> Transducer {
    loop {
        let t = random_transducer(r, al, al, max_states, 0.2, true);
        if t.validate_padding().is_ok() {
            return t;
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn accepts_examples() {
    assert!(a_star().accepts(&[A, A]).unwrap());
    assert!(!a_star().accepts(&[A, B]).unwrap());
    assert!(a_star().accepts(&[]).unwrap());
    assert!(matches!(a_star().accepts(&[7]), Err(Error::UnknownSymbol(_))));
}

#[test]
fn emptiness_examples() {
    assert!(a_star().intersect(&b_plus()).unwrap().is_empty());
    assert_eq!(a_star().shortest_word(), Some(vec![]));
    assert!(build(&ab(), 2, &[0], &[], &[(0, A, 1)]).is_empty());
}

#[test]
fn boolean_examples() {
    let b_star = build(&ab(), 1, &[0], &[0], &[(0, B, 0)]);
    let u = a_star().union(&b_star).unwrap();
    assert!(u.accepts(&[A, A]).unwrap() && u.accepts(&[B, B]).unwrap());
    assert!(!u.accepts(&[A, B]).unwrap());
    assert!(equivalent(&Nfa::empty(ab()).union(&a_star()).unwrap(), &a_star()));

    // a*b and ab*
    let x = build(&ab(), 2, &[0], &[1], &[(0, A, 0), (0, B, 1)]);
    let y = build(&ab(), 2, &[0], &[1], &[(0, A, 1), (1, B, 1)]);
    let both = x.intersect(&y).unwrap();
    assert!(equivalent(&both, &Nfa::from_word(ab(), &[A, B])));
    assert!(equivalent(&a_star().intersect(&Nfa::universal(ab())).unwrap(), &a_star()));

    let c = a_star().complement().unwrap();
    assert!(c.accepts(&[A, B]).unwrap());
    assert!(!c.accepts(&[A, A]).unwrap() && !c.accepts(&[]).unwrap());
    assert!(c.is_deterministic() && c.is_complete());
    assert!(equivalent(&c.complement().unwrap(), &a_star()));
}

#[test]
fn complement_cap_is_an_error() {
    // (a+b)* a (a+b)^4 needs 32 subsets
    let mut edges = vec![(0, A, 0), (0, B, 0), (0, A, 1)];
    for q in 1..5 {
        edges.push((q, A, q + 1));
        edges.push((q, B, q + 1));
    }
    let n = build(&ab(), 6, &[0], &[5], &edges);
    assert!(matches!(n.complement_capped(8), Err(Error::StateCapExceeded { cap: 8 })));
    assert!(n.complement_capped(64).is_ok());
}

#[test]
fn inclusion_examples() {
    let a_star_b = build(&ab(), 2, &[0], &[1], &[(0, A, 0), (0, B, 1)]);
    assert!(includes(&a_star_b, &Nfa::universal(ab())).unwrap().holds());
    let r = includes(&Nfa::universal(ab()), &a_star()).unwrap();
    assert_eq!(r.counterexample(), Some(&vec![B]));
}

#[test]
fn convolution_examples() {
    assert_eq!(
        convolve(&[A, B], &[B]),
        vec![PairSymbol::both(A, B), PairSymbol::new(Some(B), None)]
    );
    assert_eq!(
        convolve(&[A], &[A, B, 2]),
        vec![PairSymbol::both(A, A), PairSymbol::new(None, Some(B)), PairSymbol::new(None, Some(2))]
    );
    assert!(convolve(&[], &[]).is_empty());
}

#[test]
fn transducer_examples() {
    let s = succ();
    let inv = s.inverse();
    assert!(inv.accepts_pair(&[A, A], &[A]).unwrap());
    assert!(!inv.accepts_pair(&[A], &[A, A]).unwrap());
    assert_eq!(inv.inverse(), s);
    assert_eq!(inv.num_states(), s.num_states());

    let al = alphabet(1);
    let plus = build(&al, 2, &[0], &[1], &[(0, A, 1), (1, A, 1)]);
    assert!(equivalent(&s.project(Track::Top), &Nfa::universal(al.clone())));
    assert!(equivalent(&s.project(Track::Bottom), &plus));
    assert!(equivalent(&Transducer::identity(&ab()).project(Track::Top), &Nfa::universal(ab())));

    let ss = s.compose(&s).unwrap();
    for n in 0..5 {
        for m in 0..7 {
            assert_eq!(ss.accepts_pair(&vec![A; n], &vec![A; m]).unwrap(), m == n + 2);
        }
    }
    assert!(s.compose(&Transducer::identity(&al)).unwrap().relation_includes(&s).unwrap().holds());

    let post = s.image(&Nfa::from_word(al.clone(), &[A, A]), Direction::Post).unwrap();
    assert!(equivalent(&post, &Nfa::from_word(al.clone(), &[A, A, A])));
    let pre = s.image(&Nfa::from_word(al.clone(), &[A, A, A]), Direction::Pre).unwrap();
    assert!(equivalent(&pre, &Nfa::from_word(al.clone(), &[A, A])));
    assert!(s.image(&Nfa::empty(al.clone()), Direction::Post).unwrap().is_empty());
}

#[test]
fn identity_universal_diagonal() {
    let id = Transducer::identity(&ab());
    let one = Nfa::from_word(ab(), &[A, B]);
    assert!(equivalent(&id.image(&one, Direction::Post).unwrap(), &one));
    assert_eq!(id.num_states(), 1);
    assert_eq!(id.nfa().num_transitions(), 2);
    let x = Alphabet::new(["x"]).unwrap();
    assert!(Transducer::universal(&ab(), &x).accepts_pair(&[A, B], &[0]).unwrap());

    assert!(equivalent(&id.diagonal().unwrap(), &Nfa::universal(ab())));
    assert!(succ().diagonal().unwrap().is_empty());
    assert!(equivalent(&Transducer::universal(&ab(), &ab()).diagonal().unwrap(), &Nfa::universal(ab())));
}

#[test]
fn length_preservation() {
    assert!(corpus::load("herman-lp").unwrap().delta().is_length_preserving());
    assert!(!succ().is_length_preserving());
    let dead = parse_transducer(
        "type: transducer\nalphabet-top: a\nalphabet-bottom: a\nstates: p q r\ninitial: p\nfinal: p\np a/a p\nq #/a r\n",
    )
    .unwrap();
    assert!(dead.is_length_preserving());
}

#[test]
fn padding_violation_rejected() {
    let bad = "type: transducer\nalphabet-top: a\nalphabet-bottom: a\nstates: p q\ninitial: p\nfinal: q\np #/a p\np a/a q\n";
    assert!(matches!(parse_transducer(bad), Err(Error::Padding(_))));
}

fn exists_middle(t1: &Transducer, t2: &Transducer, x: &Word, z: &Word, k: usize) -> bool {
    let bound = x.len().max(z.len()) + t1.num_states() * t2.num_states();
    words_up_to(k, bound)
        .iter()
        .any(|y| t1.accepts_pair(x, y).unwrap() && t2.accepts_pair(y, z).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boolean_ops_match_membership(seed in any::<u64>(), k in 1usize..=3) {
        let mut r = rng(seed);
        let al = alphabet(k);
        let x = random_nfa(&mut r, &al, 4, 0.3);
        let y = random_nfa(&mut r, &al, 4, 0.3);
        let u = x.union(&y).unwrap();
        let i = x.intersect(&y).unwrap();
        let c = x.complement().unwrap();
        prop_assert!(u.num_states() <= x.num_states() + y.num_states());
        prop_assert!(i.num_states() <= x.num_states() * y.num_states());
        prop_assert!(c.num_states() <= 1 << x.num_states());
        for w in words_up_to(k, 4) {
            let (px, py) = (x.accepts(&w).unwrap(), y.accepts(&w).unwrap());
            prop_assert_eq!(u.accepts(&w).unwrap(), px || py);
            prop_assert_eq!(i.accepts(&w).unwrap(), px && py);
            prop_assert_eq!(c.accepts(&w).unwrap(), !px);
        }
    }

    #[test]
    fn inclusion_counterexamples_are_shortest(seed in any::<u64>(), k in 1usize..=2) {
        let mut r = rng(seed);
        let al = alphabet(k);
        let x = random_nfa(&mut r, &al, 3, 0.35);
        let y = random_nfa(&mut r, &al, 3, 0.35);
        prop_assert!(includes(&x, &x).unwrap().holds());
        let diff = |w: &Word| x.accepts(w).unwrap() && !y.accepts(w).unwrap();
        match includes(&x, &y).unwrap().counterexample() {
            None => {
                // shortest counterexample, if any, is shorter than |x| * 2^|y|
                let bound = x.num_states() << y.num_states();
                prop_assert!(!words_up_to(k, bound.min(9)).iter().any(diff));
            }
            Some(w) => {
                prop_assert!(diff(w));
                prop_assert!(!words_up_to(k, w.len().saturating_sub(1)).iter().take_while(|v| v.len() < w.len()).any(diff));
            }
        }
    }

    #[test]
    fn transducer_ops(seed in any::<u64>(), k in 1usize..=2) {
        let mut r = rng(seed);
        let al = alphabet(k);
        let t = valid_transducer(&mut r, &al, 3);
        let inv = t.inverse();
        prop_assert_eq!(inv.num_states(), t.num_states());
        prop_assert_eq!(&inv.inverse(), &t);
        prop_assert!(t.project(Track::Top).num_states() <= t.num_states());
        prop_assert!(equivalent(&inv.project(Track::Top), &t.project(Track::Bottom)));
        inv.validate_padding().unwrap();
        for u in words_up_to(k, 3) {
            for w in words_up_to(k, 3) {
                prop_assert_eq!(t.accepts_pair(&u, &w).unwrap(), inv.accepts_pair(&w, &u).unwrap());
            }
        }
        let set = random_nfa(&mut r, &al, 3, 0.4);
        let post = t.image(&set, Direction::Post).unwrap();
        prop_assert!(post.num_states() <= set.num_states() * t.num_states());
        for w in words_up_to(k, 2) {
            let expected = words_up_to(k, 5).iter().any(|u| set.accepts(u).unwrap() && t.accepts_pair(u, &w).unwrap());
            if expected {
                prop_assert!(post.accepts(&w).unwrap());
            }
        }
    }

    #[test]
    fn composition_is_relation_exact(seed in any::<u64>(), k in 1usize..=2) {
        let mut r = rng(seed);
        let al = alphabet(k);
        let t1 = valid_transducer(&mut r, &al, 3);
        let t2 = valid_transducer(&mut r, &al, 3);
        let c = t1.compose(&t2).unwrap();
        prop_assert!(c.num_states() <= t1.num_states() * t2.num_states());
        c.normalized().validate_padding().unwrap();
        for x in words_up_to(k, 3) {
            for z in words_up_to(k, 3) {
                prop_assert_eq!(c.accepts_pair(&x, &z).unwrap(), exists_middle(&t1, &t2, &x, &z, k));
            }
        }
    }

    #[test]
    fn diagonal_of_square_matches_projection(seed in any::<u64>(), k in 1usize..=2) {
        let mut r = rng(seed);
        let al = alphabet(k);
        let x = valid_transducer(&mut r, &al, 4).minus_identity().unwrap();
        let via_compose = x.compose(&x).unwrap().diagonal().unwrap();
        let via_projection = x.intersect(&x.inverse()).unwrap().project(Track::Top);
        prop_assert!(equivalent(&via_compose, &via_projection));
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>(), k in 1usize..=3) {
        let mut r = rng(seed);
        let al = alphabet(k);
        let n = random_nfa(&mut r, &al, 4, 0.3);
        prop_assert_eq!(&parse_nfa(&rmc_core::format::serialize_nfa(&n)).unwrap(), &n);
        let t = valid_transducer(&mut r, &al, 4);
        prop_assert_eq!(&parse_transducer(&rmc_core::format::serialize_transducer(&t)).unwrap(), &t);
    }
}
