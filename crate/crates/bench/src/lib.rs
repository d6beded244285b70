//! Fixtures shared by the criterion benches.

use rmc_core::{corpus, Alphabet, Nfa, NfaBuilder, Rts, Transducer};

/// `(a+b)* a (a+b)^k`, whose minimal DFA has `2^(k+1)` states.
pub fn kth_from_end(k: usize) -> Nfa {
    let al = Alphabet::new(["a", "b"]).expect("alphabet");
    let mut b = NfaBuilder::with_states(al, k + 2);
    b.set_initial(0);
    b.set_final(k + 1, true);
    b.add_transition(0, 0, 0);
    b.add_transition(0, 1, 0);
    b.add_transition(0, 0, 1);
    for q in 1..=k {
        b.add_transition(q, 0, q + 1);
        b.add_transition(q, 1, q + 1);
    }
    b.build()
}

pub fn herman() -> Rts {
    corpus::load("herman-lp").expect("bundled system")
}

pub fn herman_at(cells: usize) -> Rts {
    herman().restrict_to_length(cells + 2).expect("restriction")
}

pub fn one_token() -> Nfa {
    corpus::goal("herman-lp", "one-token").expect("bundled goal")
}

pub fn succ() -> Transducer {
    corpus::load("succ-walk").expect("bundled system").delta().clone()
}
