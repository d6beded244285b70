//! Regular model checking: finite automata and transducers, regular
//! transition systems, symbolic decision procedures for reachability and
//! almost-sure properties, and an explicit-state oracle.

pub mod abstraction;
pub mod alphabet;
pub mod bundle;
mod clique;
pub mod corpus;
pub mod error;
pub mod format;
pub mod nfa;
pub mod oracle;
pub mod procedures;
pub mod report;
pub mod rts;
mod search;
pub mod transducer;
pub mod verdict;

pub use alphabet::{convolve, deconvolve, Alphabet, Letter, PairAlphabet, PairSymbol, Word};
pub use bundle::parse_rts_bundle;
pub use error::{Error, Result};
pub use format::{parse_automaton, parse_nfa, parse_transducer, Automaton};
pub use nfa::{includes, Inclusion, Nfa, NfaBuilder, StateId};
pub use oracle::{FiniteSlice, Property};
pub use abstraction::{Interpretation, PropertyGoal};
pub use report::{Format, RenderedWitness, Report};
pub use rts::{Basis, Check, Limits, Rts, ValidationReport};
pub use transducer::{Direction, RelationInclusion, Track, Transducer};
pub use verdict::{Outcome, Verdict, Witness, WitnessKind};
