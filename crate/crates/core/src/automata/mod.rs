//! Finite automata over indexed alphabets.
//!
//! [`Nfa`] has no epsilon moves; it accepts the empty word exactly when an
//! initial state is final. [`Dfa`] is complete (a sink state is always
//! materialized). Both store transitions per letter class, so an alphabet of
//! thousands of column letters costs only as much as the number of letter
//! behaviours that the automaton distinguishes.

mod alphabet;
mod dfa;
mod nfa;
mod regex;

pub use alphabet::{Alphabet, Letter, LetterPartition, Word};
pub use dfa::{BoolOp, Dfa, DEFAULT_STATE_CAP};
pub use nfa::{Nfa, NfaBuilder, NfaJson};
pub use regex::{compile, Regex};

use crate::error::Result;

impl Nfa {
    /// Complement with respect to all non-empty words, or all words when
    /// `with_epsilon` is set.
    pub fn complement(&self, with_epsilon: bool, cap: usize) -> Result<Nfa> {
        let c = self.determinize(cap)?.minimize().complement().to_nfa();
        Ok(c.with_epsilon(c.accepts_epsilon() && with_epsilon))
    }

    pub fn minimal_dfa(&self, cap: usize) -> Result<Dfa> {
        Ok(self.determinize(cap)?.minimize())
    }

    /// Language equivalence, via the product of the two minimal DFAs.
    pub fn is_equivalent(&self, other: &Nfa, cap: usize) -> Result<bool> {
        self.minimal_dfa(cap)?.equivalent(&other.minimal_dfa(cap)?)
    }

    /// Accepted words of length at most `max_len` in length-lexicographic order.
    pub fn enumerate(
        &self,
        max_len: usize,
        state_cap: usize,
        word_cap: usize,
    ) -> Result<Vec<Word>> {
        self.determinize(state_cap)?.enumerate(max_len, word_cap)
    }

    /// A smaller equivalent automaton: the minimal DFA when it is not larger
    /// than the trimmed input, otherwise the trimmed input.
    pub fn reduce(&self, cap: usize) -> Result<Nfa> {
        let trimmed = self.trim();
        let min = trimmed.determinize(cap)?.minimize().to_nfa();
        Ok(if min.states() <= trimmed.states() {
            min
        } else {
            trimmed
        })
    }
}
