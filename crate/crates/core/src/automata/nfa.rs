use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::alphabet::{Alphabet, Letter, LetterPartition};
use super::dfa::Dfa;
use crate::error::{Error, Result};

/// A nondeterministic automaton without epsilon transitions.
///
/// Transitions are stored per letter class (see [`LetterPartition`]). The
/// empty word is accepted exactly when an initial state is final, so the
/// "accepts epsilon" flag of the JSON format is always derived from the
/// structure and [`Nfa::with_epsilon`] toggles it.
#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: Alphabet,
    parts: LetterPartition,
    initial: Vec<u32>,
    finals: Vec<bool>,
    // delta[state][class] = sorted successor list
    delta: Vec<Vec<Vec<u32>>>,
}

/// Incremental construction with per-letter transitions.
#[derive(Debug, Clone)]
pub struct NfaBuilder {
    alphabet: Alphabet,
    initial: Vec<u32>,
    finals: Vec<bool>,
    edges: Vec<(u32, Letter, u32)>,
}

impl NfaBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        NfaBuilder {
            alphabet,
            initial: Vec::new(),
            finals: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_state(&mut self) -> u32 {
        self.finals.push(false);
        (self.finals.len() - 1) as u32
    }

    pub fn add_states(&mut self, count: usize) -> std::ops::Range<u32> {
        let start = self.finals.len() as u32;
        self.finals.resize(self.finals.len() + count, false);
        start..self.finals.len() as u32
    }

    pub fn set_initial(&mut self, q: u32) {
        self.initial.push(q);
    }

    pub fn set_final(&mut self, q: u32, f: bool) {
        self.finals[q as usize] = f;
    }

    pub fn add_transition(&mut self, from: u32, a: Letter, to: u32) {
        self.edges.push((from, a, to));
    }

    pub fn build(self) -> Result<Nfa> {
        let states = self.finals.len();
        if states == 0 {
            return Ok(Nfa::empty(&self.alphabet));
        }
        let k = self.alphabet.size();
        for &q in &self.initial {
            check_state(q, states)?;
        }
        for &(p, a, q) in &self.edges {
            check_state(p, states)?;
            check_state(q, states)?;
            if a as usize >= k {
                return Err(Error::OutOfRange {
                    what: "letter",
                    value: a as usize,
                    min: 0,
                    max: k - 1,
                });
            }
        }
        let mut delta = vec![vec![Vec::new(); k]; states];
        for (p, a, q) in self.edges {
            delta[p as usize][a as usize].push(q);
        }
        let mut nfa = Nfa::from_raw(
            self.alphabet,
            LetterPartition::discrete(k),
            self.initial,
            self.finals,
            delta,
        );
        nfa.compress();
        Ok(nfa)
    }
}

fn check_state(q: u32, states: usize) -> Result<()> {
    if q as usize >= states {
        return Err(Error::OutOfRange {
            what: "state",
            value: q as usize,
            min: 0,
            max: states - 1,
        });
    }
    Ok(())
}

fn sorted_union<'a>(lists: impl Iterator<Item = &'a Vec<u32>>) -> Vec<u32> {
    let mut out: Vec<u32> = lists.flatten().copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

impl Nfa {
    pub(crate) fn from_raw(
        alphabet: Alphabet,
        parts: LetterPartition,
        mut initial: Vec<u32>,
        finals: Vec<bool>,
        mut delta: Vec<Vec<Vec<u32>>>,
    ) -> Self {
        debug_assert_eq!(parts.letters(), alphabet.size());
        debug_assert_eq!(finals.len(), delta.len());
        initial.sort_unstable();
        initial.dedup();
        for row in &mut delta {
            debug_assert_eq!(row.len(), parts.classes());
            for succ in row.iter_mut() {
                succ.sort_unstable();
                succ.dedup();
            }
        }
        Nfa {
            alphabet,
            parts,
            initial,
            finals,
            delta,
        }
    }

    /// The empty language.
    pub fn empty(alphabet: &Alphabet) -> Self {
        Nfa::from_raw(
            alphabet.clone(),
            LetterPartition::trivial(alphabet.size()),
            vec![0],
            vec![false],
            vec![vec![Vec::new()]],
        )
    }

    /// `{epsilon}`.
    pub fn epsilon(alphabet: &Alphabet) -> Self {
        Nfa::from_raw(
            alphabet.clone(),
            LetterPartition::trivial(alphabet.size()),
            vec![0],
            vec![true],
            vec![vec![Vec::new()]],
        )
    }

    /// All words, including the empty one.
    pub fn universal(alphabet: &Alphabet) -> Self {
        Nfa::from_raw(
            alphabet.clone(),
            LetterPartition::trivial(alphabet.size()),
            vec![0],
            vec![true],
            vec![vec![vec![0]]],
        )
    }

    /// All non-empty words.
    pub fn nonempty_universal(alphabet: &Alphabet) -> Self {
        Nfa::universal(alphabet).with_epsilon(false)
    }

    /// Single-letter words whose letter satisfies `pred`.
    pub fn letters(alphabet: &Alphabet, pred: impl Fn(Letter) -> bool) -> Self {
        let (parts, keys) = LetterPartition::from_keys((0..alphabet.size() as u32).map(&pred));
        let row0 = keys
            .iter()
            .map(|&ok| if ok { vec![1] } else { vec![] })
            .collect();
        let row1 = vec![Vec::new(); keys.len()];
        Nfa::from_raw(
            alphabet.clone(),
            parts,
            vec![0],
            vec![false, true],
            vec![row0, row1],
        )
    }

    /// All words of length exactly `len`.
    pub fn exact_length(alphabet: &Alphabet, len: usize) -> Self {
        let mut delta = Vec::with_capacity(len + 1);
        for q in 0..=len {
            delta.push(vec![if q < len { vec![q as u32 + 1] } else { vec![] }]);
        }
        let mut finals = vec![false; len + 1];
        finals[len] = true;
        Nfa::from_raw(
            alphabet.clone(),
            LetterPartition::trivial(alphabet.size()),
            vec![0],
            finals,
            delta,
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn partition(&self) -> &LetterPartition {
        &self.parts
    }

    pub fn states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> &[u32] {
        &self.initial
    }

    pub fn is_final(&self, q: u32) -> bool {
        self.finals[q as usize]
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn successors(&self, q: u32, a: Letter) -> &[u32] {
        &self.delta[q as usize][self.parts.class_of(a) as usize]
    }

    pub fn accepts_epsilon(&self) -> bool {
        self.initial.iter().any(|&q| self.finals[q as usize])
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut cur = self.initial.clone();
        for &a in w {
            if a as usize >= self.alphabet.size() {
                return false;
            }
            let c = self.parts.class_of(a) as usize;
            cur = sorted_union(cur.iter().map(|&q| &self.delta[q as usize][c]));
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&q| self.finals[q as usize])
    }

    /// Number of transitions counted per letter.
    pub fn transition_count(&self) -> usize {
        let sizes: Vec<usize> = self.parts.members().iter().map(Vec::len).collect();
        self.delta
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&sizes)
                    .map(|(s, n)| s.len() * n)
                    .sum::<usize>()
            })
            .sum()
    }

    /// Re-expresses the transitions over a finer partition; `proj[c]` is the
    /// class of `self` containing the letters of new class `c`.
    pub(crate) fn align(&self, parts: &LetterPartition, proj: &[u32]) -> Nfa {
        let delta = self
            .delta
            .iter()
            .map(|row| proj.iter().map(|&c| row[c as usize].clone()).collect())
            .collect();
        Nfa {
            alphabet: self.alphabet.clone(),
            parts: parts.clone(),
            initial: self.initial.clone(),
            finals: self.finals.clone(),
            delta,
        }
    }

    fn check_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet.size() != other.alphabet.size() {
            return Err(Error::AlphabetMismatch(
                self.alphabet.size(),
                other.alphabet.size(),
            ));
        }
        Ok(())
    }

    fn aligned_pair(&self, other: &Nfa) -> Result<(Nfa, Nfa)> {
        self.check_alphabet(other)?;
        if self.parts == other.parts {
            return Ok((self.clone(), other.clone()));
        }
        let (joint, l, r) = self.parts.join(&other.parts);
        Ok((self.align(&joint, &l), other.align(&joint, &r)))
    }

    /// Disjoint union of the state sets of two aligned automata; returns the
    /// offset of the second.
    fn disjoint(a: &Nfa, b: &Nfa) -> (Vec<bool>, Vec<Vec<Vec<u32>>>, u32) {
        let off = a.states() as u32;
        let mut finals = a.finals.clone();
        finals.extend_from_slice(&b.finals);
        let mut delta = a.delta.clone();
        delta.extend(b.delta.iter().map(|row| {
            row.iter()
                .map(|s| s.iter().map(|&q| q + off).collect())
                .collect()
        }));
        (finals, delta, off)
    }

    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        let (a, b) = self.aligned_pair(other)?;
        let (finals, delta, off) = Nfa::disjoint(&a, &b);
        let mut initial = a.initial.clone();
        initial.extend(b.initial.iter().map(|&q| q + off));
        Ok(Nfa::from_raw(a.alphabet, a.parts, initial, finals, delta))
    }

    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        let (a, b) = self.aligned_pair(other)?;
        let a_eps = a.accepts_epsilon();
        let b_eps = b.accepts_epsilon();
        let (mut finals, mut delta, off) = Nfa::disjoint(&a, &b);
        let k = a.parts.classes();
        // start-of-b moves, usable from every final state of a
        let b_start: Vec<Vec<u32>> = (0..k)
            .map(|c| sorted_union(b.initial.iter().map(|&q| &b.delta[q as usize][c])))
            .map(|s| s.into_iter().map(|q| q + off).collect())
            .collect();
        for q in 0..a.states() {
            if a.finals[q] {
                for c in 0..k {
                    delta[q][c].extend_from_slice(&b_start[c]);
                }
            }
            if !b_eps {
                finals[q] = false;
            }
        }
        let mut initial = a.initial.clone();
        if a_eps {
            initial.extend(b.initial.iter().map(|&q| q + off));
        }
        Ok(Nfa::from_raw(a.alphabet, a.parts, initial, finals, delta))
    }

    /// `L^+`.
    pub fn plus(&self) -> Nfa {
        let k = self.parts.classes();
        let restart: Vec<Vec<u32>> = (0..k)
            .map(|c| sorted_union(self.initial.iter().map(|&q| &self.delta[q as usize][c])))
            .collect();
        let mut delta = self.delta.clone();
        for q in 0..self.states() {
            if self.finals[q] {
                for c in 0..k {
                    delta[q][c].extend_from_slice(&restart[c]);
                }
            }
        }
        Nfa::from_raw(
            self.alphabet.clone(),
            self.parts.clone(),
            self.initial.clone(),
            self.finals.clone(),
            delta,
        )
    }

    /// `L^*`.
    pub fn star(&self) -> Nfa {
        self.plus().with_epsilon(true)
    }

    /// The same language with the empty word added or removed.
    pub fn with_epsilon(&self, accept: bool) -> Nfa {
        if self.accepts_epsilon() == accept {
            return self.clone();
        }
        // a fresh initial state that simulates all old initial states
        let k = self.parts.classes();
        let fresh = self.states() as u32;
        let row: Vec<Vec<u32>> = (0..k)
            .map(|c| sorted_union(self.initial.iter().map(|&q| &self.delta[q as usize][c])))
            .collect();
        let mut delta = self.delta.clone();
        delta.push(row);
        let mut finals = self.finals.clone();
        finals.push(accept);
        Nfa::from_raw(
            self.alphabet.clone(),
            self.parts.clone(),
            vec![fresh],
            finals,
            delta,
        )
        .trim()
    }

    /// Product automaton.
    pub fn intersect(&self, other: &Nfa) -> Result<Nfa> {
        self.check_alphabet(other)?;
        let (joint, l, r) = self.parts.join(&other.parts);
        let k = joint.classes();
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut initial = Vec::new();
        for &p in &self.initial {
            for &q in &other.initial {
                let id = ids.len() as u32;
                ids.insert((p, q), id);
                queue.push_back((p, q));
                initial.push(id);
            }
        }
        let mut delta: Vec<Vec<Vec<u32>>> = Vec::new();
        let mut finals = Vec::new();
        while let Some((p, q)) = queue.pop_front() {
            finals.push(self.finals[p as usize] && other.finals[q as usize]);
            let mut row = Vec::with_capacity(k);
            for c in 0..k {
                let mut succ = Vec::new();
                for &p2 in &self.delta[p as usize][l[c] as usize] {
                    for &q2 in &other.delta[q as usize][r[c] as usize] {
                        let id = match ids.get(&(p2, q2)) {
                            Some(&id) => id,
                            None => {
                                let id = ids.len() as u32;
                                ids.insert((p2, q2), id);
                                queue.push_back((p2, q2));
                                id
                            }
                        };
                        succ.push(id);
                    }
                }
                row.push(succ);
            }
            delta.push(row);
        }
        // ids follow discovery order, which is also the queue order
        Ok(Nfa::from_raw(self.alphabet.clone(), joint, initial, finals, delta).trim())
    }

    /// Keeps only states that are reachable and co-reachable.
    pub fn trim(&self) -> Nfa {
        let n = self.states();
        let k = self.parts.classes();
        let mut fwd = vec![false; n];
        let mut stack: Vec<u32> = self.initial.clone();
        for &q in &stack {
            fwd[q as usize] = true;
        }
        while let Some(q) = stack.pop() {
            for c in 0..k {
                for &t in &self.delta[q as usize][c] {
                    if !fwd[t as usize] {
                        fwd[t as usize] = true;
                        stack.push(t);
                    }
                }
            }
        }
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for c in 0..k {
                for &t in &self.delta[q][c] {
                    preds[t as usize].push(q as u32);
                }
            }
        }
        let mut bwd = vec![false; n];
        let mut stack: Vec<u32> = (0..n as u32).filter(|&q| self.finals[q as usize]).collect();
        for &q in &stack {
            bwd[q as usize] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &preds[q as usize] {
                if !bwd[p as usize] {
                    bwd[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        let keep: Vec<bool> = (0..n).map(|q| fwd[q] && bwd[q]).collect();
        if keep.iter().all(|&x| x) {
            return self.clone();
        }
        if !keep.iter().any(|&x| x) {
            return Nfa::empty(&self.alphabet);
        }
        let mut new_id = vec![u32::MAX; n];
        let mut next = 0u32;
        for q in 0..n {
            if keep[q] {
                new_id[q] = next;
                next += 1;
            }
        }
        let remap = |v: &Vec<u32>| -> Vec<u32> {
            v.iter()
                .filter(|&&t| keep[t as usize])
                .map(|&t| new_id[t as usize])
                .collect()
        };
        let delta = (0..n)
            .filter(|&q| keep[q])
            .map(|q| self.delta[q].iter().map(remap).collect())
            .collect();
        let finals = (0..n)
            .filter(|&q| keep[q])
            .map(|q| self.finals[q])
            .collect();
        let initial = remap(&self.initial);
        let mut out = Nfa::from_raw(
            self.alphabet.clone(),
            self.parts.clone(),
            initial,
            finals,
            delta,
        );
        out.compress();
        out
    }

    /// Merges letter classes whose transitions coincide in every state.
    pub fn compress(&mut self) {
        let k = self.parts.classes();
        let keys: Vec<Vec<&Vec<u32>>> = (0..k)
            .map(|c| self.delta.iter().map(|row| &row[c]).collect())
            .collect();
        let (parts, old_to_new) = self.parts.merge_by(&keys);
        if parts.classes() == k && parts == self.parts {
            return;
        }
        let mut rep = vec![usize::MAX; parts.classes()];
        for (c, &nc) in old_to_new.iter().enumerate() {
            if rep[nc as usize] == usize::MAX {
                rep[nc as usize] = c;
            }
        }
        for row in &mut self.delta {
            *row = rep.iter().map(|&c| std::mem::take(&mut row[c])).collect();
        }
        self.parts = parts;
    }

    /// Image under a letter map `h` from this alphabet into `target`.
    pub fn map_letters_image(&self, h: &[Letter], target: &Alphabet) -> Result<Nfa> {
        if h.len() != self.alphabet.size() {
            return Err(Error::LengthMismatch {
                expected: self.alphabet.size(),
                found: h.len(),
            });
        }
        let mut sources: Vec<Vec<u32>> = vec![Vec::new(); target.size()];
        for (a, &b) in h.iter().enumerate() {
            if b as usize >= target.size() {
                return Err(Error::OutOfRange {
                    what: "letter image",
                    value: b as usize,
                    min: 0,
                    max: target.size() - 1,
                });
            }
            sources[b as usize].push(self.parts.class_of(a as Letter));
        }
        for s in &mut sources {
            s.sort_unstable();
            s.dedup();
        }
        let (parts, keys) = LetterPartition::from_keys(sources);
        let delta = self
            .delta
            .iter()
            .map(|row| {
                keys.iter()
                    .map(|src| sorted_union(src.iter().map(|&c| &row[c as usize])))
                    .collect()
            })
            .collect();
        let mut out = Nfa::from_raw(
            target.clone(),
            parts,
            self.initial.clone(),
            self.finals.clone(),
            delta,
        );
        out.compress();
        Ok(out)
    }

    /// Preimage under a letter map `h` from `source` into this alphabet.
    pub fn map_letters_preimage(&self, h: &[Letter], source: &Alphabet) -> Result<Nfa> {
        if h.len() != source.size() {
            return Err(Error::LengthMismatch {
                expected: source.size(),
                found: h.len(),
            });
        }
        if let Some(&b) = h.iter().find(|&&b| b as usize >= self.alphabet.size()) {
            return Err(Error::OutOfRange {
                what: "letter image",
                value: b as usize,
                min: 0,
                max: self.alphabet.size() - 1,
            });
        }
        let (parts, to_old) = self.parts.pullback(h);
        let delta = self
            .delta
            .iter()
            .map(|row| to_old.iter().map(|&c| row[c as usize].clone()).collect())
            .collect();
        let mut out = Nfa::from_raw(
            source.clone(),
            parts,
            self.initial.clone(),
            self.finals.clone(),
            delta,
        );
        out.compress();
        Ok(out)
    }

    /// Subset construction. The empty subset becomes an explicit sink.
    pub fn determinize(&self, cap: usize) -> Result<Dfa> {
        let k = self.parts.classes();
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut subsets: Vec<Vec<u32>> = Vec::new();
        ids.insert(self.initial.clone(), 0);
        subsets.push(self.initial.clone());
        let mut table: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            for c in 0..k {
                let succ = sorted_union(subsets[i].iter().map(|&q| &self.delta[q as usize][c]));
                let id = match ids.get(&succ) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len() as u32;
                        if subsets.len() >= cap {
                            return Err(Error::cap("DFA states", subsets.len() + 1, cap));
                        }
                        ids.insert(succ.clone(), id);
                        subsets.push(succ);
                        id
                    }
                };
                table.push(id);
            }
            i += 1;
        }
        let finals = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.finals[q as usize]))
            .collect();
        Ok(Dfa::from_raw(
            self.alphabet.clone(),
            self.parts.clone(),
            0,
            finals,
            table,
        ))
    }

    /// Boolean transition matrix of every letter class, as
    /// `(source, target)` pairs.
    pub(crate) fn class_relation(&self, c: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (q, row) in self.delta.iter().enumerate() {
            for &t in &row[c as usize] {
                out.push((q as u32, t));
            }
        }
        out
    }

    pub fn to_json(&self) -> NfaJson {
        let members = self.parts.members();
        let mut delta = Vec::new();
        for (q, row) in self.delta.iter().enumerate() {
            let mut edges: Vec<[u32; 3]> = Vec::new();
            for (c, succ) in row.iter().enumerate() {
                for &a in &members[c] {
                    for &t in succ {
                        edges.push([q as u32, a, t]);
                    }
                }
            }
            edges.sort_unstable();
            delta.extend(edges);
        }
        NfaJson {
            alphabet: self.alphabet.size(),
            states: self.states(),
            initial: self.initial.clone(),
            r#final: (0..self.states() as u32)
                .filter(|&q| self.finals[q as usize])
                .collect(),
            delta,
            accepts_epsilon: self.accepts_epsilon(),
        }
    }

    pub fn from_json(j: &NfaJson) -> Result<Nfa> {
        let alphabet = Alphabet::new(j.alphabet)?;
        let mut b = NfaBuilder::new(alphabet);
        b.add_states(j.states);
        for &q in &j.initial {
            check_state(q, j.states.max(1))?;
            b.set_initial(q);
        }
        for &q in &j.r#final {
            check_state(q, j.states.max(1))?;
            b.set_final(q, true);
        }
        for &[p, a, q] in &j.delta {
            b.add_transition(p, a, q);
        }
        let nfa = b.build()?;
        Ok(nfa.with_epsilon(j.accepts_epsilon))
    }

    /// Graphviz rendering; edge labels list the letters of each class.
    pub fn to_dot(&self) -> String {
        let members = self.parts.members();
        let mut s = String::from("digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n");
        for q in 0..self.states() {
            let shape = if self.finals[q] {
                "doublecircle"
            } else {
                "circle"
            };
            s.push_str(&format!("  q{q} [shape={shape}];\n"));
        }
        for &q in &self.initial {
            s.push_str(&format!("  start{q} [shape=point];\n  start{q} -> q{q};\n"));
        }
        for (q, row) in self.delta.iter().enumerate() {
            let mut by_target: std::collections::BTreeMap<u32, Vec<Letter>> = Default::default();
            for (c, succ) in row.iter().enumerate() {
                for &t in succ {
                    by_target.entry(t).or_default().extend(&members[c]);
                }
            }
            for (t, mut letters) in by_target {
                letters.sort_unstable();
                s.push_str(&format!(
                    "  q{q} -> q{t} [label=\"{}\"];\n",
                    letter_list(&self.alphabet, &letters)
                ));
            }
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn letter_list(alphabet: &Alphabet, letters: &[Letter]) -> String {
    const SHOWN: usize = 8;
    let mut parts: Vec<String> = letters
        .iter()
        .take(SHOWN)
        .map(|&a| alphabet.label(a))
        .collect();
    if letters.len() > SHOWN {
        parts.push(format!("... ({} letters)", letters.len()));
    }
    parts.join(",")
}

/// The automaton interchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NfaJson {
    pub alphabet: usize,
    pub states: usize,
    pub initial: Vec<u32>,
    #[serde(rename = "final")]
    pub r#final: Vec<u32>,
    pub delta: Vec<[u32; 3]>,
    pub accepts_epsilon: bool,
}
