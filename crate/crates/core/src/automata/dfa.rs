use std::collections::{HashMap, VecDeque};

use super::alphabet::{Alphabet, Letter, LetterPartition, Word};
use super::nfa::{letter_list, Nfa, NfaJson};
use crate::error::{Error, Result};

/// Default bound on subset-construction states.
pub const DEFAULT_STATE_CAP: usize = 200_000;

/// A complete deterministic automaton over letter classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    parts: LetterPartition,
    initial: u32,
    finals: Vec<bool>,
    // table[state * classes + class]
    table: Vec<u32>,
    minimal: bool,
}

/// Boolean combination used by [`Dfa::product`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Xor,
    Minus,
}

impl BoolOp {
    fn eval(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::Xor => a != b,
            BoolOp::Minus => a && !b,
        }
    }
}

impl Dfa {
    pub(crate) fn from_raw(
        alphabet: Alphabet,
        parts: LetterPartition,
        initial: u32,
        finals: Vec<bool>,
        table: Vec<u32>,
    ) -> Self {
        debug_assert_eq!(table.len(), finals.len() * parts.classes());
        Dfa {
            alphabet,
            parts,
            initial,
            finals,
            table,
            minimal: false,
        }
    }

    /// Builds a DFA from a per-letter transition function.
    pub fn from_fn(
        alphabet: &Alphabet,
        states: usize,
        initial: u32,
        finals: &[bool],
        mut next: impl FnMut(u32, Letter) -> u32,
    ) -> Result<Self> {
        if states == 0 || finals.len() != states || initial as usize >= states {
            return Err(Error::Invalid("malformed DFA description".into()));
        }
        let k = alphabet.size();
        let mut table = Vec::with_capacity(states * k);
        for q in 0..states as u32 {
            for a in 0..k as u32 {
                let t = next(q, a);
                if t as usize >= states {
                    return Err(Error::OutOfRange {
                        what: "state",
                        value: t as usize,
                        min: 0,
                        max: states - 1,
                    });
                }
                table.push(t);
            }
        }
        Ok(Dfa::from_raw(
            alphabet.clone(),
            LetterPartition::discrete(k),
            initial,
            finals.to_vec(),
            table,
        ))
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

    pub fn initial(&self) -> u32 {
        self.initial
    }

    /// Set on the output of [`Dfa::minimize`].
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_final(&self, q: u32) -> bool {
        self.finals[q as usize]
    }

    #[inline]
    pub fn next(&self, q: u32, a: Letter) -> u32 {
        self.next_class(q, self.parts.class_of(a))
    }

    #[inline]
    pub(crate) fn next_class(&self, q: u32, c: u32) -> u32 {
        self.table[q as usize * self.parts.classes() + c as usize]
    }

    pub fn run_from(&self, q: u32, w: &[Letter]) -> u32 {
        w.iter().fold(q, |q, &a| self.next(q, a))
    }

    pub fn run(&self, w: &[Letter]) -> u32 {
        self.run_from(self.initial, w)
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        if w.iter().any(|&a| a as usize >= self.alphabet.size()) {
            return false;
        }
        self.finals[self.run(w) as usize]
    }

    pub fn accepts_epsilon(&self) -> bool {
        self.finals[self.initial as usize]
    }

    /// The state map of one letter class, as a vector over states.
    pub(crate) fn class_map(&self, c: u32) -> Vec<u32> {
        (0..self.states() as u32)
            .map(|q| self.next_class(q, c))
            .collect()
    }

    pub fn to_nfa(&self) -> Nfa {
        let k = self.parts.classes();
        let delta = (0..self.states())
            .map(|q| (0..k).map(|c| vec![self.table[q * k + c]]).collect())
            .collect();
        Nfa::from_raw(
            self.alphabet.clone(),
            self.parts.clone(),
            vec![self.initial],
            self.finals.clone(),
            delta,
        )
        .trim()
    }

    pub fn complement(&self) -> Dfa {
        // flipping finals keeps a minimal machine minimal
        let mut d = self.clone();
        for f in &mut d.finals {
            *f = !*f;
        }
        d
    }

    fn reachable(&self) -> Dfa {
        let n = self.states();
        let k = self.parts.classes();
        let mut id = vec![u32::MAX; n];
        let mut order = vec![self.initial];
        id[self.initial as usize] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i] as usize;
            for c in 0..k {
                let t = self.table[q * k + c];
                if id[t as usize] == u32::MAX {
                    id[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
            i += 1;
        }
        if order.len() == n && order.iter().enumerate().all(|(i, &q)| i == q as usize) {
            return self.clone();
        }
        let mut table = Vec::with_capacity(order.len() * k);
        for &q in &order {
            for c in 0..k {
                table.push(id[self.table[q as usize * k + c] as usize]);
            }
        }
        let finals = order.iter().map(|&q| self.finals[q as usize]).collect();
        Dfa::from_raw(self.alphabet.clone(), self.parts.clone(), 0, finals, table)
    }

    /// Minimal DFA in canonical form: letter classes are the coarsest ones
    /// (numbered by smallest letter) and states are numbered in breadth-first
    /// order from the initial state. Two DFAs for the same language minimize
    /// to equal values.
    pub fn minimize(&self) -> Dfa {
        if self.minimal {
            return self.clone();
        }
        let d = self.reachable();
        let block_of = hopcroft(&d);
        let blocks = block_of.iter().copied().max().map_or(0, |m| m as usize + 1);
        let k = d.parts.classes();
        let mut rep = vec![u32::MAX; blocks];
        for (q, &b) in block_of.iter().enumerate() {
            if rep[b as usize] == u32::MAX {
                rep[b as usize] = q as u32;
            }
        }
        let mut table = Vec::with_capacity(blocks * k);
        let mut finals = Vec::with_capacity(blocks);
        for &q in &rep {
            finals.push(d.finals[q as usize]);
            for c in 0..k {
                table.push(block_of[d.table[q as usize * k + c] as usize]);
            }
        }
        // merge letter classes with identical columns
        let columns: Vec<Vec<u32>> = (0..k)
            .map(|c| (0..blocks).map(|b| table[b * k + c]).collect())
            .collect();
        let (parts, old_to_new) = d.parts.merge_by(&columns);
        let k2 = parts.classes();
        let mut old_of_new = vec![0usize; k2];
        for (c, &nc) in old_to_new.iter().enumerate().rev() {
            old_of_new[nc as usize] = c;
        }
        // breadth-first renumbering
        let start = block_of[d.initial as usize];
        let mut id = vec![u32::MAX; blocks];
        let mut order = vec![start];
        id[start as usize] = 0;
        let mut i = 0;
        while i < order.len() {
            let b = order[i] as usize;
            for &c in &old_of_new {
                let t = table[b * k + c];
                if id[t as usize] == u32::MAX {
                    id[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
            i += 1;
        }
        let mut out_table = Vec::with_capacity(blocks * k2);
        for &b in &order {
            for &c in &old_of_new {
                out_table.push(id[table[b as usize * k + c] as usize]);
            }
        }
        let out_finals = order.iter().map(|&b| finals[b as usize]).collect();
        let mut out = Dfa::from_raw(d.alphabet.clone(), parts, 0, out_finals, out_table);
        out.minimal = true;
        out
    }

    /// Product automaton combining acceptance with `op`.
    pub fn product(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        if self.alphabet.size() != other.alphabet.size() {
            return Err(Error::AlphabetMismatch(
                self.alphabet.size(),
                other.alphabet.size(),
            ));
        }
        let (joint, l, r) = self.parts.join(&other.parts);
        let k = joint.classes();
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut order = vec![(self.initial, other.initial)];
        ids.insert(order[0], 0);
        let mut table = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (p, q) = order[i];
            for c in 0..k {
                let pair = (self.next_class(p, l[c]), other.next_class(q, r[c]));
                let id = match ids.get(&pair) {
                    Some(&id) => id,
                    None => {
                        let id = order.len() as u32;
                        ids.insert(pair, id);
                        order.push(pair);
                        id
                    }
                };
                table.push(id);
            }
            i += 1;
        }
        let finals = order
            .iter()
            .map(|&(p, q)| op.eval(self.finals[p as usize], other.finals[q as usize]))
            .collect();
        Ok(Dfa::from_raw(
            self.alphabet.clone(),
            joint,
            0,
            finals,
            table,
        ))
    }

    /// A shortest word accepted by exactly one of the two automata, if any.
    pub fn difference_witness(&self, other: &Dfa) -> Result<Option<Word>> {
        self.product(other, BoolOp::Xor)?
            .shortest_accepted()
            .map(Ok)
            .transpose()
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.difference_witness(other)?.is_none())
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// Shortest accepted word, smallest letters first.
    pub fn shortest_accepted(&self) -> Option<Word> {
        let reps = self.parts.representatives();
        let k = self.parts.classes();
        let n = self.states();
        let mut parent: Vec<Option<(u32, Letter)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[self.initial as usize] = true;
        queue.push_back(self.initial);
        // visit classes by smallest letter
        let mut class_order: Vec<u32> = (0..k as u32).collect();
        class_order.sort_by_key(|&c| reps[c as usize]);
        while let Some(q) = queue.pop_front() {
            if self.finals[q as usize] {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur as usize] {
                    w.push(a);
                    cur = p;
                }
                w.reverse();
                return Some(w);
            }
            for &c in &class_order {
                let t = self.next_class(q, c);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = Some((q, reps[c as usize]));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// All accepted words of length at most `max_len`, in length-lexicographic
    /// order. Fails when more than `cap` words would be produced.
    pub fn enumerate(&self, max_len: usize, cap: usize) -> Result<Vec<Word>> {
        let n = self.states();
        let k = self.parts.classes();
        // live[r][q]: some word of length exactly r leads from q to a final state
        let mut live = vec![self.finals.clone()];
        for r in 1..=max_len {
            let prev = &live[r - 1];
            let row = (0..n)
                .map(|q| (0..k).any(|c| prev[self.table[q * k + c] as usize]))
                .collect();
            live.push(row);
        }
        let mut out = Vec::new();
        let letters = self.alphabet.size() as u32;
        for len in 0..=max_len {
            if !live[len][self.initial as usize] {
                continue;
            }
            let mut word: Word = Vec::with_capacity(len);
            let mut states = vec![self.initial];
            // iterative depth-first search in lexicographic order
            let mut next_letter: Vec<Letter> = vec![0];
            while let Some(&start) = next_letter.last() {
                let depth = word.len();
                let q = states[depth];
                if depth == len {
                    out.push(word.clone());
                    if out.len() > cap {
                        return Err(Error::cap("enumerated words", out.len(), cap));
                    }
                    next_letter.pop();
                    if let Some(a) = word.pop() {
                        states.pop();
                        *next_letter.last_mut().unwrap() = a + 1;
                    }
                    continue;
                }
                let found =
                    (start..letters).find(|&a| live[len - depth - 1][self.next(q, a) as usize]);
                match found {
                    Some(a) => {
                        word.push(a);
                        states.push(self.next(q, a));
                        next_letter.push(0);
                    }
                    None => {
                        next_letter.pop();
                        if let Some(a) = word.pop() {
                            states.pop();
                            *next_letter.last_mut().unwrap() = a + 1;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> NfaJson {
        self.to_nfa_untrimmed().to_json()
    }

    fn to_nfa_untrimmed(&self) -> Nfa {
        let k = self.parts.classes();
        let delta = (0..self.states())
            .map(|q| (0..k).map(|c| vec![self.table[q * k + c]]).collect())
            .collect();
        Nfa::from_raw(
            self.alphabet.clone(),
            self.parts.clone(),
            vec![self.initial],
            self.finals.clone(),
            delta,
        )
    }

    pub fn to_dot(&self) -> String {
        let members = self.parts.members();
        let k = self.parts.classes();
        let mut s = String::from("digraph dfa {\n  rankdir=LR;\n");
        for q in 0..self.states() {
            let shape = if self.finals[q] {
                "doublecircle"
            } else {
                "circle"
            };
            s.push_str(&format!("  q{q} [shape={shape}];\n"));
        }
        s.push_str(&format!(
            "  start [shape=point];\n  start -> q{};\n",
            self.initial
        ));
        for q in 0..self.states() {
            let mut by_target: std::collections::BTreeMap<u32, Vec<Letter>> = Default::default();
            for c in 0..k {
                by_target
                    .entry(self.table[q * k + c])
                    .or_default()
                    .extend(&members[c]);
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

/// Hopcroft's partition refinement over letter classes. Returns the block of
/// every state.
fn hopcroft(d: &Dfa) -> Vec<u32> {
    let n = d.states();
    let k = d.parts.classes();
    // inverse transitions in CSR form, indexed by class * n + target
    let mut count = vec![0u32; k * n + 1];
    for q in 0..n {
        for c in 0..k {
            let t = d.table[q * k + c] as usize;
            count[c * n + t + 1] += 1;
        }
    }
    for i in 1..count.len() {
        count[i] += count[i - 1];
    }
    let mut fill = count.clone();
    let mut preds = vec![0u32; n * k];
    for q in 0..n {
        for c in 0..k {
            let t = d.table[q * k + c] as usize;
            let slot = &mut fill[c * n + t];
            preds[*slot as usize] = q as u32;
            *slot += 1;
        }
    }

    let mut p = Refinable::new(n, |q| d.finals[q] as u32);
    if p.blocks() < 2 {
        return p.block;
    }
    let mut in_w = vec![false; n * k];
    let mut work: Vec<(u32, u32)> = Vec::new();
    let smaller = if p.size(0) <= p.size(1) { 0 } else { 1 };
    for c in 0..k as u32 {
        work.push((smaller, c));
        in_w[smaller as usize * k + c as usize] = true;
    }
    let mut members = Vec::new();
    while let Some((b, c)) = work.pop() {
        in_w[b as usize * k + c as usize] = false;
        members.clear();
        members.extend_from_slice(p.members(b));
        for &s in &members {
            let idx = c as usize * n + s as usize;
            for &q in &preds[count[idx] as usize..count[idx + 1] as usize] {
                p.mark(q);
            }
        }
        for (y, z) in p.split_marked() {
            for d in 0..k {
                if in_w[y as usize * k + d] {
                    work.push((z, d as u32));
                    in_w[z as usize * k + d] = true;
                } else {
                    let s = if p.size(z) <= p.size(y) { z } else { y };
                    work.push((s, d as u32));
                    in_w[s as usize * k + d] = true;
                }
            }
        }
    }
    p.block
}

/// A partition of `0..n` supporting mark-and-split.
struct Refinable {
    elems: Vec<u32>,
    pos: Vec<u32>,
    block: Vec<u32>,
    start: Vec<u32>,
    end: Vec<u32>,
    marked: Vec<u32>,
    touched: Vec<u32>,
}

impl Refinable {
    fn new(n: usize, key: impl Fn(usize) -> u32) -> Self {
        let mut elems: Vec<u32> = (0..n as u32).collect();
        elems.sort_by_key(|&q| key(q as usize));
        let mut pos = vec![0u32; n];
        let mut block = vec![0u32; n];
        let mut start = Vec::new();
        let mut end = Vec::new();
        for (i, &q) in elems.iter().enumerate() {
            pos[q as usize] = i as u32;
            if i == 0 || key(q as usize) != key(elems[i - 1] as usize) {
                if i > 0 {
                    end.push(i as u32);
                }
                start.push(i as u32);
            }
            block[q as usize] = (start.len() - 1) as u32;
        }
        end.push(n as u32);
        let blocks = start.len();
        Refinable {
            elems,
            pos,
            block,
            start,
            end,
            marked: vec![0; blocks],
            touched: Vec::new(),
        }
    }

    fn blocks(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: u32) -> usize {
        (self.end[b as usize] - self.start[b as usize]) as usize
    }

    fn members(&self, b: u32) -> &[u32] {
        &self.elems[self.start[b as usize] as usize..self.end[b as usize] as usize]
    }

    /// Moves `q` into the marked prefix of its block.
    fn mark(&mut self, q: u32) {
        let b = self.block[q as usize] as usize;
        let m = self.marked[b];
        let i = self.pos[q as usize];
        if i < self.start[b] + m {
            return;
        }
        if m == 0 {
            self.touched.push(b as u32);
        }
        let j = self.start[b] + m;
        let other = self.elems[j as usize];
        self.elems.swap(i as usize, j as usize);
        self.pos[q as usize] = j;
        self.pos[other as usize] = i;
        self.marked[b] += 1;
    }

    /// Splits every touched block into marked and unmarked parts. Returns
    /// `(old, new)` pairs; the new block holds the marked part.
    fn split_marked(&mut self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for b in std::mem::take(&mut self.touched) {
            let bi = b as usize;
            let m = self.marked[bi];
            self.marked[bi] = 0;
            if m == self.end[bi] - self.start[bi] {
                continue;
            }
            let z = self.start.len() as u32;
            self.start.push(self.start[bi]);
            self.end.push(self.start[bi] + m);
            self.marked.push(0);
            self.start[bi] += m;
            for i in self.start[z as usize]..self.end[z as usize] {
                self.block[self.elems[i as usize] as usize] = z;
            }
            out.push((b, z));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::regex::compile;

    fn ab() -> Alphabet {
        Alphabet::with_labels(["a", "b"]).unwrap()
    }

    #[test]
    fn minimize_is_canonical() {
        let a = ab();
        let x = compile("(a|b)*a(a|b)", &a)
            .unwrap()
            .determinize(1000)
            .unwrap()
            .minimize();
        let y = compile("(a|b)*a(a|b)|a(a|b)", &a)
            .unwrap()
            .determinize(1000)
            .unwrap()
            .minimize();
        assert_eq!(x, y);
        assert_eq!(x.states(), 4);
        let z = compile("(a|b)(a|b)*", &a)
            .unwrap()
            .determinize(1000)
            .unwrap()
            .minimize();
        assert_eq!(z.states(), 2);
        assert_eq!(z.partition().classes(), 1);
    }

    #[test]
    fn enumerate_length_lex() {
        let a = ab();
        let d = compile("a*b", &a).unwrap().determinize(100).unwrap();
        let words = d.enumerate(3, 100).unwrap();
        let shown: Vec<String> = words.iter().map(|w| a.format_word(w)).collect();
        assert_eq!(shown, ["b", "ab", "aab"]);
        let all = Nfa::universal(&a).determinize(10).unwrap();
        assert_eq!(all.enumerate(2, 100).unwrap().len(), 7);
        assert!(all.enumerate(4, 10).unwrap_err().is_cap());
    }

    #[test]
    fn witness_and_emptiness() {
        let a = ab();
        let x = compile("a*", &a).unwrap().determinize(100).unwrap();
        let y = compile("(aa)*", &a).unwrap().determinize(100).unwrap();
        assert_eq!(x.difference_witness(&y).unwrap(), Some(vec![0]));
        assert!(x.equivalent(&x.minimize()).unwrap());
        assert!(Nfa::empty(&a).determinize(10).unwrap().is_empty());
    }

    #[test]
    fn subset_cap() {
        let a = ab();
        // the n-th letter from the end is an a
        let n = compile("(a|b)*a(a|b)(a|b)(a|b)(a|b)", &a).unwrap();
        assert!(n.determinize(8).unwrap_err().is_cap());
        assert_eq!(n.determinize(1000).unwrap().minimize().states(), 32);
    }
}
