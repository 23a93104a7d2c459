//! The Boolean-matrix witness languages: a compositional build from `topin`,
//! length languages, boolean operations, concatenation and attribute
//! erasure, next to a direct counter automaton for the same set.

use std::collections::HashMap;
use std::hash::Hash;

use super::{
    exset, exset_preimage, top_preimage_words, topin_words, ColumnAlphabet, FragmentLang,
    LengthFunction,
};
use crate::automata::{Alphabet, Dfa, Letter, Nfa, NfaBuilder, Word};
use crate::boolmat::{bn_element, bn_index, code, fold};
use crate::error::{Error, Result};

/// Attributes of the marker language.
pub const MARKER_ATTRS: [&str; 3] = ["diag", "end", "blk"];
/// Attributes of the single-block pivot language.
pub const PIVOT_ATTRS: [&str; 5] = ["inp", "piv", "row", "col", "end"];
/// Attributes of the pivot build, pivot attributes first.
pub const PIVOT_BUILD_ATTRS: [&str; 7] = ["inp", "piv", "row", "col", "end", "diag", "blk"];
/// Attributes of the product language.
pub const PRODUCT_ATTRS: [&str; 2] = ["inp", "end"];

/// Deviations from the textbook equations that make the compositional build
/// match the intended sets at small `n`. Each flag can be switched off to
/// reproduce the unrepaired language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Repairs {
    /// The diagonal chain after the first marker may have zero segments, so
    /// that `n = 1` has a marker picture.
    pub empty_diagonal_chain: bool,
    /// The pivot-to-column stretch may be a single column, so that the
    /// pivot may sit on the diagonal.
    pub single_column_pivot: bool,
    /// Pairs of consecutive blocks are checked when there are exactly two
    /// blocks.
    pub two_block_pairs: bool,
    /// The end markers of two blocks may be adjacent, which happens for
    /// blocks of length 1.
    pub adjacent_end_markers: bool,
}

impl Repairs {
    pub fn all() -> Self {
        Repairs {
            empty_diagonal_chain: true,
            single_column_pivot: true,
            two_block_pairs: true,
            adjacent_end_markers: true,
        }
    }

    pub fn none() -> Self {
        Repairs {
            empty_diagonal_chain: false,
            single_column_pivot: false,
            two_block_pairs: false,
            adjacent_end_markers: false,
        }
    }
}

impl Default for Repairs {
    fn default() -> Self {
        Repairs::all()
    }
}

/// A compositional language and its oracle over the same column alphabet.
#[derive(Debug, Clone)]
pub struct Witness {
    pub n: usize,
    pub col: ColumnAlphabet,
    pub compositional: FragmentLang,
    pub oracle: Dfa,
}

impl Witness {
    /// A shortest word in the symmetric difference, if any.
    pub fn counterexample(&self, cap: usize) -> Result<Option<Word>> {
        let c = self.compositional.nfa().minimal_dfa(cap)?;
        c.difference_witness(&self.oracle)
    }

    pub fn agrees(&self, cap: usize) -> Result<bool> {
        Ok(self.counterexample(cap)?.is_none())
    }
}

struct Builder<'a> {
    col: &'a ColumnAlphabet,
    cap: usize,
}

impl Builder<'_> {
    fn topin(&self, mu: &str, re: &str) -> Result<Nfa> {
        topin_words(mu, re, self.col)?.reduce(self.cap)
    }

    fn len(&self, n: usize) -> Nfa {
        Nfa::exact_length(self.col.alphabet(), n)
    }

    fn all(&self) -> Nfa {
        Nfa::universal(self.col.alphabet())
    }

    fn and(&self, parts: &[&Nfa]) -> Result<Nfa> {
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = acc.intersect(p)?.reduce(self.cap)?;
        }
        Ok(acc)
    }

    fn or(&self, a: &Nfa, b: &Nfa) -> Result<Nfa> {
        a.union(b)?.reduce(self.cap)
    }

    fn cat(&self, parts: &[&Nfa]) -> Result<Nfa> {
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = acc.concat(p)?.reduce(self.cap)?;
        }
        Ok(acc)
    }

    /// Words with an infix in `n`.
    fn infix(&self, n: &Nfa) -> Result<Nfa> {
        let all = self.all();
        self.cat(&[&all, n, &all])
    }

    /// `topin(a, 0*) (topin(a, 1) ∩ topin(b, 1)) topin(a, 0*)`: `a` marks one
    /// position, and `b` is set there.
    fn marks_one_with(&self, a: &str, b: &str) -> Result<Nfa> {
        let zeros = self.topin(a, "0*")?;
        let here = self.and(&[&self.topin(a, "1")?, &self.topin(b, "1")?])?;
        self.cat(&[&zeros, &here, &zeros])
    }
}

fn height_len(f: &LengthFunction, m: usize) -> Result<usize> {
    let n = f.eval(m)?;
    if n > 8 {
        return Err(Error::cap("matrix dimension", n, 8));
    }
    Ok(n)
}

fn marker_words(n: usize, col: &ColumnAlphabet, repairs: Repairs, cap: usize) -> Result<Nfa> {
    let b = Builder { col, cap };
    let m1 = b.and(&[&b.len(n), &b.topin("blk", "0*1")?])?;
    let m2 = b.and(&[&b.len(n + 1), &b.topin("diag", "0*1")?])?;
    let chain = if repairs.empty_diagonal_chain {
        m2.star()
    } else {
        m2.plus()
    };
    let m3 = b.cat(&[&b.topin("diag", "1")?, &chain])?;
    let m4 = b.and(&[&m1.plus(), &m3, &b.topin("end", "0*1")?])?;
    let (diag, end, blk) = (
        col.attrs().index_of("diag")?,
        col.attrs().index_of("end")?,
        col.attrs().index_of("blk")?,
    );
    let rows = col.row_alphabet();
    let x = Nfa::letters(&rows, |t| {
        ((t >> diag & 1 == 1) && (t >> blk & 1 == 1)) == (t >> end & 1 == 1)
    });
    let m5 = top_preimage_words(&x.plus(), col)?;
    b.and(&[&m4, &m5])
}

/// Marker pictures: length `n^2` with `blk` at multiples of `n`, `diag` at
/// positions `1 mod n+1` and `end` at the last position.
pub fn witness_l0(f: &LengthFunction, m: usize, repairs: Repairs, cap: usize) -> Result<Witness> {
    let n = height_len(f, m)?;
    let col = ColumnAlphabet::of(&MARKER_ATTRS, m)?;
    let comp = FragmentLang::new(col.clone(), marker_words(n, &col, repairs, cap)?)?;
    let oracle = oracle_l0(n, &col, cap)?;
    Ok(Witness {
        n,
        col,
        compositional: comp,
        oracle,
    })
}

fn pivot_words(n: usize, m: usize, repairs: Repairs, cap: usize) -> Result<FragmentLang> {
    let marker_col = ColumnAlphabet::of(&MARKER_ATTRS, m)?;
    let l0 = FragmentLang::new(
        marker_col.clone(),
        marker_words(n, &marker_col, repairs, cap)?,
    )?;
    let col = ColumnAlphabet::of(&PIVOT_BUILD_ATTRS, m)?;
    let b = Builder { col: &col, cap };
    let l1 = exset_preimage(&col, &l0)?.nfa().clone();
    let l2 = b.marks_one_with("piv", "inp")?;
    let l3 = b.marks_one_with("row", "diag")?;
    let l4 = b.marks_one_with("col", "diag")?;
    let row_then_piv = b.and(&[&b.topin("row", "10*")?, &b.topin("piv", "0*1")?])?;
    let piv_then_row = b.and(&[&b.topin("piv", "10*")?, &b.topin("row", "0*1")?])?;
    let n5 = b.and(&[
        &b.topin("blk", "0*1|0*")?,
        &b.or(&row_then_piv, &piv_then_row)?,
    ])?;
    let l5 = b.infix(&n5)?;
    let rows = b.len(n);
    let rows = if repairs.single_column_pivot {
        rows.star()
    } else {
        rows.plus()
    };
    let stride = b.cat(&[&rows, &b.len(1)])?;
    let col_then_piv = b.and(&[&b.topin("col", "10*")?, &b.topin("piv", "0*1")?])?;
    let piv_then_col = b.and(&[&b.topin("piv", "10*")?, &b.topin("col", "0*1")?])?;
    let n6 = b.and(&[&stride, &b.or(&col_then_piv, &piv_then_col)?])?;
    let l6 = b.infix(&n6)?;
    let all = b.and(&[&l1, &l2, &l3, &l4, &l5, &l6])?;
    exset(&["diag", "blk"], &FragmentLang::new(col.clone(), all)?)?.reduce(cap)
}

/// Single blocks of length `n^2` with one pivot entry `(i, j)` on an `inp`
/// position, `row` at `(i, i)`, `col` at `(j, j)` and `end` last.
pub fn witness_l7(f: &LengthFunction, m: usize, repairs: Repairs, cap: usize) -> Result<Witness> {
    let n = height_len(f, m)?;
    let comp = pivot_words(n, m, repairs, cap)?;
    let col = comp.col().clone();
    let oracle = oracle_l7(n, &col, cap)?;
    Ok(Witness {
        n,
        col,
        compositional: comp,
        oracle,
    })
}

fn product_words(n: usize, m: usize, repairs: Repairs, cap: usize) -> Result<FragmentLang> {
    let l7 = pivot_words(n, m, repairs, cap)?;
    let col = l7.col().clone();
    let b = Builder { col: &col, cap };
    let l7 = l7.nfa().clone();
    let q = b.topin("end", "0*1")?;
    let stride = b.cat(&[&b.len(n).star(), &b.len(1)])?;
    let end_re = if repairs.adjacent_end_markers {
        "0*1(0+(1|ε)|1)"
    } else {
        "0*10+(1|ε)"
    };
    let nn = b.and(&[
        &b.topin("col", "1(0|1)*")?,
        &b.topin("row", "(0|1)*1")?,
        &b.topin("end", end_re)?,
        &stride,
    ])?;
    let l8 = b.and(&[&b.infix(&nn)?, &b.cat(&[&q, &q])?])?;
    let l8p = l8.plus();
    let l9 = b.or(&b.cat(&[&l8p, &q])?, &l8p)?;
    let mut l9s = b.or(&b.cat(&[&q, &l9])?, &q)?;
    if repairs.two_block_pairs {
        l9s = b.or(&l9s, &b.cat(&[&q, &q])?)?;
    }
    let chained = b.and(&[&l7.plus(), &l9, &l9s])?;
    let l10 = b.or(&chained, &l7)?;
    exset(
        &["piv", "row", "col"],
        &FragmentLang::new(col.clone(), l10)?,
    )?
    .reduce(cap)
}

/// Sequences of blocks of length `n^2`, each with `end` exactly last, whose
/// folded `inp` matrices have a nonzero Boolean product.
pub fn witness_l(f: &LengthFunction, m: usize, repairs: Repairs, cap: usize) -> Result<Witness> {
    let n = height_len(f, m)?;
    let comp = product_words(n, m, repairs, cap)?;
    let col = comp.col().clone();
    let oracle = oracle_l(n, &col, cap)?;
    Ok(Witness {
        n,
        col,
        compositional: comp,
        oracle,
    })
}

/// DFA over the row alphabet by breadth-first exploration; `step` returning
/// `None` sends the word to a rejecting sink.
fn explore<S: Clone + Eq + Hash>(
    rows: &Alphabet,
    start: S,
    cap: usize,
    step: impl Fn(&S, Letter) -> Option<S>,
    accept: impl Fn(&S) -> bool,
) -> Result<Dfa> {
    let mut ids: HashMap<S, u32> = HashMap::new();
    let mut states = vec![start.clone()];
    ids.insert(start, 0);
    let k = rows.size() as u32;
    let mut edges: Vec<Option<u32>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        for a in 0..k {
            let t = match step(&states[i], a) {
                None => None,
                Some(s) => Some(match ids.get(&s) {
                    Some(&id) => id,
                    None => {
                        if states.len() >= cap {
                            return Err(Error::cap("oracle states", states.len() + 1, cap));
                        }
                        let id = states.len() as u32;
                        ids.insert(s.clone(), id);
                        states.push(s);
                        id
                    }
                }),
            };
            edges.push(t);
        }
        i += 1;
    }
    let sink = states.len() as u32;
    let mut finals: Vec<bool> = states.iter().map(&accept).collect();
    finals.push(false);
    Dfa::from_fn(rows, states.len() + 1, 0, &finals, |q, a| {
        if q == sink {
            sink
        } else {
            edges[(q * k + a) as usize].unwrap_or(sink)
        }
    })
}

/// Lifts a row-alphabet DFA to all columns through the top row.
fn lift(d: &Dfa, col: &ColumnAlphabet, cap: usize) -> Result<Dfa> {
    Ok(top_preimage_words(&d.to_nfa(), col)?
        .determinize(cap)?
        .minimize())
}

fn bit(t: Letter, i: usize) -> bool {
    t >> i & 1 == 1
}

/// Counter automaton for the marker conditions.
pub fn oracle_l0(n: usize, col: &ColumnAlphabet, cap: usize) -> Result<Dfa> {
    let a = col.attrs();
    let (diag, end, blk) = (a.index_of("diag")?, a.index_of("end")?, a.index_of("blk")?);
    let last = n * n;
    let d = explore(
        &col.row_alphabet(),
        0usize,
        cap,
        |&k, t| {
            let k = k + 1;
            let ok = k <= last
                && bit(t, blk) == (k % n == 0)
                && bit(t, diag) == ((k - 1) % (n + 1) == 0)
                && bit(t, end) == (k == last);
            ok.then_some(k)
        },
        |&k| k == last,
    )?;
    lift(&d, col, cap)
}

/// Union over pivots `(i, j)` of counter automata for the pivot conditions.
pub fn oracle_l7(n: usize, col: &ColumnAlphabet, cap: usize) -> Result<Dfa> {
    let a = col.attrs();
    let idx: Vec<usize> = PIVOT_ATTRS
        .iter()
        .map(|x| a.index_of(x))
        .collect::<Result<_>>()?;
    let (inp, piv, row, cl, end) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
    let rows = col.row_alphabet();
    let last = n * n;
    let mut bld = NfaBuilder::new(rows.clone());
    for i in 1..=n {
        for j in 1..=n {
            let (pk, rk, ck) = (code(n, i, j)?, code(n, i, i)?, code(n, j, j)?);
            let chain: Vec<u32> = bld.add_states(last + 1).collect();
            bld.set_initial(chain[0]);
            bld.set_final(chain[last], true);
            for k in 1..=last {
                for t in 0..rows.size() as u32 {
                    let ok = bit(t, end) == (k == last)
                        && (!bit(t, piv) || bit(t, inp))
                        && bit(t, piv) == (k == pk)
                        && bit(t, row) == (k == rk)
                        && bit(t, cl) == (k == ck);
                    if ok {
                        bld.add_transition(chain[k - 1], t, chain[k]);
                    }
                }
            }
        }
    }
    let d = bld.build()?.determinize(cap)?;
    lift(&d, col, cap)
}

/// Tracks the product of completed blocks, the position in the current
/// block and the bits read so far.
pub fn oracle_l(n: usize, col: &ColumnAlphabet, cap: usize) -> Result<Dfa> {
    let a = col.attrs();
    let (inp, end) = (a.index_of("inp")?, a.index_of("end")?);
    let last = n * n;
    if last > 20 {
        return Err(Error::cap("block length", last, 20));
    }
    // (product so far, position, bits in code order)
    let start: (Option<usize>, usize, u32) = (None, 0, 0);
    let d = explore(
        &col.row_alphabet(),
        start,
        cap,
        |&(prod, k, bits), t| {
            let k = k + 1;
            if k > last || bit(t, end) != (k == last) {
                return None;
            }
            let bits = bits | (bit(t, inp) as u32) << (k - 1);
            if k < last {
                return Some((prod, k, bits));
            }
            let word: Vec<bool> = (0..last).map(|p| bits >> p & 1 == 1).collect();
            let block = fold(n, &word).expect("length checked");
            let next = match prod {
                None => block,
                Some(p) => bn_element(n, p).mul(&block).expect("same dimension"),
            };
            Some((Some(bn_index(&next)), 0, 0))
        },
        |&(prod, k, _)| k == 0 && prod.is_some_and(|p| p != 0),
    )?;
    lift(&d, col, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::DEFAULT_STATE_CAP;
    use crate::boolmat::{bn_monoid, unfold, BoolMatrix};

    const CAP: usize = DEFAULT_STATE_CAP;

    fn f(n: usize) -> LengthFunction {
        LengthFunction::constant(n, [1, 2])
    }

    /// Column word with the given top rows and all-zero lower rows.
    fn word(col: &ColumnAlphabet, tops: &[u32]) -> Word {
        tops.iter()
            .map(|&t| {
                let mut rows = vec![0; col.height()];
                rows[0] = t;
                col.encode(&rows).unwrap()
            })
            .collect()
    }

    /// Top rows of a block folding to `a`, over `[inp, end]`.
    fn block(a: &BoolMatrix) -> Vec<u32> {
        let bits = unfold(a);
        let last = bits.len();
        bits.iter()
            .enumerate()
            .map(|(k, &b)| b as u32 | ((k + 1 == last) as u32) << 1)
            .collect()
    }

    #[test]
    fn marker_oracle_examples() {
        let col = ColumnAlphabet::of(&MARKER_ATTRS, 1).unwrap();
        let one = oracle_l0(1, &col, CAP).unwrap();
        assert_eq!(one.enumerate(3, 10).unwrap(), vec![vec![0b111]]);
        // n = 2: blk at 2,4; diag at 1,4; end at 4
        let two = oracle_l0(2, &col, CAP).unwrap();
        assert_eq!(
            two.enumerate(5, 10).unwrap(),
            vec![vec![0b001, 0b100, 0b000, 0b111]]
        );
    }

    #[test]
    fn pivot_oracle_examples() {
        let col = ColumnAlphabet::of(&PIVOT_ATTRS, 1).unwrap();
        let one = oracle_l7(1, &col, CAP).unwrap();
        assert_eq!(one.enumerate(2, 10).unwrap(), vec![vec![0b11111]]);
        // n = 2: one accepted word per pivot and free inp off the pivot
        let two = oracle_l7(2, &col, CAP).unwrap();
        let words = two.enumerate(4, 1000).unwrap();
        assert_eq!(words.len(), 4 * 8);
        assert!(words.iter().all(|w| w.len() == 4 && w[3] & 0b10000 != 0));
    }

    #[test]
    fn product_oracle_examples() {
        let col = ColumnAlphabet::of(&PRODUCT_ATTRS, 1).unwrap();
        let d = oracle_l(2, &col, CAP).unwrap();
        let id = BoolMatrix::identity(2);
        let zero = BoolMatrix::zero(2);
        let nil = BoolMatrix::from_rows(&["01", "00"]).unwrap();
        assert!(d.accepts(&word(&col, &block(&id))));
        assert!(!d.accepts(&word(&col, &block(&zero))));
        let mut two = block(&nil);
        two.extend(block(&nil));
        assert!(!d.accepts(&word(&col, &two)));
        let mut ok = block(&nil);
        ok.extend(block(&id));
        assert!(d.accepts(&word(&col, &ok)));
        // a wrong end marker is rejected
        let mut bad = block(&id);
        bad[0] |= 0b10;
        assert!(!d.accepts(&word(&col, &bad)));
        assert!(!d.accepts(&[]));
    }

    #[test]
    fn product_oracle_matches_matrix_products() {
        let col = ColumnAlphabet::of(&PRODUCT_ATTRS, 1).unwrap();
        let d = oracle_l(2, &col, CAP).unwrap();
        let bn = bn_monoid(2, 16).unwrap();
        for x in 0..16 {
            for y in 0..16 {
                let mut w = block(&bn_element(2, x));
                w.extend(block(&bn_element(2, y)));
                assert_eq!(d.accepts(&word(&col, &w)), bn.mul(x as u32, y as u32) != 0);
            }
        }
    }

    #[test]
    fn compositional_markers_match_oracle() {
        for (n, m) in [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)] {
            let w = witness_l0(&f(n), m, Repairs::all(), CAP).unwrap();
            assert_eq!(w.counterexample(CAP).unwrap(), None, "n={n} m={m}");
        }
    }

    #[test]
    fn compositional_pivots_match_oracle() {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let w = witness_l7(&f(n), m, Repairs::all(), CAP).unwrap();
            assert_eq!(w.counterexample(CAP).unwrap(), None, "n={n} m={m}");
        }
    }

    #[test]
    fn compositional_products_match_oracle() {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let w = witness_l(&f(n), m, Repairs::all(), CAP).unwrap();
            assert_eq!(w.counterexample(CAP).unwrap(), None, "n={n} m={m}");
        }
    }

    #[test]
    fn each_repair_is_needed() {
        let cases: [(fn(&mut Repairs), usize); 4] = [
            (|r| r.empty_diagonal_chain = false, 1),
            (|r| r.single_column_pivot = false, 2),
            (|r| r.two_block_pairs = false, 2),
            (|r| r.adjacent_end_markers = false, 1),
        ];
        for (drop, n) in cases {
            let mut r = Repairs::all();
            drop(&mut r);
            let w = witness_l(&f(n), 1, r, CAP).unwrap();
            assert!(w.counterexample(CAP).unwrap().is_some(), "{r:?} n={n}");
        }
    }
}
