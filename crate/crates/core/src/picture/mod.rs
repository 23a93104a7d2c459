//! Pictures of fixed height as words over column letters.
//!
//! A picture of height `m` over attributes `I` is a word whose letters are
//! columns: `m` row letters, each a subset of `I` (attribute `i` is bit `i`).
//! Column letters are numbered with the top row as the most significant
//! base-`2^|I|` digit. A [`FragmentLang`] is a set of such words that never
//! contains the empty word.

mod block;
mod embed;
mod witness;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automata::{compile, Alphabet, Letter, Nfa, NfaJson, Word};
use crate::error::{Error, Result};

pub use block::{
    block_recognizer, shipped_toys, verify_semexists, BlockRecognizer, SemexistsReport, Toy,
};
pub use embed::{block_word, embed_bn, EmbedReport};
pub use witness::{
    oracle_l, oracle_l0, oracle_l7, witness_l, witness_l0, witness_l7, Repairs, Witness,
    MARKER_ATTRS, PIVOT_ATTRS, PIVOT_BUILD_ATTRS, PRODUCT_ATTRS,
};

/// Largest column alphabet that may be built.
pub const COLUMN_ALPHABET_CAP: usize = 1 << 22;

/// Ordered, duplicate-free attribute names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct AttributeSet {
    names: Vec<String>,
}

impl AttributeSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate attribute `{n}`")));
            }
        }
        if names.len() > 16 {
            return Err(Error::cap("attributes", names.len(), 16));
        }
        Ok(AttributeSet { names })
    }

    pub fn empty() -> Self {
        AttributeSet { names: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    /// The attributes not in `drop`, in the original order.
    pub fn without(&self, drop: &[&str]) -> Result<Self> {
        for d in drop {
            self.index_of(d)?;
        }
        Ok(AttributeSet {
            names: self
                .names
                .iter()
                .filter(|n| !drop.contains(&n.as_str()))
                .cloned()
                .collect(),
        })
    }
}

impl TryFrom<Vec<String>> for AttributeSet {
    type Error = Error;

    fn try_from(v: Vec<String>) -> Result<Self> {
        AttributeSet::new(v)
    }
}

impl From<AttributeSet> for Vec<String> {
    fn from(a: AttributeSet) -> Self {
        a.names
    }
}

/// The alphabet `(2^I)^m` of columns of height `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnAlphabet {
    attrs: AttributeSet,
    m: usize,
    alphabet: Alphabet,
}

impl ColumnAlphabet {
    pub fn new(attrs: AttributeSet, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::OutOfRange {
                what: "height",
                value: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        let bits = attrs.len() * m;
        if bits >= 63 || (1usize << bits) > COLUMN_ALPHABET_CAP {
            return Err(Error::cap(
                "column alphabet size",
                1u128 << bits.min(127),
                COLUMN_ALPHABET_CAP,
            ));
        }
        let alphabet = Alphabet::new(1 << bits)?;
        Ok(ColumnAlphabet { attrs, m, alphabet })
    }

    /// Convenience constructor from attribute names.
    pub fn of(names: &[&str], m: usize) -> Result<Self> {
        ColumnAlphabet::new(AttributeSet::new(names.iter().copied())?, m)
    }

    pub fn attrs(&self) -> &AttributeSet {
        &self.attrs
    }

    pub fn height(&self) -> usize {
        self.m
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.alphabet.size()
    }

    /// Number of row letters, `2^|I|`.
    pub fn row_size(&self) -> usize {
        1 << self.attrs.len()
    }

    /// Row letters as an alphabet; labels are the attribute bits, attribute
    /// 0 first.
    pub fn row_alphabet(&self) -> Alphabet {
        let k = self.attrs.len();
        if k == 0 {
            return Alphabet::with_labels(["-"]).expect("one letter");
        }
        Alphabet::with_labels((0..self.row_size()).map(|x| row_bits(x as u32, k)))
            .expect("non-empty")
    }

    /// Column letter from row letters, top row first.
    pub fn encode(&self, rows: &[u32]) -> Result<Letter> {
        if rows.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                found: rows.len(),
            });
        }
        let k = self.attrs.len();
        let mut x: u32 = 0;
        for &r in rows {
            if r as usize >= self.row_size() {
                return Err(Error::OutOfRange {
                    what: "row letter",
                    value: r as usize,
                    min: 0,
                    max: self.row_size() - 1,
                });
            }
            x = (x << k) | r;
        }
        Ok(x)
    }

    /// Row `r` (0 = top) of a column letter.
    #[inline]
    pub fn row(&self, a: Letter, r: usize) -> u32 {
        let k = self.attrs.len();
        let shift = k * (self.m - 1 - r);
        (a >> shift) & ((1u32 << k) - 1)
    }

    pub fn rows(&self, a: Letter) -> Vec<u32> {
        (0..self.m).map(|r| self.row(a, r)).collect()
    }

    pub fn top(&self, a: Letter) -> u32 {
        self.row(a, 0)
    }

    pub fn has(&self, a: Letter, r: usize, attr: usize) -> bool {
        self.row(a, r) >> attr & 1 == 1
    }

    /// Letter map onto the row letter of row `r`.
    pub fn row_map(&self, r: usize) -> Vec<Letter> {
        (0..self.size() as u32).map(|a| self.row(a, r)).collect()
    }

    /// The map dropping the attributes absent from `target` in every row.
    /// `target` must have a subset of the attributes and the same height.
    pub fn restriction_to(&self, target: &ColumnAlphabet) -> Result<Vec<Letter>> {
        if target.m != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: target.m,
            });
        }
        let pos: Vec<usize> = target
            .attrs
            .names()
            .iter()
            .map(|n| self.attrs.index_of(n))
            .collect::<Result<_>>()?;
        let row_map: Vec<u32> = (0..self.row_size() as u32)
            .map(|x| {
                pos.iter()
                    .enumerate()
                    .fold(0, |acc, (j, &i)| acc | ((x >> i & 1) << j))
            })
            .collect();
        let kt = target.attrs.len();
        Ok((0..self.size() as u32)
            .map(|a| {
                (0..self.m).fold(0u32, |acc, r| {
                    (acc << kt) | row_map[self.row(a, r) as usize]
                })
            })
            .collect())
    }

    /// Renders a column as its rows' attribute bits separated by `/`.
    pub fn format_letter(&self, a: Letter) -> String {
        let k = self.attrs.len();
        let rows: Vec<String> = self
            .rows(a)
            .into_iter()
            .map(|r| if k == 0 { "-".into() } else { row_bits(r, k) })
            .collect();
        rows.join("/")
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        w.iter()
            .map(|&a| format!("[{}]", self.format_letter(a)))
            .collect::<Vec<_>>()
            .join("")
    }
}

fn row_bits(x: u32, k: usize) -> String {
    (0..k)
        .map(|i| if x >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Lengths as a function of height: an explicit table or the tower `s^k`
/// with `s(m) = 2^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthFunction {
    Table(BTreeMap<usize, usize>),
    Tower(u32),
}

impl LengthFunction {
    /// The constant table `m -> n` on the given heights.
    pub fn constant(n: usize, heights: impl IntoIterator<Item = usize>) -> Self {
        LengthFunction::Table(heights.into_iter().map(|m| (m, n)).collect())
    }

    pub fn eval(&self, m: usize) -> Result<usize> {
        match self {
            LengthFunction::Table(t) => match t.get(&m) {
                Some(&v) if v >= 1 => Ok(v),
                Some(_) => Err(Error::Invalid(format!(
                    "length at height {m} must be at least 1"
                ))),
                None => Err(Error::Invalid(format!(
                    "length function undefined at height {m}"
                ))),
            },
            LengthFunction::Tower(k) => {
                let mut v = m as u128;
                for _ in 0..*k {
                    if v >= 64 {
                        return Err(Error::cap("tower length", u128::MAX, u64::MAX));
                    }
                    v = 1u128 << v;
                }
                usize::try_from(v).map_err(|_| Error::cap("tower length", v, usize::MAX))
            }
        }
    }

    /// Parses `k=v,k=v` tables.
    pub fn parse_table(s: &str) -> Result<Self> {
        let mut t = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("expected height=length, got `{part}`")))?;
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad height `{k}`")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad length `{v}`")))?;
            if k == 0 || v == 0 {
                return Err(Error::Invalid("heights and lengths start at 1".into()));
            }
            t.insert(k, v);
        }
        Ok(LengthFunction::Table(t))
    }
}

/// A set of non-empty pictures of one height, as a word language over a
/// column alphabet.
#[derive(Debug, Clone)]
pub struct FragmentLang {
    col: ColumnAlphabet,
    nfa: Nfa,
}

impl FragmentLang {
    /// Wraps a word language, discarding the empty word.
    pub fn new(col: ColumnAlphabet, nfa: Nfa) -> Result<Self> {
        if nfa.alphabet().size() != col.size() {
            return Err(Error::AlphabetMismatch(col.size(), nfa.alphabet().size()));
        }
        let nfa = nfa.with_epsilon(false);
        Ok(FragmentLang { col, nfa })
    }

    pub fn empty(col: &ColumnAlphabet) -> Self {
        FragmentLang {
            col: col.clone(),
            nfa: Nfa::empty(col.alphabet()),
        }
    }

    /// All non-empty pictures of this height.
    pub fn full(col: &ColumnAlphabet) -> Self {
        FragmentLang {
            col: col.clone(),
            nfa: Nfa::nonempty_universal(col.alphabet()),
        }
    }

    pub fn col(&self) -> &ColumnAlphabet {
        &self.col
    }

    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.nfa.accepts(w)
    }

    fn same_col(&self, other: &FragmentLang) -> Result<()> {
        if self.col != other.col {
            return Err(Error::Invalid(
                "fragments over different column alphabets".into(),
            ));
        }
        Ok(())
    }

    pub fn intersect(&self, other: &FragmentLang) -> Result<FragmentLang> {
        self.same_col(other)?;
        FragmentLang::new(self.col.clone(), self.nfa.intersect(&other.nfa)?)
    }

    pub fn union(&self, other: &FragmentLang) -> Result<FragmentLang> {
        self.same_col(other)?;
        FragmentLang::new(self.col.clone(), self.nfa.union(&other.nfa)?)
    }

    pub fn concat(&self, other: &FragmentLang) -> Result<FragmentLang> {
        self.same_col(other)?;
        FragmentLang::new(self.col.clone(), self.nfa.concat(&other.nfa)?)
    }

    pub fn plus(&self) -> FragmentLang {
        FragmentLang {
            col: self.col.clone(),
            nfa: self.nfa.plus(),
        }
    }

    /// Replaces the automaton by a minimal one when that is smaller.
    pub fn reduce(&self, cap: usize) -> Result<FragmentLang> {
        Ok(FragmentLang {
            col: self.col.clone(),
            nfa: self.nfa.reduce(cap)?,
        })
    }

    pub fn is_equivalent(&self, other: &FragmentLang, cap: usize) -> Result<bool> {
        self.same_col(other)?;
        self.nfa.is_equivalent(&other.nfa, cap)
    }

    pub fn enumerate(
        &self,
        max_len: usize,
        state_cap: usize,
        word_cap: usize,
    ) -> Result<Vec<Word>> {
        self.nfa.enumerate(max_len, state_cap, word_cap)
    }

    pub fn to_json(&self) -> FragmentJson {
        FragmentJson {
            attrs: self.col.attrs.clone(),
            m: self.col.m,
            nfa: self.nfa.to_json(),
        }
    }

    pub fn from_json(j: &FragmentJson) -> Result<Self> {
        let col = ColumnAlphabet::new(j.attrs.clone(), j.m)?;
        FragmentLang::new(col, Nfa::from_json(&j.nfa)?)
    }
}

/// The fragment interchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentJson {
    pub attrs: AttributeSet,
    pub m: usize,
    pub nfa: NfaJson,
}

/// Words whose top row, as a word over row letters, lies in `row_lang`.
/// The result may contain the empty word when `row_lang` does.
pub fn top_preimage_words(row_lang: &Nfa, col: &ColumnAlphabet) -> Result<Nfa> {
    row_preimage_words(row_lang, 0, col)
}

/// Like [`top_preimage_words`] for any row `r` (0 = top).
pub fn row_preimage_words(row_lang: &Nfa, r: usize, col: &ColumnAlphabet) -> Result<Nfa> {
    if row_lang.alphabet().size() != col.row_size() {
        return Err(Error::AlphabetMismatch(
            col.row_size(),
            row_lang.alphabet().size(),
        ));
    }
    if r >= col.height() {
        return Err(Error::OutOfRange {
            what: "row",
            value: r,
            min: 0,
            max: col.height() - 1,
        });
    }
    row_lang.map_letters_preimage(&col.row_map(r), col.alphabet())
}

pub fn top_preimage(row_lang: &Nfa, col: &ColumnAlphabet) -> Result<FragmentLang> {
    FragmentLang::new(col.clone(), top_preimage_words(row_lang, col)?)
}

/// Words whose top row, projected to attribute `mu`, matches the regular
/// expression `re` over `{0,1}`. May contain the empty word.
pub fn topin_words(mu: &str, re: &str, col: &ColumnAlphabet) -> Result<Nfa> {
    row_attr_words(mu, re, 0, col)
}

/// Like [`topin_words`] for row `r`.
pub fn row_attr_words(mu: &str, re: &str, r: usize, col: &ColumnAlphabet) -> Result<Nfa> {
    let i = col.attrs().index_of(mu)?;
    let bits = compile(re, &Alphabet::binary())?;
    let proj: Vec<Letter> = (0..col.row_size() as u32).map(|x| x >> i & 1).collect();
    let on_rows = bits.map_letters_preimage(&proj, &col.row_alphabet())?;
    row_preimage_words(&on_rows, r, col)
}

pub fn topin(mu: &str, re: &str, col: &ColumnAlphabet) -> Result<FragmentLang> {
    FragmentLang::new(col.clone(), topin_words(mu, re, col)?)
}

/// All words of length exactly `n`.
pub fn pics_of_length(n: usize, col: &ColumnAlphabet) -> FragmentLang {
    FragmentLang {
        col: col.clone(),
        nfa: Nfa::exact_length(col.alphabet(), n),
    }
}

/// All pictures of length `f(m)` at the alphabet's height.
pub fn fpics(f: &LengthFunction, col: &ColumnAlphabet) -> Result<FragmentLang> {
    Ok(pics_of_length(f.eval(col.height())?, col))
}

/// Drops the attributes `drop` in every row (letter-map image).
pub fn exset(drop: &[&str], lang: &FragmentLang) -> Result<FragmentLang> {
    let target = ColumnAlphabet::new(lang.col.attrs.without(drop)?, lang.col.m)?;
    let h = lang.col.restriction_to(&target)?;
    FragmentLang::new(
        target.clone(),
        lang.nfa.map_letters_image(&h, target.alphabet())?,
    )
}

/// All pictures over `full` whose restriction to the attributes of `lang`
/// lies in `lang` (letter-map preimage).
pub fn exset_preimage(full: &ColumnAlphabet, lang: &FragmentLang) -> Result<FragmentLang> {
    let h = full.restriction_to(&lang.col)?;
    FragmentLang::new(
        full.clone(),
        lang.nfa.map_letters_preimage(&h, full.alphabet())?,
    )
}

/// Pictures in which every attribute of `k` marks exactly one position.
pub fn unique_fragment(col: &ColumnAlphabet, k: &[&str]) -> Result<FragmentLang> {
    let idx: Vec<usize> = k
        .iter()
        .map(|n| col.attrs().index_of(n))
        .collect::<Result<_>>()?;
    if idx.len() > 20 {
        return Err(Error::cap("unique attributes", idx.len(), 20));
    }
    // state: bitmask of attributes already seen; one extra sink for overflow
    let full = (1u32 << idx.len()) - 1;
    let sink = full + 1;
    let counts: Vec<Vec<u32>> = (0..col.size() as u32)
        .map(|a| {
            idx.iter()
                .map(|&i| (0..col.height()).filter(|&r| col.has(a, r, i)).count() as u32)
                .collect()
        })
        .collect();
    let mut finals = vec![false; sink as usize + 1];
    finals[full as usize] = true;
    let d =
        crate::automata::Dfa::from_fn(col.alphabet(), sink as usize + 1, 0, &finals, |q, a| {
            if q == sink {
                return sink;
            }
            let mut s = q;
            for (j, &c) in counts[a as usize].iter().enumerate() {
                if c > 1 || (c == 1 && s >> j & 1 == 1) {
                    return sink;
                }
                if c == 1 {
                    s |= 1 << j;
                }
            }
            s
        })?;
    FragmentLang::new(col.clone(), d.minimize().to_nfa())
}

/// Pictures obtained by erasing attribute `mu` from a picture of `lang` in
/// which `mu` marks exactly one position.
pub fn semexists(mu: &str, lang: &FragmentLang) -> Result<FragmentLang> {
    let unique = unique_fragment(&lang.col, &[mu])?;
    exset(&[mu], &lang.intersect(&unique)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn all_words(k: u32, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut layer: Vec<Word> = vec![vec![]];
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..k).map(move |a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    #[test]
    fn column_alphabet_sizes() {
        assert_eq!(
            ColumnAlphabet::new(AttributeSet::empty(), 3)
                .unwrap()
                .size(),
            1
        );
        assert_eq!(ColumnAlphabet::of(&["mu"], 1).unwrap().size(), 2);
        let c = ColumnAlphabet::of(&["a", "b"], 2).unwrap();
        assert_eq!(c.size(), 16);
        for a in 0..16 {
            assert_eq!(c.encode(&c.rows(a)).unwrap(), a);
        }
        // top row is the most significant digit
        assert_eq!(c.encode(&[1, 0]).unwrap(), 4);
        assert_eq!(c.format_letter(4), "10/00");
        assert!(ColumnAlphabet::of(&["a", "a"], 1).is_err());
    }

    #[test]
    fn restriction_maps() {
        let full = ColumnAlphabet::of(&["x", "y", "z"], 2).unwrap();
        let part = ColumnAlphabet::of(&["z", "x"], 2).unwrap();
        let h = full.restriction_to(&part).unwrap();
        for a in 0..full.size() as u32 {
            for r in 0..2 {
                assert_eq!(full.has(a, r, 0), part.has(h[a as usize], r, 1));
                assert_eq!(full.has(a, r, 2), part.has(h[a as usize], r, 0));
            }
        }
    }

    #[test]
    fn topin_examples() {
        let c1 = ColumnAlphabet::of(&["mu"], 1).unwrap();
        let l = topin("mu", "0*1", &c1).unwrap();
        assert!(l.accepts(&[1]) && l.accepts(&[0, 0, 1]) && !l.accepts(&[1, 0]));
        let one = topin("mu", "1", &c1).unwrap();
        assert_eq!(one.enumerate(3, 100, 100).unwrap(), vec![vec![1]]);
        // height 2: only the top row is constrained
        let c2 = ColumnAlphabet::of(&["mu"], 2).unwrap();
        let l2 = topin("mu", "0*1", &c2).unwrap();
        for w in all_words(4, 3) {
            let top: Word = w.iter().map(|&a| c2.top(a)).collect();
            assert_eq!(l2.accepts(&w), l.accepts(&top), "{w:?}");
        }
        assert!(topin("nu", "1", &c1).is_err());
    }

    #[test]
    fn top_preimage_of_word() {
        let c = ColumnAlphabet::of(&["a"], 2).unwrap();
        let rows = c.row_alphabet();
        let ab = compile("01", &rows).unwrap();
        let l = top_preimage(&ab, &c).unwrap();
        let got: BTreeSet<Word> = l.enumerate(2, 100, 100).unwrap().into_iter().collect();
        let want: BTreeSet<Word> = all_words(4, 2)
            .into_iter()
            .filter(|w| w.len() == 2 && c.top(w[0]) == 0 && c.top(w[1]) == 1)
            .collect();
        assert_eq!(got, want);
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn length_languages() {
        let c = ColumnAlphabet::of(&["mu"], 1).unwrap();
        assert_eq!(
            pics_of_length(4, &c).enumerate(4, 100, 100).unwrap().len(),
            16
        );
        let f = LengthFunction::constant(2, [1]);
        let one = pics_of_length(1, &c);
        let lhs = fpics(&f, &c).unwrap().concat(&one).unwrap();
        let g = LengthFunction::constant(3, [1]);
        assert!(lhs.is_equivalent(&fpics(&g, &c).unwrap(), 100).unwrap());
        assert_eq!(LengthFunction::Tower(2).eval(2).unwrap(), 16);
        assert_eq!(
            LengthFunction::parse_table("1=2,2=3")
                .unwrap()
                .eval(2)
                .unwrap(),
            3
        );
        assert!(LengthFunction::Tower(3).eval(7).unwrap_err().is_cap());
    }

    #[test]
    fn unique_and_exset() {
        let c = ColumnAlphabet::of(&["nu"], 1).unwrap();
        let u = unique_fragment(&c, &["nu"]).unwrap();
        for w in all_words(2, 4) {
            assert_eq!(u.accepts(&w), w.iter().filter(|&&a| a == 1).count() == 1);
        }
        let c2 = ColumnAlphabet::of(&["nu"], 2).unwrap();
        let u2 = unique_fragment(&c2, &["nu"]).unwrap();
        for w in all_words(4, 3) {
            let marks: u32 = w.iter().map(|&a| a.count_ones()).sum();
            assert_eq!(u2.accepts(&w), marks == 1);
        }
        let none = unique_fragment(&c2, &[]).unwrap();
        assert!(none.is_equivalent(&FragmentLang::full(&c2), 100).unwrap());
        // exset with nothing dropped is the identity; exset then preimage contains the original
        let l = topin("nu", "0*10*", &c2).unwrap();
        assert!(exset(&[], &l).unwrap().is_equivalent(&l, 100).unwrap());
        let back = exset_preimage(&c2, &exset(&["nu"], &l).unwrap()).unwrap();
        assert!(l
            .nfa()
            .intersect(back.nfa())
            .unwrap()
            .is_equivalent(l.nfa(), 100)
            .unwrap());
    }

    #[test]
    fn semexists_of_single_mark() {
        let c = ColumnAlphabet::of(&["mu"], 1).unwrap();
        let l = topin("mu", "0*10*", &c).unwrap();
        let s = semexists("mu", &l).unwrap();
        assert_eq!(s.col().size(), 1);
        assert_eq!(s.enumerate(4, 100, 100).unwrap().len(), 4);
        assert!(semexists("mu", &FragmentLang::empty(&c))
            .unwrap()
            .enumerate(4, 10, 10)
            .unwrap()
            .is_empty());
        let unmarked = topin("mu", "0+", &c).unwrap();
        assert!(semexists("mu", &unmarked)
            .unwrap()
            .enumerate(4, 10, 10)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn json_roundtrip() {
        let c = ColumnAlphabet::of(&["inp", "end"], 1).unwrap();
        let l = topin("end", "0*1", &c).unwrap();
        let text = serde_json::to_string(&l.to_json()).unwrap();
        assert!(text.starts_with("{\"attrs\":[\"inp\",\"end\"],\"m\":1"));
        let back = FragmentLang::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(back.is_equivalent(&l, 100).unwrap());
    }
}
