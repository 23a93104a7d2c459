use serde::Serialize;

use super::{
    exset, row_attr_words, semexists, topin, topin_words, AttributeSet, ColumnAlphabet,
    FragmentLang,
};
use crate::automata::{Letter, Word};
use crate::error::{Error, Result};
use crate::semigroup::{fold_block, syntactic_monoid, u1, BlockElement, FiniteMonoid, MonoidView};

/// `U_1 □ M` recognizer for the erasure of one attribute, with one block
/// element per reduced column letter.
#[derive(Debug, Clone)]
pub struct BlockRecognizer {
    mu: String,
    full: ColumnAlphabet,
    reduced: ColumnAlphabet,
    monoid: FiniteMonoid,
    u: FiniteMonoid,
    /// Reduced letter to the full letter with `mu` cleared.
    embed: Vec<Letter>,
    zeta: Vec<BlockElement>,
}

const U_ONE: u32 = 0;
const U_ZERO: u32 = 1;

impl BlockRecognizer {
    pub fn mu(&self) -> &str {
        &self.mu
    }

    pub fn reduced(&self) -> &ColumnAlphabet {
        &self.reduced
    }

    /// The syntactic monoid `M` with its accepting set.
    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn letter_image(&self, a: Letter) -> &BlockElement {
        &self.zeta[a as usize]
    }

    /// The product of the letter images of `w`.
    pub fn image(&self, w: &[Letter]) -> BlockElement {
        let letters: Vec<BlockElement> = w.iter().map(|&a| self.zeta[a as usize].clone()).collect();
        fold_block(&letters, &self.u, &self.monoid)
    }

    /// `w` is accepted iff its image has `G(1, 1) = 0`.
    pub fn accepts(&self, w: &[Letter]) -> bool {
        let one = self.monoid.identity();
        self.image(w).get(self.monoid.size(), one, one) == U_ZERO
    }

    /// The full column with `mu` cleared in every row.
    pub fn embed_letter(&self, a: Letter) -> Letter {
        self.embed[a as usize]
    }

    /// Size of `U_1 □ M` as a power of two times `|M|`: `(|M|^2, |M|)`.
    pub fn product_size(&self) -> (usize, usize) {
        let s = self.monoid.size();
        (s * s, s)
    }
}

/// Builds the recognizer: `ζ(a) = (F, η(σ(a)))` where `σ(a)` clears `mu` and
/// `F(n1, n2) = 0` iff setting `mu` in one row of `σ(a)` gives a letter `b`
/// with `n1 η(b) n2` accepting.
pub fn block_recognizer(
    mu: &str,
    lang: &FragmentLang,
    state_cap: usize,
    monoid_cap: usize,
) -> Result<BlockRecognizer> {
    let full = lang.col().clone();
    let mi = full.attrs().index_of(mu)?;
    let reduced = ColumnAlphabet::new(full.attrs().without(&[mu])?, full.height())?;
    let d = lang.nfa().minimal_dfa(state_cap)?;
    let monoid = syntactic_monoid(&d, monoid_cap)?;
    let accept = monoid
        .accept()
        .expect("syntactic monoid has an accepting set")
        .to_vec();
    let (_, eta) = monoid.letters().expect("syntactic monoid has letters");
    let eta = eta.to_vec();
    let h = full.restriction_to(&reduced)?;
    let mut embed = vec![u32::MAX; reduced.size()];
    for b in 0..full.size() as u32 {
        if (0..full.height()).all(|r| !full.has(b, r, mi)) {
            embed[h[b as usize] as usize] = b;
        }
    }
    let ns = monoid.size();
    let mut zeta = Vec::with_capacity(reduced.size());
    for a in 0..reduced.size() as u32 {
        let base = embed[a as usize];
        let marked: Vec<u32> = (0..full.height())
            .map(|r| {
                eta[(base | 1 << (mi + full.attrs().len() * (full.height() - 1 - r))) as usize]
            })
            .collect();
        let mut f = Vec::with_capacity(ns * ns);
        for n1 in 0..ns as u32 {
            for n2 in 0..ns as u32 {
                let hit = marked
                    .iter()
                    .any(|&x| accept[monoid.mul(monoid.mul(n1, x), n2) as usize]);
                f.push(if hit { U_ZERO } else { U_ONE });
            }
        }
        zeta.push(BlockElement {
            f,
            n: eta[base as usize],
        });
    }
    Ok(BlockRecognizer {
        mu: mu.to_string(),
        full,
        reduced,
        monoid,
        u: u1(),
        embed,
        zeta,
    })
}

/// Exhaustive comparison of the recognizer with the erasure language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemexistsReport {
    pub mu: String,
    pub attrs: AttributeSet,
    pub m: usize,
    pub max_len: usize,
    pub monoid_size: usize,
    pub words_checked: usize,
    pub accepted: usize,
    /// First word on which the recognizer and the erasure language differ.
    pub counterexample: Option<String>,
    /// Projection of each letter image equals the letter's syntactic class.
    pub projection_matches_letters: bool,
    /// Projection of each word image equals the word's syntactic class.
    pub projection_matches_words: bool,
}

impl SemexistsReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
            && self.projection_matches_letters
            && self.projection_matches_words
    }
}

/// Compares [`block_recognizer`] with [`semexists`] on every non-empty word
/// of length at most `max_len`.
pub fn verify_semexists(
    mu: &str,
    lang: &FragmentLang,
    max_len: usize,
    state_cap: usize,
    monoid_cap: usize,
    word_cap: usize,
) -> Result<SemexistsReport> {
    let rec = block_recognizer(mu, lang, state_cap, monoid_cap)?;
    let target = semexists(mu, lang)?.nfa().minimal_dfa(state_cap)?;
    let k = rec.reduced.size() as u64;
    let total: u64 = (1..=max_len as u32)
        .map(|l| k.saturating_pow(l))
        .fold(0u64, u64::saturating_add);
    if total > word_cap as u64 {
        return Err(Error::cap("words to check", total as u128, word_cap));
    }
    let m = &rec.monoid;
    let projection_matches_letters =
        (0..k as u32).all(|a| Some(rec.zeta[a as usize].n) == m.eval(&[rec.embed[a as usize]]));
    let mut projection_matches_words = true;
    let mut counterexample = None;
    let mut accepted = 0;
    let mut checked = 0;
    let mut layer: Vec<Word> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..k as u32).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        for w in &layer {
            checked += 1;
            let got = rec.accepts(w);
            accepted += got as usize;
            if got != target.accepts(w) && counterexample.is_none() {
                counterexample = Some(rec.reduced.format_word(w));
            }
            let sigma: Word = w.iter().map(|&a| rec.embed[a as usize]).collect();
            if Some(rec.image(w).n) != m.eval(&sigma) {
                projection_matches_words = false;
            }
        }
    }
    Ok(SemexistsReport {
        mu: mu.to_string(),
        attrs: rec.full.attrs().clone(),
        m: rec.full.height(),
        max_len,
        monoid_size: m.size(),
        words_checked: checked,
        accepted,
        counterexample,
        projection_matches_letters,
        projection_matches_words,
    })
}

/// A named test language for the erasure checks.
#[derive(Debug, Clone)]
pub struct Toy {
    pub name: &'static str,
    pub mu: &'static str,
    pub lang: FragmentLang,
}

/// The small languages the erasure checks run on.
pub fn shipped_toys() -> Result<Vec<Toy>> {
    let mut out = Vec::new();
    for m in [1, 2] {
        let c = ColumnAlphabet::of(&["mu"], m)?;
        out.push(Toy {
            name: if m == 1 { "one-mark-h1" } else { "one-mark-h2" },
            mu: "mu",
            lang: topin("mu", "0*10*", &c)?,
        });
        let ca = ColumnAlphabet::of(&["mu", "a"], m)?;
        let zeros = topin_words("mu", "0*", &ca)?;
        let here = topin_words("mu", "1", &ca)?.intersect(&topin_words("a", "1", &ca)?)?;
        out.push(Toy {
            name: if m == 1 {
                "mark-on-a-h1"
            } else {
                "mark-on-a-h2"
            },
            mu: "mu",
            lang: FragmentLang::new(ca.clone(), zeros.concat(&here)?.concat(&zeros)?)?,
        });
    }
    let c2 = ColumnAlphabet::of(&["mu"], 2)?;
    out.push(Toy {
        name: "bottom-mark",
        mu: "mu",
        lang: FragmentLang::new(c2.clone(), row_attr_words("mu", "0*10*", 1, &c2)?)?,
    });
    let ca = ColumnAlphabet::of(&["mu", "a"], 1)?;
    out.push(Toy {
        name: "even-prefix",
        mu: "mu",
        lang: topin("mu", "(00)*10*", &ca)?.intersect(&topin("a", "(0|1)*1", &ca)?)?,
    });
    let c1 = ColumnAlphabet::of(&["mu"], 1)?;
    out.push(Toy {
        name: "empty",
        mu: "mu",
        lang: FragmentLang::empty(&c1),
    });
    // erasing an attribute that another erasure already reduced to one letter
    let cb = ColumnAlphabet::of(&["mu", "a", "b"], 1)?;
    let ab = topin("mu", "0*10*", &cb)?.intersect(&topin("b", "1(0|1)*", &cb)?)?;
    out.push(Toy {
        name: "after-erasure",
        mu: "mu",
        lang: exset(&["a"], &ab)?,
    });
    Ok(out)
}
