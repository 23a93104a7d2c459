use serde::Serialize;

use super::witness::{oracle_l, PRODUCT_ATTRS};
use super::{ColumnAlphabet, LengthFunction};
use crate::automata::{Dfa, Letter, Word};
use crate::boolmat::{bn_element, bn_monoid, unfold};
use crate::error::{Error, Result};
use crate::semigroup::{
    check_homomorphism, syntactic_monoid_lazy, Generated, MonoidView, Transformation,
};

/// Outcome of mapping `B_n` into the syntactic monoid of the product
/// language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbedReport {
    pub n: usize,
    pub m: usize,
    pub bn_size: usize,
    /// States of the minimal automaton of the product language.
    pub oracle_states: usize,
    /// Distinct syntactic classes hit by the block words.
    pub image_size: usize,
    pub multiplicative: bool,
    pub injective: bool,
    /// Whether the identity matrix goes to the empty word's class.
    pub identity_preserving: bool,
    /// Whether the image of the identity matrix is neutral on the image.
    pub image_has_own_identity: bool,
    /// Size of the whole syntactic monoid, when it fits under the cap.
    pub syntactic_monoid_size: Option<usize>,
}

impl EmbedReport {
    pub fn is_embedding(&self) -> bool {
        self.multiplicative && self.injective
    }
}

/// The block encoding a matrix: top row carries the entries in code order
/// with `end` on the last column, lower rows are all zero.
pub fn block_word(col: &ColumnAlphabet, bits: &[bool]) -> Result<Word> {
    let inp = col.attrs().index_of("inp")?;
    let end = col.attrs().index_of("end")?;
    let last = bits.len();
    bits.iter()
        .enumerate()
        .map(|(k, &b)| {
            let mut rows = vec![0u32; col.height()];
            rows[0] = (b as u32) << inp | ((k + 1 == last) as u32) << end;
            col.encode(&rows)
        })
        .collect()
}

fn word_action(d: &Dfa, w: &[Letter]) -> Transformation {
    Transformation((0..d.states() as u32).map(|q| d.run_from(q, w)).collect())
}

/// Sends each matrix to the syntactic class of its block and checks the
/// homomorphism laws against `B_n`. The full syntactic monoid is only
/// generated up to `monoid_cap` elements, for the report.
pub fn embed_bn(
    f: &LengthFunction,
    m: usize,
    state_cap: usize,
    monoid_cap: usize,
) -> Result<EmbedReport> {
    let n = f.eval(m)?;
    if n * n > 16 {
        return Err(Error::cap("matrix entries", n * n, 16));
    }
    let col = ColumnAlphabet::of(&PRODUCT_ATTRS, m)?;
    let d = oracle_l(n, &col, state_cap)?;
    let bn = bn_monoid(n, 1 << 16)?;
    let actions: Vec<Transformation> = (0..bn.size())
        .map(|x| {
            Ok(word_action(
                &d,
                &block_word(&col, &unfold(&bn_element(n, x)))?,
            ))
        })
        .collect::<Result<_>>()?;
    // the submonoid generated by the image holds every product the checks need
    let sub = Generated::new(Transformation::identity(d.states()), &actions, monoid_cap)?;
    let map: Vec<u32> = actions
        .iter()
        .map(|t| sub.index_of(t).expect("generator is present"))
        .collect();
    let rep = check_homomorphism(&map, &bn, &sub);
    let mut image = map.clone();
    image.sort_unstable();
    image.dedup();
    let e = map[bn.identity() as usize];
    let image_has_own_identity = image
        .iter()
        .all(|&x| sub.mul(e, x) == x && sub.mul(x, e) == x);
    let syntactic_monoid_size = match syntactic_monoid_lazy(&d, monoid_cap) {
        Ok(g) => Some(g.size()),
        Err(err) if err.is_cap() => None,
        Err(err) => return Err(err),
    };
    Ok(EmbedReport {
        n,
        m,
        bn_size: bn.size(),
        oracle_states: d.states(),
        image_size: image.len(),
        multiplicative: rep.multiplicative,
        injective: rep.injective,
        identity_preserving: rep.identity_preserving,
        image_has_own_identity,
        syntactic_monoid_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embeds_at_small_sizes() {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let f = LengthFunction::constant(n, [m]);
            let r = embed_bn(&f, m, 100_000, 200_000).unwrap();
            assert!(r.is_embedding(), "{r:?}");
            assert_eq!(r.image_size, 1 << (n * n));
            assert!(r.image_has_own_identity);
            assert!(!r.identity_preserving);
        }
    }

    #[test]
    fn block_words_have_one_end_marker() {
        let col = ColumnAlphabet::of(&PRODUCT_ATTRS, 2).unwrap();
        let w = block_word(&col, &[true, false, false, true]).unwrap();
        assert_eq!(col.format_word(&w), "[10/00][00/00][00/00][11/00]");
    }
}
