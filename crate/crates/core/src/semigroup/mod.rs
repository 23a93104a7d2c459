//! Finite monoids: Cayley tables, lazily generated monoids, structure
//! queries and products.
//!
//! Elements are `u32` indices. In every monoid built from words, element
//! `x · y` means "first `x`, then `y`", matching word concatenation.

mod analysis;
mod catalog;
mod generated;
mod products;
mod syntactic;

use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

pub use analysis::{check_homomorphism, is_aperiodic, maximal_groups, Group, HomReport};
pub use catalog::{endomorphisms, monogenic_action_pairs, monogenic_generator, small_aperiodic};
pub use generated::{Element, Generated, Transformation};
pub use products::{
    bilateral_semidirect, block_product, cyclic, direct_product, fold_block, trivial, u1,
    ActionPair, BlockElement, BLOCK_PRODUCT_CAP,
};
pub use syntactic::{
    canonical_map, syntactic_monoid, syntactic_monoid_lazy, syntactic_quotient, transition_monoid,
    transition_monoid_lazy,
};

/// Largest number of table entries (`size²`) a materialized monoid may have.
pub const TABLE_CAP: usize = 1 << 24;

/// Default bound on the number of elements of a generated monoid.
pub const DEFAULT_MONOID_CAP: usize = 1_000_000;

/// Read access shared by materialized and lazily generated monoids.
pub trait MonoidView {
    fn size(&self) -> usize;
    fn identity(&self) -> u32;
    fn mul(&self, x: u32, y: u32) -> u32;

    /// A generating set. Defaults to every element.
    fn generators(&self) -> Vec<u32> {
        (0..self.size() as u32).collect()
    }

    /// `right[x * g + i] = x · gen_i`.
    fn right_table(&self) -> Vec<u32> {
        let gens = self.generators();
        let mut out = Vec::with_capacity(self.size() * gens.len());
        for x in 0..self.size() as u32 {
            out.extend(gens.iter().map(|&g| self.mul(x, g)));
        }
        out
    }

    /// `left[x * g + i] = gen_i · x`.
    fn left_table(&self) -> Vec<u32> {
        let gens = self.generators();
        let mut out = Vec::with_capacity(self.size() * gens.len());
        for x in 0..self.size() as u32 {
            out.extend(gens.iter().map(|&g| self.mul(g, x)));
        }
        out
    }

    /// Alphabet and image of every letter, when the monoid comes from words.
    fn letters(&self) -> Option<(&Alphabet, &[u32])> {
        None
    }

    /// A shortest word evaluating to `x`, when available.
    fn rep(&self, _x: u32) -> Option<Word> {
        None
    }

    /// Accepting subset, when the monoid recognizes a language.
    fn accepting(&self) -> Option<&[bool]> {
        None
    }

    /// Evaluates a word through the letter images.
    fn eval(&self, w: &[Letter]) -> Option<u32> {
        let (_, img) = self.letters()?;
        Some(
            w.iter()
                .fold(self.identity(), |x, &a| self.mul(x, img[a as usize])),
        )
    }
}

/// Letter images and shortest representatives of a monoid built from words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub letter_image: Vec<u32>,
    pub reps: Vec<Word>,
}

/// A monoid given by its full Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    identity: u32,
    table: Vec<u32>,
    generators: Option<Vec<u32>>,
    presentation: Option<Presentation>,
    labels: Option<Vec<String>>,
    accept: Option<Vec<bool>>,
}

impl FiniteMonoid {
    /// Validates the table (range, two-sided identity, associativity).
    pub fn from_table(size: usize, identity: u32, table: Vec<u32>) -> Result<Self> {
        let m = FiniteMonoid::from_table_unchecked(size, identity, table)?;
        if !m.identity_holds() {
            return Err(Error::Invalid(format!(
                "element {identity} is not a two-sided identity"
            )));
        }
        if let Some((x, y, z)) = m.associativity_violation() {
            return Err(Error::Invalid(format!(
                "table not associative at ({x}, {y}, {z})"
            )));
        }
        Ok(m)
    }

    /// Checks ranges only; for tables that are associative by construction.
    pub(crate) fn from_table_unchecked(
        size: usize,
        identity: u32,
        table: Vec<u32>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invalid("a monoid has at least one element".into()));
        }
        let entries = size.saturating_mul(size);
        if entries > TABLE_CAP {
            return Err(Error::cap("monoid table entries", entries, TABLE_CAP));
        }
        if table.len() != entries {
            return Err(Error::LengthMismatch {
                expected: entries,
                found: table.len(),
            });
        }
        if identity as usize >= size {
            return Err(Error::OutOfRange {
                what: "identity",
                value: identity as usize,
                min: 0,
                max: size - 1,
            });
        }
        if let Some(&v) = table.iter().find(|&&v| v as usize >= size) {
            return Err(Error::OutOfRange {
                what: "table entry",
                value: v as usize,
                min: 0,
                max: size - 1,
            });
        }
        Ok(FiniteMonoid {
            size,
            identity,
            table,
            generators: None,
            presentation: None,
            labels: None,
            accept: None,
        })
    }

    /// Tabulates a product function on `0..size`.
    pub fn from_fn(size: usize, identity: u32, mut f: impl FnMut(u32, u32) -> u32) -> Result<Self> {
        let entries = size.saturating_mul(size);
        if entries > TABLE_CAP {
            return Err(Error::cap("monoid table entries", entries, TABLE_CAP));
        }
        let mut table = Vec::with_capacity(entries);
        for x in 0..size as u32 {
            for y in 0..size as u32 {
                table.push(f(x, y));
            }
        }
        FiniteMonoid::from_table(size, identity, table)
    }

    /// Materializes any view. Fails when the table would exceed [`TABLE_CAP`].
    pub fn materialize(view: &impl MonoidView) -> Result<Self> {
        let size = view.size();
        let entries = size.saturating_mul(size);
        if entries > TABLE_CAP {
            return Err(Error::cap("monoid table entries", entries, TABLE_CAP));
        }
        let mut table = Vec::with_capacity(entries);
        for x in 0..size as u32 {
            for y in 0..size as u32 {
                table.push(view.mul(x, y));
            }
        }
        let mut m = FiniteMonoid::from_table_unchecked(size, view.identity(), table)?;
        m.generators = Some(view.generators());
        if let Some((alphabet, img)) = view.letters() {
            let reps = (0..size as u32)
                .map(|x| view.rep(x).unwrap_or_default())
                .collect();
            m.presentation = Some(Presentation {
                alphabet: alphabet.clone(),
                letter_image: img.to_vec(),
                reps,
            });
        }
        m.accept = view.accepting().map(<[bool]>::to_vec);
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.size + y as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.size {
            return Err(Error::LengthMismatch {
                expected: self.size,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// Display name of an element: label, else representative word, else index.
    pub fn name(&self, x: u32) -> String {
        if let Some(l) = &self.labels {
            return l[x as usize].clone();
        }
        if let Some(p) = &self.presentation {
            let w = &p.reps[x as usize];
            return if w.is_empty() {
                "1".into()
            } else {
                p.alphabet.format_word(w)
            };
        }
        x.to_string()
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn set_presentation(&mut self, p: Presentation) -> Result<()> {
        if p.reps.len() != self.size || p.letter_image.len() != p.alphabet.size() {
            return Err(Error::Invalid(
                "presentation does not match the monoid".into(),
            ));
        }
        for (x, w) in p.reps.iter().enumerate() {
            let v = w.iter().fold(self.identity, |acc, &a| {
                self.mul(acc, p.letter_image[a as usize])
            });
            if v as usize != x {
                return Err(Error::Invalid(format!(
                    "representative of element {x} evaluates to {v}"
                )));
            }
        }
        self.presentation = Some(p);
        Ok(())
    }

    pub fn set_generators(&mut self, gens: Vec<u32>) {
        self.generators = Some(gens);
    }

    pub fn accept(&self) -> Option<&[bool]> {
        self.accept.as_deref()
    }

    pub fn set_accept(&mut self, accept: Vec<bool>) -> Result<()> {
        if accept.len() != self.size {
            return Err(Error::LengthMismatch {
                expected: self.size,
                found: accept.len(),
            });
        }
        self.accept = Some(accept);
        Ok(())
    }

    fn identity_holds(&self) -> bool {
        (0..self.size as u32)
            .all(|x| self.mul(self.identity, x) == x && self.mul(x, self.identity) == x)
    }

    /// First triple violating associativity, if any. Full `size³` scan.
    pub fn associativity_violation(&self) -> Option<(u32, u32, u32)> {
        let n = self.size as u32;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    pub fn to_json(&self) -> MonoidJson {
        let reps = match (&self.presentation, &self.labels) {
            (Some(_), _) | (None, Some(_)) => {
                Some((0..self.size as u32).map(|x| self.name(x)).collect())
            }
            _ => None,
        };
        MonoidJson {
            size: self.size,
            identity: self.identity,
            table: self.table.chunks(self.size).map(<[u32]>::to_vec).collect(),
            reps,
            accept: self
                .accept
                .as_ref()
                .map(|a| (0..self.size as u32).filter(|&x| a[x as usize]).collect()),
        }
    }

    pub fn from_json(j: &MonoidJson) -> Result<Self> {
        if j.table.len() != j.size || j.table.iter().any(|r| r.len() != j.size) {
            return Err(Error::Invalid("table must be size x size".into()));
        }
        let mut m = FiniteMonoid::from_table(j.size, j.identity, j.table.concat())?;
        if let Some(r) = &j.reps {
            m.set_labels(r.clone())?;
        }
        if let Some(acc) = &j.accept {
            let mut a = vec![false; j.size];
            for &x in acc {
                if x as usize >= j.size {
                    return Err(Error::OutOfRange {
                        what: "accepting element",
                        value: x as usize,
                        min: 0,
                        max: j.size - 1,
                    });
                }
                a[x as usize] = true;
            }
            m.accept = Some(a);
        }
        Ok(m)
    }

    /// Cayley graph of multiplication by generators, in Graphviz syntax.
    /// `left` selects `g · x` edges, otherwise `x · g`.
    pub fn cayley_dot(&self, left: bool) -> String {
        let gens = MonoidView::generators(self);
        let mut s = String::from("digraph cayley {\n");
        for x in 0..self.size as u32 {
            let shape = match &self.accept {
                Some(a) if a[x as usize] => "doublecircle",
                _ => "circle",
            };
            s.push_str(&format!(
                "  e{x} [label=\"{}\", shape={shape}];\n",
                self.name(x)
            ));
        }
        for x in 0..self.size as u32 {
            for &g in &gens {
                let y = if left { self.mul(g, x) } else { self.mul(x, g) };
                s.push_str(&format!("  e{x} -> e{y} [label=\"{}\"];\n", self.name(g)));
            }
        }
        s.push_str("}\n");
        s
    }
}

impl MonoidView for FiniteMonoid {
    fn size(&self) -> usize {
        self.size
    }

    fn identity(&self) -> u32 {
        self.identity
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        FiniteMonoid::mul(self, x, y)
    }

    fn generators(&self) -> Vec<u32> {
        match (&self.generators, &self.presentation) {
            (Some(g), _) => g.clone(),
            (None, Some(p)) => {
                let mut g = p.letter_image.clone();
                g.sort_unstable();
                g.dedup();
                g
            }
            _ => (0..self.size as u32).collect(),
        }
    }

    fn letters(&self) -> Option<(&Alphabet, &[u32])> {
        self.presentation
            .as_ref()
            .map(|p| (&p.alphabet, p.letter_image.as_slice()))
    }

    fn rep(&self, x: u32) -> Option<Word> {
        self.presentation
            .as_ref()
            .map(|p| p.reps[x as usize].clone())
    }

    fn accepting(&self) -> Option<&[bool]> {
        self.accept.as_deref()
    }
}

/// The monoid interchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidJson {
    pub size: usize,
    pub identity: u32,
    pub table: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reps: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accept: Option<Vec<u32>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_validation() {
        // Z_2
        let z2 = FiniteMonoid::from_table(2, 0, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(z2.mul(1, 1), 0);
        assert!(FiniteMonoid::from_table(2, 1, vec![0, 1, 1, 0]).is_err());
        // left-zero on {1,a,b} with a·b = b breaks associativity in a 3-cycle
        let bad = FiniteMonoid::from_fn(3, 0, |x, y| match (x, y) {
            (0, y) => y,
            (x, 0) => x,
            (1, 1) => 2,
            (1, 2) => 1,
            (2, 1) => 2,
            _ => 2,
        });
        assert!(bad.is_err());
        assert!(FiniteMonoid::from_table(2, 0, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let mut m = cyclic(3).unwrap();
        m.set_accept(vec![true, false, false]).unwrap();
        let j = m.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back = FiniteMonoid::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.table(), m.table());
        assert_eq!(back.accept(), m.accept());
        assert!(m.cayley_dot(true).contains("e0 -> e1"));
    }
}
