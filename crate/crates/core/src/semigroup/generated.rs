use std::collections::HashMap;
use std::hash::Hash;

use super::MonoidView;
use crate::automata::{Alphabet, Word};
use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};

/// A carrier whose values compose associatively.
pub trait Element: Clone + Eq + Hash {
    /// `self` followed by `other`.
    fn compose(&self, other: &Self) -> Self;
}

impl Element for BoolMatrix {
    fn compose(&self, other: &Self) -> Self {
        self.mul_same(other)
    }
}

/// A total map on `0..n`, composed left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation(pub Vec<u32>);

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Transformation((0..n as u32).collect())
    }

    pub fn apply(&self, q: u32) -> u32 {
        self.0[q as usize]
    }
}

impl Element for Transformation {
    fn compose(&self, other: &Self) -> Self {
        Transformation(self.0.iter().map(|&q| other.0[q as usize]).collect())
    }
}

/// The monoid generated by a list of elements, explored breadth-first.
///
/// Element 0 is the identity and every element stores a parent pointer, so
/// representatives are shortest words over the generators with ties broken
/// by generator order.
#[derive(Debug, Clone)]
pub struct Generated<T: Element> {
    elements: Vec<T>,
    index: HashMap<T, u32>,
    gens: Vec<u32>,
    parent: Vec<(u32, u32)>,
    right: Vec<u32>,
    letters: Option<(Alphabet, Vec<u32>, Vec<u32>)>,
    accept: Option<Vec<bool>>,
}

const NO_PARENT: (u32, u32) = (u32::MAX, u32::MAX);

impl<T: Element> Generated<T> {
    pub fn new(identity: T, generators: &[T], cap: usize) -> Result<Self> {
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0u32);
        let mut parent = vec![NO_PARENT];
        // generator elements, deduplicated against everything seen
        let mut gen_elems: Vec<T> = Vec::new();
        for g in generators {
            if !gen_elems.contains(g) {
                gen_elems.push(g.clone());
            }
        }
        let k = gen_elems.len();
        let mut right = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            for (gi, g) in gen_elems.iter().enumerate() {
                let y = elements[i].compose(g);
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len() as u32;
                        if elements.len() >= cap {
                            return Err(Error::cap("monoid elements", elements.len() + 1, cap));
                        }
                        index.insert(y.clone(), id);
                        elements.push(y);
                        parent.push((i as u32, gi as u32));
                        id
                    }
                };
                right.push(id);
            }
            i += 1;
        }
        let gens = gen_elems.iter().map(|g| index[g]).collect();
        debug_assert_eq!(right.len(), elements.len() * k);
        Ok(Generated {
            elements,
            index,
            gens,
            parent,
            right,
            letters: None,
            accept: None,
        })
    }

    /// Generates from per-letter elements; letters with equal elements share
    /// a generator.
    pub fn from_letters(
        identity: T,
        alphabet: &Alphabet,
        letter_elems: &[T],
        cap: usize,
    ) -> Result<Self> {
        if letter_elems.len() != alphabet.size() {
            return Err(Error::LengthMismatch {
                expected: alphabet.size(),
                found: letter_elems.len(),
            });
        }
        let mut g = Generated::new(identity, letter_elems, cap)?;
        let img: Vec<u32> = letter_elems.iter().map(|e| g.index[e]).collect();
        // smallest letter per generator, for representatives
        let gen_letter = g
            .gens
            .iter()
            .map(|&x| {
                img.iter()
                    .position(|&y| y == x)
                    .expect("generator comes from a letter") as u32
            })
            .collect();
        g.letters = Some((alphabet.clone(), img, gen_letter));
        Ok(g)
    }

    /// Like [`Generated::from_letters`] but with one element per letter class;
    /// `class_of` maps letters to classes.
    pub(crate) fn from_classes(
        identity: T,
        alphabet: &Alphabet,
        class_of: &[u32],
        class_elems: &[T],
        cap: usize,
    ) -> Result<Self> {
        let mut g = Generated::new(identity, class_elems, cap)?;
        let class_img: Vec<u32> = class_elems.iter().map(|e| g.index[e]).collect();
        let img: Vec<u32> = class_of.iter().map(|&c| class_img[c as usize]).collect();
        let gen_letter = g
            .gens
            .iter()
            .map(|&x| {
                img.iter()
                    .position(|&y| y == x)
                    .expect("generator comes from a letter") as u32
            })
            .collect();
        g.letters = Some((alphabet.clone(), img, gen_letter));
        Ok(g)
    }

    pub fn set_accept(&mut self, pred: impl Fn(&T) -> bool) {
        self.accept = Some(self.elements.iter().map(pred).collect());
    }

    pub fn element(&self, x: u32) -> &T {
        &self.elements[x as usize]
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn index_of(&self, e: &T) -> Option<u32> {
        self.index.get(e).copied()
    }

    /// Shortest word over generator indices.
    pub fn gen_word(&self, x: u32) -> Vec<u32> {
        let mut w = Vec::new();
        let mut cur = x;
        while self.parent[cur as usize] != NO_PARENT {
            let (p, g) = self.parent[cur as usize];
            w.push(g);
            cur = p;
        }
        w.reverse();
        w
    }

    /// Elements reachable by non-empty words: the generated semigroup.
    pub fn nonempty_elements(&self) -> Vec<u32> {
        let k = self.gens.len();
        let mut seen = vec![false; self.elements.len()];
        let mut stack: Vec<u32> = self.gens.clone();
        for &g in &stack {
            seen[g as usize] = true;
        }
        while let Some(x) = stack.pop() {
            for i in 0..k {
                let y = self.right[x as usize * k + i];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.elements.len() as u32)
            .filter(|&x| seen[x as usize])
            .collect()
    }
}

impl<T: Element> MonoidView for Generated<T> {
    fn size(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> u32 {
        0
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        let p = self.elements[x as usize].compose(&self.elements[y as usize]);
        self.index[&p]
    }

    fn generators(&self) -> Vec<u32> {
        self.gens.clone()
    }

    fn right_table(&self) -> Vec<u32> {
        self.right.clone()
    }

    fn left_table(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.right.len());
        for x in &self.elements {
            for &g in &self.gens {
                out.push(self.index[&self.elements[g as usize].compose(x)]);
            }
        }
        out
    }

    fn letters(&self) -> Option<(&Alphabet, &[u32])> {
        self.letters.as_ref().map(|(a, img, _)| (a, img.as_slice()))
    }

    fn rep(&self, x: u32) -> Option<Word> {
        let (_, _, gen_letter) = self.letters.as_ref()?;
        Some(
            self.gen_word(x)
                .iter()
                .map(|&g| gen_letter[g as usize])
                .collect(),
        )
    }

    fn accepting(&self) -> Option<&[bool]> {
        self.accept.as_deref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::FiniteMonoid;

    #[test]
    fn small_closures() {
        let id = BoolMatrix::identity(2);
        let g = Generated::new(id.clone(), std::slice::from_ref(&id), 10).unwrap();
        assert_eq!(g.size(), 1);
        let swap = BoolMatrix::from_rows(&["01", "10"]).unwrap();
        let g = Generated::new(id, &[swap], 10).unwrap();
        assert_eq!(g.size(), 2);
        assert_eq!(g.mul(1, 1), 0);
        let m = FiniteMonoid::materialize(&g).unwrap();
        assert!(m.is_associative());
    }

    #[test]
    fn representatives_are_shortest() {
        let a = Alphabet::with_labels(["a", "b"]).unwrap();
        // a rotates three points, b collapses onto 0
        let ta = Transformation(vec![1, 2, 0]);
        let tb = Transformation(vec![0, 0, 0]);
        let g = Generated::from_letters(Transformation::identity(3), &a, &[ta, tb], 100).unwrap();
        for x in 0..g.size() as u32 {
            let w = g.rep(x).unwrap();
            assert_eq!(g.eval(&w), Some(x));
        }
        assert_eq!(g.rep(0).unwrap(), Vec::<u32>::new());
        // a^3 = 1, so the identity is also a non-empty product
        assert!(g.nonempty_elements().contains(&0));
    }

    #[test]
    fn cap_is_enforced() {
        let ta = Transformation(vec![1, 2, 3, 4, 0]);
        assert!(Generated::new(Transformation::identity(5), &[ta], 3)
            .unwrap_err()
            .is_cap());
    }
}
