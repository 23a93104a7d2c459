use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A letter is an index into an [`Alphabet`].
pub type Letter = u32;

/// A finite word over letter indices.
pub type Word = Vec<Letter>;

/// Letters `0..size`, with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    size: usize,
    labels: Option<Arc<Vec<String>>>,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invalid(
                "alphabet must have at least one letter".into(),
            ));
        }
        if size > u32::MAX as usize {
            return Err(Error::cap("alphabet size", size, u32::MAX));
        }
        Ok(Alphabet { size, labels: None })
    }

    pub fn with_labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut a = Alphabet::new(labels.len())?;
        a.labels = Some(Arc::new(labels));
        Ok(a)
    }

    /// The two-letter alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet::with_labels(["0", "1"]).expect("non-empty")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref().map(|v| v.as_slice())
    }

    pub fn label(&self, a: Letter) -> String {
        match &self.labels {
            Some(l) => l[a as usize].clone(),
            None => default_label(a),
        }
    }

    /// Looks up a letter by label, falling back to decimal indices.
    pub fn letter_of(&self, label: &str) -> Option<Letter> {
        if let Some(l) = &self.labels {
            if let Some(i) = l.iter().position(|x| x == label) {
                return Some(i as Letter);
            }
        }
        label
            .parse::<usize>()
            .ok()
            .filter(|&i| i < self.size)
            .map(|i| i as Letter)
    }

    /// Renders a word by concatenating labels; multi-character labels are
    /// wrapped in `<..>`.
    pub fn format_word(&self, w: &[Letter]) -> String {
        let mut s = String::new();
        for &a in w {
            let l = self.label(a);
            if l.chars().count() == 1 {
                s.push_str(&l);
            } else {
                s.push('<');
                s.push_str(&l);
                s.push('>');
            }
        }
        s
    }

    /// Inverse of [`Alphabet::format_word`].
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut out = Vec::new();
        let mut chars = s.char_indices().peekable();
        while let Some((pos, c)) = chars.next() {
            let label = if c == '<' {
                let mut l = String::new();
                loop {
                    match chars.next() {
                        Some((_, '>')) => break,
                        Some((_, ch)) => l.push(ch),
                        None => {
                            return Err(Error::Parse {
                                pos,
                                msg: "unterminated `<`".into(),
                            })
                        }
                    }
                }
                l
            } else {
                c.to_string()
            };
            let a = self.letter_of(&label).ok_or_else(|| Error::Parse {
                pos,
                msg: format!("unknown letter `{label}`"),
            })?;
            out.push(a);
        }
        Ok(out)
    }
}

fn default_label(a: Letter) -> String {
    a.to_string()
}

/// A partition of the letters of an alphabet into behaviour classes.
///
/// Automata store transitions per class rather than per letter. Classes are
/// numbered in order of their smallest letter once [`LetterPartition::normalized`]
/// has been applied, which makes minimal automata canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterPartition {
    class_of: Arc<Vec<u32>>,
    classes: usize,
}

impl LetterPartition {
    /// Every letter in its own class.
    pub fn discrete(size: usize) -> Self {
        LetterPartition {
            class_of: Arc::new((0..size as u32).collect()),
            classes: size,
        }
    }

    /// All letters in a single class.
    pub fn trivial(size: usize) -> Self {
        LetterPartition {
            class_of: Arc::new(vec![0; size]),
            classes: 1,
        }
    }

    /// Builds a partition from per-letter keys; letters with equal keys share
    /// a class. Returns the partition and, for every class, its key.
    pub fn from_keys<K: std::hash::Hash + Eq + Clone>(
        keys: impl IntoIterator<Item = K>,
    ) -> (Self, Vec<K>) {
        let mut ids: HashMap<K, u32> = HashMap::new();
        let mut reps = Vec::new();
        let class_of: Vec<u32> = keys
            .into_iter()
            .map(|k| {
                *ids.entry(k.clone()).or_insert_with(|| {
                    reps.push(k);
                    (reps.len() - 1) as u32
                })
            })
            .collect();
        (
            LetterPartition {
                class_of: Arc::new(class_of),
                classes: reps.len(),
            },
            reps,
        )
    }

    pub fn letters(&self) -> usize {
        self.class_of.len()
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    #[inline]
    pub fn class_of(&self, a: Letter) -> u32 {
        self.class_of[a as usize]
    }

    pub fn class_table(&self) -> &[u32] {
        &self.class_of
    }

    /// Smallest letter of every class.
    pub fn representatives(&self) -> Vec<Letter> {
        let mut rep = vec![u32::MAX; self.classes];
        for (a, &c) in self.class_of.iter().enumerate() {
            if rep[c as usize] == u32::MAX {
                rep[c as usize] = a as u32;
            }
        }
        rep
    }

    /// All letters of every class, ascending.
    pub fn members(&self) -> Vec<Vec<Letter>> {
        let mut out = vec![Vec::new(); self.classes];
        for (a, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(a as u32);
        }
        out
    }

    /// Common refinement. Returns the joint partition and the projections of
    /// each joint class onto the classes of `self` and `other`.
    pub fn join(&self, other: &LetterPartition) -> (LetterPartition, Vec<u32>, Vec<u32>) {
        assert_eq!(self.letters(), other.letters());
        let (p, keys) = LetterPartition::from_keys(
            self.class_of
                .iter()
                .zip(other.class_of.iter())
                .map(|(&a, &b)| (a, b)),
        );
        let (left, right) = keys.into_iter().unzip();
        (p, left, right)
    }

    /// Partition of a source alphabet pulled back along a letter map
    /// `h: source -> self.letters`. Returns the new partition and, for each new
    /// class, the class of `self` it maps to.
    pub fn pullback(&self, h: &[Letter]) -> (LetterPartition, Vec<u32>) {
        LetterPartition::from_keys(h.iter().map(|&b| self.class_of(b)))
    }

    /// Coarsens by merging classes that map to the same key.
    pub fn merge_by<K: std::hash::Hash + Eq + Clone>(
        &self,
        class_key: &[K],
    ) -> (LetterPartition, Vec<u32>) {
        let (p, _) = LetterPartition::from_keys(
            self.class_of.iter().map(|&c| class_key[c as usize].clone()),
        );
        // for each old class, its new class
        let mut old_to_new = vec![0u32; self.classes];
        for (a, &c) in self.class_of.iter().enumerate() {
            old_to_new[c as usize] = p.class_of[a];
        }
        (p, old_to_new)
    }

    /// Whether classes are numbered in order of their smallest letter.
    pub fn is_normalized(&self) -> bool {
        let mut next = 0u32;
        for &c in self.class_of.iter() {
            if c == next {
                next += 1;
            } else if c > next {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_format_roundtrip() {
        let a = Alphabet::with_labels(["a", "b", "ten"]).unwrap();
        let w = vec![0, 2, 1];
        let s = a.format_word(&w);
        assert_eq!(s, "a<ten>b");
        assert_eq!(a.parse_word(&s).unwrap(), w);
        assert!(a.parse_word("c").is_err());
        let plain = Alphabet::new(12).unwrap();
        assert_eq!(plain.format_word(&[1, 11]), "1<11>");
        assert_eq!(plain.parse_word("1<11>").unwrap(), vec![1, 11]);
    }

    #[test]
    fn partitions() {
        let (p, _) = LetterPartition::from_keys([5, 3, 5, 7]);
        assert_eq!(p.classes(), 3);
        assert!(p.is_normalized());
        assert_eq!(p.representatives(), vec![0, 1, 3]);
        let q = LetterPartition::trivial(4);
        let (j, l, r) = p.join(&q);
        assert_eq!(j.classes(), 3);
        assert_eq!(l, vec![0, 1, 2]);
        assert_eq!(r, vec![0, 0, 0]);
        let (pb, to) = p.pullback(&[3, 3, 0]);
        assert_eq!(pb.classes(), 2);
        assert_eq!(to, vec![2, 0]);
        assert!(Alphabet::new(0).is_err());
    }
}
