use std::collections::HashMap;

use super::{FiniteMonoid, Generated, MonoidView, Presentation, Transformation, TABLE_CAP};
use crate::automata::{Dfa, Nfa};
use crate::boolmat::BoolMatrix;
use crate::error::{Error, Result};

/// Quotient by the coarsest congruence that saturates `accept`.
///
/// Computed by refining the partition `{accept, rest}` until it is stable
/// under left and right multiplication by generators. Classes are numbered
/// by their smallest element. Returns the quotient (with accepting subset,
/// and letter images when `m` has them) and the projection map.
pub fn syntactic_quotient(
    m: &impl MonoidView,
    accept: &[bool],
) -> Result<(FiniteMonoid, Vec<u32>)> {
    let n = m.size();
    if accept.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: accept.len(),
        });
    }
    let gens = m.generators();
    let k = gens.len();
    let right = m.right_table();
    let left = m.left_table();
    let (mut class, mut count) = renumber((0..n).map(|x| vec![accept[x] as u32]));
    loop {
        let keys = (0..n).map(|x| {
            let mut key = Vec::with_capacity(2 * k + 1);
            key.push(class[x]);
            key.extend((0..k).map(|i| class[right[x * k + i] as usize]));
            key.extend((0..k).map(|i| class[left[x * k + i] as usize]));
            key
        });
        let (next, next_count) = renumber(keys);
        class = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    let mut first = vec![u32::MAX; count];
    for x in (0..n).rev() {
        first[class[x] as usize] = x as u32;
    }
    let entries = count.saturating_mul(count);
    if entries > TABLE_CAP {
        return Err(Error::cap("monoid table entries", entries, TABLE_CAP));
    }
    let mut table = Vec::with_capacity(entries);
    for &x in &first {
        for &y in &first {
            table.push(class[m.mul(x, y) as usize]);
        }
    }
    let mut q = FiniteMonoid::from_table_unchecked(count, class[m.identity() as usize], table)?;
    let mut qgens: Vec<u32> = gens.iter().map(|&g| class[g as usize]).collect();
    qgens.sort_unstable();
    qgens.dedup();
    q.set_generators(qgens);
    q.set_accept(first.iter().map(|&x| accept[x as usize]).collect())?;
    if let Some((alphabet, img)) = m.letters() {
        let reps = first
            .iter()
            .map(|&x| m.rep(x).unwrap_or_default())
            .collect();
        q.set_presentation(Presentation {
            alphabet: alphabet.clone(),
            letter_image: img.iter().map(|&x| class[x as usize]).collect(),
            reps,
        })?;
    }
    Ok((q, class))
}

/// Numbers keys by first occurrence.
fn renumber<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> (Vec<u32>, usize) {
    let mut ids: HashMap<K, u32> = HashMap::new();
    let out = keys
        .map(|key| {
            let next = ids.len() as u32;
            *ids.entry(key).or_insert(next)
        })
        .collect();
    (out, ids.len())
}

/// Transition monoid of an NFA as Boolean matrices, generated lazily. The
/// accepting subset holds the matrices connecting an initial state to a final
/// state.
pub fn transition_monoid_lazy(nfa: &Nfa, cap: usize) -> Result<Generated<BoolMatrix>> {
    let q = nfa.states();
    let parts = nfa.partition();
    let mats: Vec<BoolMatrix> = (0..parts.classes() as u32)
        .map(|c| {
            let mut a = BoolMatrix::zero(q);
            for (s, t) in nfa.class_relation(c) {
                a.set(s as usize, t as usize, true);
            }
            a
        })
        .collect();
    let mut g = Generated::from_classes(
        BoolMatrix::identity(q),
        nfa.alphabet(),
        parts.class_table(),
        &mats,
        cap,
    )?;
    let initial = nfa.initial().to_vec();
    let finals: Vec<usize> = (0..q).filter(|&s| nfa.is_final(s as u32)).collect();
    g.set_accept(|x| {
        initial
            .iter()
            .any(|&i| finals.iter().any(|&f| x.get(i as usize, f)))
    });
    Ok(g)
}

/// Materialized transition monoid.
pub fn transition_monoid(nfa: &Nfa, cap: usize) -> Result<FiniteMonoid> {
    FiniteMonoid::materialize(&transition_monoid_lazy(nfa, cap)?)
}

/// Syntactic monoid as the transformation monoid of the minimal DFA,
/// generated lazily. Accepting elements send the initial state to a final one.
pub fn syntactic_monoid_lazy(d: &Dfa, cap: usize) -> Result<Generated<Transformation>> {
    let min = d.minimize();
    let parts = min.partition();
    let maps: Vec<Transformation> = (0..parts.classes() as u32)
        .map(|c| Transformation(min.class_map(c)))
        .collect();
    let mut g = Generated::from_classes(
        Transformation::identity(min.states()),
        min.alphabet(),
        parts.class_table(),
        &maps,
        cap,
    )?;
    let init = min.initial();
    g.set_accept(|t| min.is_final(t.apply(init)));
    Ok(g)
}

/// Materialized syntactic monoid.
pub fn syntactic_monoid(d: &Dfa, cap: usize) -> Result<FiniteMonoid> {
    FiniteMonoid::materialize(&syntactic_monoid_lazy(d, cap)?)
}

/// The map sending each element of `a` to the evaluation of its
/// representative word in `b`. Both monoids need letter images over
/// alphabets of the same size.
pub fn canonical_map(a: &impl MonoidView, b: &impl MonoidView) -> Result<Vec<u32>> {
    let (aa, _) = a
        .letters()
        .ok_or_else(|| Error::Invalid("source monoid has no letter images".into()))?;
    let (ba, _) = b
        .letters()
        .ok_or_else(|| Error::Invalid("target monoid has no letter images".into()))?;
    if aa.size() != ba.size() {
        return Err(Error::AlphabetMismatch(aa.size(), ba.size()));
    }
    (0..a.size() as u32)
        .map(|x| {
            let w = a
                .rep(x)
                .ok_or_else(|| Error::Invalid("source monoid has no representatives".into()))?;
            Ok(b.eval(&w).expect("letters checked above"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile, Alphabet};
    use crate::semigroup::{check_homomorphism, is_aperiodic, maximal_groups};

    fn dfa(re: &str, a: &Alphabet) -> Dfa {
        compile(re, a).unwrap().determinize(1000).unwrap()
    }

    #[test]
    fn known_syntactic_monoids() {
        let a = Alphabet::with_labels(["a"]).unwrap();
        let even = syntactic_monoid(&dfa("(aa)*", &a), 100).unwrap();
        assert_eq!(even.size(), 2);
        assert!(!is_aperiodic(&even));
        let ab = Alphabet::with_labels(["a", "b"]).unwrap();
        let m = syntactic_monoid(&dfa("a*b*", &ab), 100).unwrap();
        assert_eq!(m.size(), 5);
        assert!(is_aperiodic(&m));
        assert!(maximal_groups(&m).iter().all(|g| g.order() == 1));
    }

    #[test]
    fn nonempty_words() {
        let ab = Alphabet::with_labels(["a", "b"]).unwrap();
        let lazy = syntactic_monoid_lazy(&dfa("(a|b)+", &ab), 100).unwrap();
        // the monoid over all words has the identity plus one class
        assert_eq!(lazy.size(), 2);
        assert_eq!(lazy.nonempty_elements().len(), 1);
    }

    #[test]
    fn quotient_edge_cases() {
        let ab = Alphabet::with_labels(["a", "b"]).unwrap();
        let m = syntactic_monoid(&dfa("a*b*", &ab), 100).unwrap();
        let (q, _) = syntactic_quotient(&m, &vec![true; m.size()]).unwrap();
        assert_eq!(q.size(), 1);
        let (q, _) = syntactic_quotient(&m, &vec![false; m.size()]).unwrap();
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn transition_monoid_quotient_matches_minimal() {
        let b = Alphabet::binary();
        // a redundant automaton for 0*1: two copies of the 0-loop
        let nfa = compile("0*1|0*0*1", &b).unwrap();
        let tm = transition_monoid_lazy(&nfa, 1000).unwrap();
        let accept = tm.accepting().unwrap().to_vec();
        let (q, _) = syntactic_quotient(&tm, &accept).unwrap();
        let s = syntactic_monoid(&nfa.determinize(100).unwrap(), 100).unwrap();
        let map = canonical_map(&q, &s).unwrap();
        let rep = check_homomorphism(&map, &q, &s);
        assert!(rep.is_isomorphism(q.size(), s.size()));
        // the projection recognizes the same language
        for w in [vec![1], vec![0, 1], vec![1, 0], vec![]] {
            let x = q.eval(&w).unwrap();
            assert_eq!(q.accept().unwrap()[x as usize], nfa.accepts(&w));
        }
    }

    #[test]
    fn transition_monoid_of_loops_is_trivial() {
        let b = Alphabet::binary();
        let all = Nfa::universal(&b);
        assert_eq!(transition_monoid(&all, 10).unwrap().size(), 1);
        let tm = transition_monoid(&compile("0*1", &b).unwrap(), 100).unwrap();
        assert!(is_aperiodic(&tm));
    }
}
