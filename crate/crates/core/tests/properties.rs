use std::collections::{HashSet, VecDeque};

use proptest::prelude::*;

use picmon::automata::{Alphabet, Dfa, Nfa, NfaBuilder, Word};
use picmon::boolmat::{bn_element, bn_index, fold, path_exists, unfold, BoolMatrix};
use picmon::semigroup::{
    direct_product, is_aperiodic, small_aperiodic, syntactic_monoid, transition_monoid,
};

const CAP: usize = 10_000;

fn arb_nfa() -> impl Strategy<Value = Nfa> {
    (1usize..=4, 1usize..=2).prop_flat_map(|(q, k)| {
        let edges = proptest::collection::vec((0..q as u32, 0..k as u32, 0..q as u32), 0..10);
        let finals = proptest::collection::vec(any::<bool>(), q);
        (Just(q), Just(k), edges, finals).prop_map(|(q, k, edges, finals)| {
            let mut b = NfaBuilder::new(Alphabet::new(k).unwrap());
            b.add_states(q);
            b.set_initial(0);
            for (s, f) in finals.into_iter().enumerate() {
                b.set_final(s as u32, f);
            }
            for (from, a, to) in edges {
                b.add_transition(from, a, to);
            }
            b.build().unwrap()
        })
    })
}

fn words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Word| {
                (0..k as u32).map(move |a| {
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

/// Number of distinct state maps induced by words on a complete DFA.
fn transformation_count(d: &Dfa) -> usize {
    let n = d.states() as u32;
    let k = d.alphabet().size() as u32;
    let id: Vec<u32> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(f) = queue.pop_front() {
        for a in 0..k {
            let g: Vec<u32> = f.iter().map(|&q| d.next(q, a)).collect();
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    seen.len()
}

/// Forward reachability through the layered graph.
fn reachable(mats: &[BoolMatrix], n: usize) -> bool {
    let mut frontier: Vec<bool> = vec![true; n];
    for m in mats {
        frontier = (0..n)
            .map(|j| (0..n).any(|i| frontier[i] && m.get(i, j)))
            .collect();
    }
    frontier.iter().any(|&b| b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimal_dfa_accepts_the_same_words(nfa in arb_nfa()) {
        let d = nfa.minimal_dfa(CAP).unwrap();
        for w in words(nfa.alphabet().size(), 5) {
            prop_assert_eq!(d.accepts(&w), nfa.accepts(&w));
        }
    }

    #[test]
    fn syntactic_monoid_counts_state_maps(nfa in arb_nfa()) {
        let d = nfa.minimal_dfa(CAP).unwrap();
        let m = syntactic_monoid(&d, CAP).unwrap();
        prop_assert_eq!(m.size(), transformation_count(&d));
        prop_assert!(m.is_associative());
    }

    #[test]
    fn syntactic_monoid_divides_transition_monoid(nfa in arb_nfa()) {
        let d = nfa.minimal_dfa(CAP).unwrap();
        let sm = syntactic_monoid(&d, CAP).unwrap();
        let tm = transition_monoid(&nfa, CAP).unwrap();
        prop_assert!(sm.size() <= tm.size());
    }

    #[test]
    fn layered_paths_match_products(n in 1usize..=3, bits in proptest::collection::vec(any::<bool>(), 0..36)) {
        let mats: Vec<BoolMatrix> = bits
            .chunks_exact(n * n)
            .map(|c| fold(n, c).unwrap())
            .collect();
        prop_assert_eq!(path_exists(&mats, n).unwrap(), reachable(&mats, n));
    }

    #[test]
    fn relation_indices_round_trip(n in 1usize..=3, seed in any::<u64>()) {
        let index = (seed % (1u64 << (n * n))) as usize;
        let a = bn_element(n, index);
        prop_assert_eq!(bn_index(&a), index);
        prop_assert_eq!(fold(n, &unfold(&a)).unwrap(), a);
    }
}

#[test]
fn direct_products_of_aperiodic_monoids_stay_aperiodic() {
    let cat = small_aperiodic().unwrap();
    for (na, a) in &cat {
        assert!(is_aperiodic(a), "{na}");
        for (nb, b) in cat.iter().take(5) {
            let p = direct_product(a, b, CAP).unwrap();
            assert_eq!(p.size(), a.size() * b.size(), "{na} x {nb}");
            assert!(p.is_associative(), "{na} x {nb}");
            assert!(is_aperiodic(&p), "{na} x {nb}");
        }
    }
}
