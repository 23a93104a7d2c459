use serde::Serialize;

use super::MonoidView;

/// True iff every element `s` satisfies `s^k = s^{k+1}` for some `k`.
pub fn is_aperiodic(m: &impl MonoidView) -> bool {
    (0..m.size() as u32).all(|x| power_stabilizes(m, x))
}

fn power_stabilizes(m: &impl MonoidView, x: u32) -> bool {
    let mut p = x;
    // the index of any element is at most the monoid size
    for _ in 0..=m.size() {
        let q = m.mul(p, x);
        if q == p {
            return true;
        }
        p = q;
    }
    false
}

/// A maximal subgroup: the units of the local monoid `eMe`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Group {
    pub idempotent: u32,
    pub elements: Vec<u32>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// One group per idempotent, in increasing idempotent order.
pub fn maximal_groups(m: &impl MonoidView) -> Vec<Group> {
    let n = m.size() as u32;
    let mut out = Vec::new();
    for e in 0..n {
        if m.mul(e, e) != e {
            continue;
        }
        let mut local: Vec<u32> = (0..n).map(|x| m.mul(m.mul(e, x), e)).collect();
        local.sort_unstable();
        local.dedup();
        // in a finite monoid a right-invertible element is invertible
        let elements = local
            .iter()
            .copied()
            .filter(|&x| local.iter().any(|&y| m.mul(x, y) == e))
            .collect();
        out.push(Group {
            idempotent: e,
            elements,
        });
    }
    out
}

/// Result of checking an element map between two monoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub multiplicative: bool,
    pub injective: bool,
    pub identity_preserving: bool,
}

impl HomReport {
    /// Injective homomorphism that is also onto a monoid of the same size.
    pub fn is_isomorphism(&self, a_size: usize, b_size: usize) -> bool {
        self.multiplicative && self.injective && self.identity_preserving && a_size == b_size
    }
}

/// Exhaustive check of `map: a -> b` on all pairs of elements of `a`.
pub fn check_homomorphism(map: &[u32], a: &impl MonoidView, b: &impl MonoidView) -> HomReport {
    let n = a.size();
    if map.len() != n || map.iter().any(|&y| y as usize >= b.size()) {
        return HomReport {
            multiplicative: false,
            injective: false,
            identity_preserving: false,
        };
    }
    let mut multiplicative = true;
    'outer: for x in 0..n as u32 {
        for y in 0..n as u32 {
            if map[a.mul(x, y) as usize] != b.mul(map[x as usize], map[y as usize]) {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    HomReport {
        multiplicative,
        injective: sorted.len() == n,
        identity_preserving: map[a.identity() as usize] == b.identity(),
    }
}
