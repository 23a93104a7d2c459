use super::{FiniteMonoid, MonoidView};
use crate::error::{Error, Result};

/// Largest block product that is ever materialized.
pub const BLOCK_PRODUCT_CAP: usize = 1 << 20;

/// Tables up to this size get a full associativity scan after construction.
const CHECK_ASSOC_UP_TO: usize = 512;

/// The one-element monoid.
pub fn trivial() -> FiniteMonoid {
    FiniteMonoid::from_table(1, 0, vec![0]).expect("valid table")
}

/// `U_1 = {1, 0}` under multiplication. Index 0 is `1`, index 1 is `0`.
pub fn u1() -> FiniteMonoid {
    let mut m = FiniteMonoid::from_table(2, 0, vec![0, 1, 1, 1]).expect("valid table");
    m.set_labels(vec!["1".into(), "0".into()])
        .expect("two labels");
    m
}

/// The cyclic group `Z_n`.
pub fn cyclic(n: usize) -> Result<FiniteMonoid> {
    let mut m = FiniteMonoid::from_fn(n, 0, |x, y| (x + y) % n as u32)?;
    m.set_generators(if n > 1 { vec![1] } else { vec![0] });
    Ok(m)
}

fn finish(size: usize, identity: u32, table: Vec<u32>) -> Result<FiniteMonoid> {
    if size <= CHECK_ASSOC_UP_TO {
        FiniteMonoid::from_table(size, identity, table)
    } else {
        FiniteMonoid::from_table_unchecked(size, identity, table)
    }
}

/// Componentwise product; element `(i, j)` has index `i * |b| + j`.
pub fn direct_product(a: &FiniteMonoid, b: &FiniteMonoid, cap: usize) -> Result<FiniteMonoid> {
    let nb = b.size();
    let size = a.size().saturating_mul(nb);
    if size > cap {
        return Err(Error::cap("direct product elements", size, cap));
    }
    let mut table = Vec::with_capacity(size * size);
    for x in 0..size {
        let (xa, xb) = ((x / nb) as u32, (x % nb) as u32);
        for y in 0..size {
            let (ya, yb) = ((y / nb) as u32, (y % nb) as u32);
            table.push(a.mul(xa, ya) * nb as u32 + b.mul(xb, yb));
        }
    }
    finish(size, a.identity() * nb as u32 + b.identity(), table)
}

/// A left action of `T` on `S` together with a right action of `T` on `S`.
///
/// `S` is written additively: its product is `+` and its identity is `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionPair {
    /// `left[t * |S| + s] = t s`.
    pub left: Vec<u32>,
    /// `right[s * |T| + t] = s t`.
    pub right: Vec<u32>,
}

impl ActionPair {
    /// Both actions trivial.
    pub fn trivial(s: &FiniteMonoid, t: &FiniteMonoid) -> Self {
        let (ns, nt) = (s.size(), t.size());
        ActionPair {
            left: (0..nt * ns).map(|i| (i % ns) as u32).collect(),
            right: (0..ns * nt).map(|i| (i / nt) as u32).collect(),
        }
    }

    pub fn act_left(&self, s: &FiniteMonoid, t: u32, x: u32) -> u32 {
        self.left[t as usize * s.size() + x as usize]
    }

    pub fn act_right(&self, t: &FiniteMonoid, x: u32, y: u32) -> u32 {
        self.right[x as usize * t.size() + y as usize]
    }

    /// Checks every law; the error names the first violated one.
    pub fn validate(&self, s: &FiniteMonoid, t: &FiniteMonoid) -> Result<()> {
        let (ns, nt) = (s.size() as u32, t.size() as u32);
        if self.left.len() != (ns * nt) as usize || self.right.len() != (ns * nt) as usize {
            return Err(Error::InvalidAction("table dimensions".into()));
        }
        if self.left.iter().chain(&self.right).any(|&v| v >= ns) {
            return Err(Error::InvalidAction(
                "range: action values must lie in S".into(),
            ));
        }
        let l = |a: u32, x: u32| self.act_left(s, a, x);
        let r = |x: u32, a: u32| self.act_right(t, x, a);
        let (zero, one) = (s.identity(), t.identity());
        for x in 0..ns {
            if l(one, x) != x {
                return Err(Error::InvalidAction(format!("1s = s (left, s = {x})")));
            }
            if r(x, one) != x {
                return Err(Error::InvalidAction(format!("s1 = s (right, s = {x})")));
            }
        }
        for a in 0..nt {
            if l(a, zero) != zero {
                return Err(Error::InvalidAction(format!("t0 = 0 (left, t = {a})")));
            }
            if r(zero, a) != zero {
                return Err(Error::InvalidAction(format!("0t = 0 (right, t = {a})")));
            }
        }
        for a in 0..nt {
            for x in 0..ns {
                for y in 0..ns {
                    if l(a, s.mul(x, y)) != s.mul(l(a, x), l(a, y)) {
                        return Err(Error::InvalidAction(format!(
                            "t(s + s') = ts + ts' (t = {a}, s = {x}, s' = {y})"
                        )));
                    }
                    if r(s.mul(x, y), a) != s.mul(r(x, a), r(y, a)) {
                        return Err(Error::InvalidAction(format!(
                            "(s + s')t = st + s't (t = {a}, s = {x}, s' = {y})"
                        )));
                    }
                }
            }
        }
        for a in 0..nt {
            for b in 0..nt {
                for x in 0..ns {
                    if l(t.mul(a, b), x) != l(a, l(b, x)) {
                        return Err(Error::InvalidAction(format!(
                            "(tt')s = t(t's) (t = {a}, t' = {b}, s = {x})"
                        )));
                    }
                    if r(x, t.mul(a, b)) != r(r(x, a), b) {
                        return Err(Error::InvalidAction(format!(
                            "s(tt') = (st)t' (t = {a}, t' = {b}, s = {x})"
                        )));
                    }
                    if r(l(a, x), b) != l(a, r(x, b)) {
                        return Err(Error::InvalidAction(format!(
                            "compatibility (ts)t' = t(st') (t = {a}, t' = {b}, s = {x})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `S ** T` on pairs `(s, t)` with `(s,t)(s',t') = (s t' + t s', t t')`.
/// Element `(s, t)` has index `s * |T| + t`.
pub fn bilateral_semidirect(
    s: &FiniteMonoid,
    t: &FiniteMonoid,
    actions: &ActionPair,
    cap: usize,
) -> Result<FiniteMonoid> {
    actions.validate(s, t)?;
    let nt = t.size();
    let size = s.size().saturating_mul(nt);
    if size > cap {
        return Err(Error::cap("semidirect product elements", size, cap));
    }
    let mut table = Vec::with_capacity(size * size);
    for x in 0..size {
        let (xs, xt) = ((x / nt) as u32, (x % nt) as u32);
        for y in 0..size {
            let (ys, yt) = ((y / nt) as u32, (y % nt) as u32);
            let first = actions.act_right(t, xs, yt);
            let second = actions.act_left(s, xt, ys);
            table.push(s.mul(first, second) * nt as u32 + t.mul(xt, yt));
        }
    }
    finish(size, s.identity() * nt as u32 + t.identity(), table)
}

/// An element `(F, n)` of `M □ N`; `f[n1 * |N| + n2] = F(n1, n2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockElement {
    pub f: Vec<u32>,
    pub n: u32,
}

impl BlockElement {
    /// `(F ≡ 1_M, 1_N)`.
    pub fn identity(m: &impl MonoidView, n: &impl MonoidView) -> Self {
        BlockElement {
            f: vec![m.identity(); n.size() * n.size()],
            n: n.identity(),
        }
    }

    pub fn get(&self, nsize: usize, n1: u32, n2: u32) -> u32 {
        self.f[n1 as usize * nsize + n2 as usize]
    }

    /// `(F,n)(F',n') = (G, nn')` with `G(n1,n2) = F(n1, n' n2) · F'(n1 n, n2)`.
    pub fn mul(
        &self,
        other: &BlockElement,
        m: &impl MonoidView,
        n: &impl MonoidView,
    ) -> BlockElement {
        let ns = n.size();
        let mut g = Vec::with_capacity(ns * ns);
        for n1 in 0..ns as u32 {
            let n1n = n.mul(n1, self.n);
            for n2 in 0..ns as u32 {
                let left = self.get(ns, n1, n.mul(other.n, n2));
                let right = other.get(ns, n1n, n2);
                g.push(m.mul(left, right));
            }
        }
        BlockElement {
            f: g,
            n: n.mul(self.n, other.n),
        }
    }

    /// Index in the materialized [`block_product`].
    pub fn index(&self, m_size: usize, n_size: usize) -> usize {
        let code = self
            .f
            .iter()
            .fold(0usize, |acc, &v| acc * m_size + v as usize);
        code * n_size + self.n as usize
    }

    fn from_index(idx: usize, m_size: usize, n_size: usize) -> Self {
        let n = (idx % n_size) as u32;
        let mut code = idx / n_size;
        let cells = n_size * n_size;
        let mut f = vec![0u32; cells];
        for i in (0..cells).rev() {
            f[i] = (code % m_size) as u32;
            code /= m_size;
        }
        BlockElement { f, n }
    }
}

/// Product of a word of block elements, without materializing `M □ N`.
pub fn fold_block(
    letters: &[BlockElement],
    m: &impl MonoidView,
    n: &impl MonoidView,
) -> BlockElement {
    letters
        .iter()
        .fold(BlockElement::identity(m, n), |acc, x| acc.mul(x, m, n))
}

/// The block product `M □ N` on `M^{N×N} × N`. Refused above
/// `min(cap, BLOCK_PRODUCT_CAP)` elements; use [`fold_block`] instead.
pub fn block_product(m: &FiniteMonoid, n: &FiniteMonoid, cap: usize) -> Result<FiniteMonoid> {
    let (ms, ns) = (m.size(), n.size());
    let limit = cap.min(BLOCK_PRODUCT_CAP);
    let size = (ms as u128)
        .checked_pow((ns * ns) as u32)
        .and_then(|p| p.checked_mul(ns as u128))
        .unwrap_or(u128::MAX);
    if size > limit as u128 {
        return Err(Error::cap("block product elements", size, limit));
    }
    let size = size as usize;
    let elems: Vec<BlockElement> = (0..size)
        .map(|i| BlockElement::from_index(i, ms, ns))
        .collect();
    let entries = size.saturating_mul(size);
    if entries > super::TABLE_CAP {
        return Err(Error::cap(
            "monoid table entries",
            entries,
            super::TABLE_CAP,
        ));
    }
    let mut table = Vec::with_capacity(entries);
    for x in &elems {
        for y in &elems {
            table.push(x.mul(y, m, n).index(ms, ns) as u32);
        }
    }
    let identity = BlockElement::identity(m, n).index(ms, ns) as u32;
    finish(size, identity, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{is_aperiodic, maximal_groups};

    #[test]
    fn direct_products() {
        let z2 = cyclic(2).unwrap();
        let p = direct_product(&z2, &z2, 100).unwrap();
        assert_eq!(p.size(), 4);
        // every element has order at most 2, so the product is not cyclic
        assert!((0..4).all(|x| p.mul(x, x) == p.identity()));
        let t = direct_product(&trivial(), &z2, 100).unwrap();
        assert_eq!(t.table(), z2.table());
        assert!(is_aperiodic(&direct_product(&u1(), &u1(), 100).unwrap()));
    }

    #[test]
    fn semidirect_with_trivial_actions_is_direct() {
        let (s, t) = (u1(), cyclic(3).unwrap());
        let acts = ActionPair::trivial(&s, &t);
        let b = bilateral_semidirect(&s, &t, &acts, 100).unwrap();
        assert_eq!(b.table(), direct_product(&s, &t, 100).unwrap().table());
    }

    #[test]
    fn ordinary_semidirect_product() {
        // Z_3 acted on by Z_2 via negation gives the dihedral group of order 6
        let (s, t) = (cyclic(3).unwrap(), cyclic(2).unwrap());
        let left = (0..2u32)
            .flat_map(|a| (0..3u32).map(move |x| if a == 0 { x } else { (3 - x) % 3 }))
            .collect();
        let right = (0..6u32).map(|i| i / 2).collect();
        let acts = ActionPair { left, right };
        let d3 = bilateral_semidirect(&s, &t, &acts, 100).unwrap();
        assert_eq!(d3.size(), 6);
        // non-commutative
        assert!((0..6).any(|x| (0..6).any(|y| d3.mul(x, y) != d3.mul(y, x))));
        // (s,t)(s',t') = (s + t s', t t')
        for x in 0..6u32 {
            for y in 0..6u32 {
                let (xs, xt, ys, yt) = (x / 2, x % 2, y / 2, y % 2);
                let expect = s.mul(xs, acts.act_left(&s, xt, ys)) * 2 + t.mul(xt, yt);
                assert_eq!(d3.mul(x, y), expect);
            }
        }
    }

    #[test]
    fn invalid_actions_name_the_law() {
        let (s, t) = (u1(), cyclic(2).unwrap());
        let mut acts = ActionPair::trivial(&s, &t);
        // the generator of Z_2 moves the additive zero of U_1
        acts.left[2] = 1;
        let err = acts.validate(&s, &t).unwrap_err();
        assert!(err.to_string().contains("t0 = 0"), "{err}");
    }

    #[test]
    fn block_products() {
        let z2 = cyclic(2).unwrap();
        let b = block_product(&u1(), &z2, 1 << 20).unwrap();
        // |M|^(|N|^2) * |N|
        assert_eq!(b.size(), 32);
        for g in maximal_groups(&b) {
            let mut proj: Vec<u32> = g.elements.iter().map(|&x| x % 2).collect();
            proj.sort_unstable();
            proj.dedup();
            assert_eq!(proj.len(), g.order());
        }
        let t = block_product(&z2, &trivial(), 100).unwrap();
        assert_eq!(t.table(), z2.table());
        assert!(block_product(&u1(), &cyclic(5).unwrap(), 1 << 20)
            .unwrap_err()
            .is_cap());
    }

    #[test]
    fn fold_matches_table() {
        let (m, n) = (u1(), cyclic(2).unwrap());
        let b = block_product(&m, &n, 1 << 20).unwrap();
        let sample = [3usize, 17, 22, 31];
        let elems: Vec<BlockElement> = sample
            .iter()
            .map(|&i| BlockElement::from_index(i, 2, 2))
            .collect();
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    let w = [elems[x].clone(), elems[y].clone(), elems[z].clone()];
                    let folded = fold_block(&w, &m, &n).index(2, 2) as u32;
                    let tab = b.mul(b.mul(sample[x] as u32, sample[y] as u32), sample[z] as u32);
                    assert_eq!(folded, tab);
                }
            }
        }
        assert_eq!(fold_block(&[], &m, &n), BlockElement::identity(&m, &n));
        assert_eq!(fold_block(&elems[..1], &m, &n), elems[0]);
    }
}
