use super::products::ActionPair;
use super::FiniteMonoid;
use crate::error::{Error, Result};

/// Aperiodic monoids with at most four elements, by name. Element 0 is the
/// identity in each.
pub fn small_aperiodic() -> Result<Vec<(&'static str, FiniteMonoid)>> {
    // {1, a, b, 0} style tables given by a product on non-identity elements
    fn table(size: usize, f: impl Fn(u32, u32) -> u32) -> Result<FiniteMonoid> {
        FiniteMonoid::from_fn(size, 0, |x, y| match (x, y) {
            (0, y) => y,
            (x, 0) => x,
            (x, y) => f(x, y),
        })
    }
    Ok(vec![
        ("trivial", super::trivial()),
        ("u1", super::u1()),
        // 1 > a > 0 under meet
        ("chain3", table(3, |x, y| x.max(y))?),
        // a² = 0
        ("nil3", table(3, |_, _| 2)?),
        // xy = x on {a, b}
        ("left-zero3", table(3, |x, _| x)?),
        // xy = y on {a, b}
        ("right-zero3", table(3, |_, y| y)?),
        // 1 > a > b > 0 under meet
        ("chain4", table(4, |x, y| x.max(y))?),
        // a, a², a³ = 0
        ("nil4", table(4, |x, y| (x + y).min(3))?),
        // {1, a, b, 0} with a, b incomparable idempotents
        ("u1xu1", table(4, |x, y| if x == y { x } else { 3 })?),
    ])
}

/// Monoid endomorphisms of `s` (identity-preserving), as element maps.
pub fn endomorphisms(s: &FiniteMonoid) -> Result<Vec<Vec<u32>>> {
    let n = s.size();
    let total = (n as u128).pow(n as u32);
    if total > 1 << 20 {
        return Err(Error::cap("candidate endomorphisms", total, 1usize << 20));
    }
    let mut out = Vec::new();
    for code in 0..total as usize {
        let mut c = code;
        let map: Vec<u32> = (0..n)
            .map(|_| {
                let v = (c % n) as u32;
                c /= n;
                v
            })
            .collect();
        if map[s.identity() as usize] != s.identity() {
            continue;
        }
        let hom = (0..n as u32).all(|x| {
            (0..n as u32)
                .all(|y| map[s.mul(x, y) as usize] == s.mul(map[x as usize], map[y as usize]))
        });
        if hom {
            out.push(map);
        }
    }
    Ok(out)
}

/// An element whose powers exhaust `t`, if any.
pub fn monogenic_generator(t: &FiniteMonoid) -> Option<u32> {
    (0..t.size() as u32).find(|&g| {
        let mut seen = vec![false; t.size()];
        let mut x = t.identity();
        for _ in 0..=t.size() {
            seen[x as usize] = true;
            x = t.mul(x, g);
        }
        seen.iter().all(|&b| b)
    })
}

/// The action of a monogenic `t` induced by sending its generator to `phi`:
/// `act[u]` is the map by which `u` acts. `None` if not well defined.
fn induced(t: &FiniteMonoid, g: u32, phi: &[u32], left: bool) -> Option<Vec<Vec<u32>>> {
    let n = phi.len();
    let mut act: Vec<Option<Vec<u32>>> = vec![None; t.size()];
    act[t.identity() as usize] = Some((0..n as u32).collect());
    let mut u = t.identity();
    for _ in 0..=t.size() {
        let cur = act[u as usize].clone()?;
        // left: (u g) s = u (g s); right: s (u g) = (s u) g
        let next: Vec<u32> = if left {
            (0..n).map(|x| cur[phi[x] as usize]).collect()
        } else {
            (0..n).map(|x| phi[cur[x] as usize]).collect()
        };
        let v = t.mul(u, g);
        match &act[v as usize] {
            Some(prev) if *prev != next => return None,
            Some(_) => {}
            None => act[v as usize] = Some(next),
        }
        u = v;
    }
    act.into_iter().collect()
}

/// Every valid action pair of a monogenic `t` on `s`. Each candidate is
/// induced by a pair of endomorphisms for the generator and then checked
/// against all laws by [`ActionPair::validate`].
pub fn monogenic_action_pairs(s: &FiniteMonoid, t: &FiniteMonoid) -> Result<Vec<ActionPair>> {
    let g = monogenic_generator(t)
        .ok_or_else(|| Error::Invalid("acting monoid is not monogenic".into()))?;
    let endos = endomorphisms(s)?;
    let lefts: Vec<_> = endos
        .iter()
        .filter_map(|phi| induced(t, g, phi, true))
        .collect();
    let rights: Vec<_> = endos
        .iter()
        .filter_map(|psi| induced(t, g, psi, false))
        .collect();
    let (ns, nt) = (s.size(), t.size());
    let mut out = Vec::new();
    for l in &lefts {
        for r in &rights {
            let pair = ActionPair {
                left: (0..nt * ns).map(|i| l[i / ns][i % ns]).collect(),
                right: (0..ns * nt).map(|i| r[i % nt][i / nt]).collect(),
            };
            if pair.validate(s, t).is_ok() {
                out.push(pair);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{bilateral_semidirect, cyclic, is_aperiodic, maximal_groups, u1};

    #[test]
    fn catalog_is_aperiodic_and_small() {
        let all = small_aperiodic().unwrap();
        assert_eq!(all.len(), 9);
        for (name, m) in &all {
            assert!(is_aperiodic(m), "{name}");
            assert!(m.size() <= 4, "{name}");
            assert!(m.is_associative(), "{name}");
        }
    }

    #[test]
    fn endomorphisms_of_u1() {
        // identity and the map to 1
        let e = endomorphisms(&u1()).unwrap();
        assert_eq!(e, vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn generators() {
        assert_eq!(monogenic_generator(&cyclic(3).unwrap()), Some(1));
        assert_eq!(monogenic_generator(&u1()), Some(1));
        let z2 = cyclic(2).unwrap();
        let v4 = crate::semigroup::direct_product(&z2, &z2, 100).unwrap();
        assert_eq!(monogenic_generator(&v4), None);
    }

    #[test]
    fn action_pairs_include_trivial_and_are_valid() {
        let z2 = cyclic(2).unwrap();
        for (name, s) in small_aperiodic().unwrap() {
            let pairs = monogenic_action_pairs(&s, &z2).unwrap();
            assert!(pairs.contains(&ActionPair::trivial(&s, &z2)), "{name}");
        }
        // U1 x U1 has the swap automorphism, so Z2 acts nontrivially
        let (_, s) = small_aperiodic().unwrap().pop().unwrap();
        let pairs = monogenic_action_pairs(&s, &z2).unwrap();
        assert!(pairs.len() > 1);
    }

    #[test]
    fn groups_of_bilateral_products_project_injectively() {
        let ts = [cyclic(2).unwrap(), cyclic(3).unwrap(), u1()];
        for (name, s) in small_aperiodic().unwrap() {
            for t in &ts {
                for pair in monogenic_action_pairs(&s, t).unwrap() {
                    let w = bilateral_semidirect(&s, t, &pair, 1 << 10).unwrap();
                    let nt = t.size() as u32;
                    for g in maximal_groups(&w) {
                        let mut proj: Vec<u32> = g.elements.iter().map(|x| x % nt).collect();
                        proj.sort_unstable();
                        proj.dedup();
                        assert_eq!(proj.len(), g.order(), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn aperiodicity_is_needed_for_injective_projection() {
        // S = Z2 with trivial actions of Z2 gives Z2 x Z2,
        // whose group at the identity has order 4 over a 2-element T
        let z2 = cyclic(2).unwrap();
        let w = bilateral_semidirect(&z2, &z2, &ActionPair::trivial(&z2, &z2), 100).unwrap();
        let g = &maximal_groups(&w)[0];
        assert_eq!(g.order(), 4);
    }
}
