use super::Formula;
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::picture::AttributeSet;

/// Names accepted by [`builtin`].
pub const BUILTINS: [&str; 5] = ["form_top", "form_left", "form_right", "leq_sigma", "leq_pi"];

/// `base`, `base'`, `base''`, ... whichever first avoids `taken`.
fn fresh(base: &str, taken: &[&str]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name.as_str()) {
        name.push('\'');
    }
    name
}

/// `x` is in the top row: `¬∃y S1(y, x)`.
pub fn form_top(x: &str) -> Formula {
    let y = fresh("y", &[x]);
    Formula::not(Formula::exists(&y, Formula::s1(&y, x)))
}

/// `x` is in the leftmost column: `¬∃y S2(y, x)`.
pub fn form_left(x: &str) -> Formula {
    let y = fresh("y", &[x]);
    Formula::not(Formula::exists(&y, Formula::s2(&y, x)))
}

/// `x` is in the rightmost column: `¬∃y S2(x, y)`.
pub fn form_right(x: &str) -> Formula {
    let y = fresh("y", &[x]);
    Formula::not(Formula::exists(&y, Formula::s2(x, &y)))
}

/// `set` is closed under horizontal successors.
pub fn closed_right(set: &str) -> Formula {
    Formula::forall(
        "x1",
        Formula::forall(
            "x2",
            Formula::implies(
                Formula::and([Formula::s2("x1", "x2"), Formula::in_set(set, "x1")]),
                Formula::in_set(set, "x2"),
            ),
        ),
    )
}

/// `x ≤2 x'` with a universal set quantifier: every right-closed set
/// containing `x` contains `x'`.
pub fn leq_pi(x: &str, x2: &str) -> Formula {
    let set = "cld";
    let body = closed_right(set);
    // rename the closure's bound variables away from the parameters
    let body = rename_bound(&body, &[x, x2]);
    Formula::forall_set(
        set,
        Formula::implies(
            Formula::and([Formula::in_set(set, x), body]),
            Formula::in_set(set, x2),
        ),
    )
}

/// `x ≤2 x'` with an existential set quantifier: some set runs from `x`
/// rightwards, stops at `x'` and never reaches the right border elsewhere.
pub fn leq_sigma(x: &str, x2: &str) -> Formula {
    let set = "cld";
    let x1 = fresh("x1", &[x, x2]);
    let x3 = fresh("x2", &[x, x2, &x1]);
    let stops = Formula::forall(
        &x1,
        Formula::implies(
            Formula::and([form_right(&x1), Formula::not(Formula::eq(&x1, x2))]),
            Formula::not(Formula::in_set(set, &x1)),
        ),
    );
    let runs = Formula::forall(
        &x1,
        Formula::forall(
            &x3,
            Formula::implies(
                Formula::and([
                    Formula::s2(&x1, &x3),
                    Formula::not(Formula::eq(&x1, x2)),
                    Formula::in_set(set, &x1),
                ]),
                Formula::in_set(set, &x3),
            ),
        ),
    );
    Formula::exists_set(set, Formula::and([Formula::in_set(set, x), stops, runs]))
}

/// Renames first-order binders of a closed-over-parameters formula so that
/// none of them equals one of `avoid`.
fn rename_bound(f: &Formula, avoid: &[&str]) -> Formula {
    let go = |g: &Formula| rename_bound(g, avoid);
    match f {
        Formula::Exists(v, b) | Formula::Forall(v, b) if avoid.contains(&v.as_str()) => {
            let mut taken: Vec<String> = avoid.iter().map(|s| s.to_string()).collect();
            taken.extend(b.fo_names());
            let refs: Vec<&str> = taken.iter().map(String::as_str).collect();
            let nv = fresh(v, &refs);
            let body = go(&substitute(b, v, &nv));
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(&nv, body)
            } else {
                Formula::forall(&nv, body)
            }
        }
        Formula::Exists(v, b) => Formula::exists(v, go(b)),
        Formula::Forall(v, b) => Formula::forall(v, go(b)),
        Formula::ExistsSet(v, b) => Formula::exists_set(v, go(b)),
        Formula::ForallSet(v, b) => Formula::forall_set(v, go(b)),
        Formula::Not(b) => Formula::not(go(b)),
        Formula::And(v) => Formula::And(v.iter().map(go).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(go).collect()),
        Formula::Implies(a, b) => Formula::implies(go(a), go(b)),
        Formula::Iff(a, b) => Formula::iff(go(a), go(b)),
        other => other.clone(),
    }
}

/// Replaces free occurrences of position variable `from` by `to`.
fn substitute(f: &Formula, from: &str, to: &str) -> Formula {
    let r = |v: &String| if v == from { to.to_string() } else { v.clone() };
    let go = |g: &Formula| substitute(g, from, to);
    match f {
        Formula::In(s, x) => Formula::In(s.clone(), r(x)),
        Formula::S1(x, y) => Formula::S1(r(x), r(y)),
        Formula::S2(x, y) => Formula::S2(r(x), r(y)),
        Formula::Eq(x, y) => Formula::Eq(r(x), r(y)),
        Formula::Exists(v, _) | Formula::Forall(v, _) if v == from => f.clone(),
        Formula::Exists(v, b) => Formula::exists(v, go(b)),
        Formula::Forall(v, b) => Formula::forall(v, go(b)),
        Formula::ExistsSet(v, b) => Formula::exists_set(v, go(b)),
        Formula::ForallSet(v, b) => Formula::forall_set(v, go(b)),
        Formula::Not(b) => Formula::not(go(b)),
        Formula::And(v) => Formula::And(v.iter().map(go).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(go).collect()),
        Formula::Implies(a, b) => Formula::implies(go(a), go(b)),
        Formula::Iff(a, b) => Formula::iff(go(a), go(b)),
        Formula::True | Formula::False => f.clone(),
    }
}

/// The library formulas with their conventional variables `x`, `x'`.
pub fn builtin(name: &str) -> Result<Formula> {
    Ok(match name {
        "form_top" => form_top("x"),
        "form_left" => form_left("x"),
        "form_right" => form_right("x"),
        "leq_sigma" => leq_sigma("x", "x'"),
        "leq_pi" => leq_pi("x", "x'"),
        other => return Err(Error::Invalid(format!("unknown builtin `{other}`"))),
    })
}

/// Conjunction fixing every attribute of `attrs` at `x` to the bits of `a`.
pub fn letter(a: u32, attrs: &[String], x: &str) -> Formula {
    Formula::And(
        attrs
            .iter()
            .enumerate()
            .map(|(i, mu)| {
                let atom = Formula::in_set(mu, x);
                if a >> i & 1 == 1 {
                    atom
                } else {
                    Formula::not(atom)
                }
            })
            .collect(),
    )
}

/// Same as [`letter`], for state bits.
pub fn state(q: u32, bits: &[String], x: &str) -> Formula {
    letter(q, bits, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    /// `∃ run (run is valid ∧ run accepts)`.
    Exists,
    /// `∀ run (run is valid → run accepts)`.
    Forall,
}

/// Defines `top⁻¹(L(d))` over `attrs`: the run of `d` on the top row is
/// stored in fresh set variables, one per state bit, with the state before
/// each letter at that letter's position. A run accepts when the state at
/// the top-right position, stepped through the letter there, is final.
pub fn topreg(d: &Dfa, attrs: &AttributeSet, q: Quantifier) -> Result<Formula> {
    if d.alphabet().size() != 1 << attrs.len() {
        return Err(Error::AlphabetMismatch(
            1 << attrs.len(),
            d.alphabet().size(),
        ));
    }
    let states = d.states() as u32;
    let nbits = (32 - (states.max(2) - 1).leading_zeros()) as usize;
    let mut bits = Vec::new();
    for i in 0..nbits {
        let mut name = format!("q{i}");
        while attrs.contains(&name) {
            name.push('\'');
        }
        bits.push(name);
    }
    let names = attrs.names();
    let (x, x2) = ("x", "x'");
    let start = Formula::forall(
        x,
        Formula::implies(
            Formula::and([form_left(x), form_top(x)]),
            state(d.initial(), &bits, x),
        ),
    );
    let mut steps = vec![start];
    let mut last = Vec::new();
    for s in 0..states {
        for a in 0..d.alphabet().size() as u32 {
            let t = d.next(s, a);
            steps.push(Formula::forall(
                x,
                Formula::forall(
                    x2,
                    Formula::implies(
                        Formula::and([
                            state(s, &bits, x),
                            letter(a, names, x),
                            Formula::s2(x, x2),
                            form_top(x),
                        ]),
                        state(t, &bits, x2),
                    ),
                ),
            ));
            if d.is_final(t) {
                last.push(Formula::and([state(s, &bits, x), letter(a, names, x)]));
            }
        }
    }
    let phi = Formula::And(steps);
    let psi = Formula::exists(
        x,
        Formula::and([form_top(x), form_right(x), Formula::Or(last)]),
    );
    let mut body = match q {
        Quantifier::Exists => Formula::and([phi, psi]),
        Quantifier::Forall => Formula::implies(phi, psi),
    };
    for b in bits.iter().rev() {
        body = match q {
            Quantifier::Exists => Formula::exists_set(b, body),
            Quantifier::Forall => Formula::forall_set(b, body),
        };
    }
    Ok(body)
}

/// Rewrites `∀y ψ` to `¬∃y ¬ψ` throughout.
fn eliminate_forall(f: &Formula) -> Formula {
    let go = eliminate_forall;
    match f {
        Formula::Forall(v, b) => Formula::not(Formula::exists(v, Formula::not(go(b)))),
        Formula::Exists(v, b) => Formula::exists(v, go(b)),
        Formula::Not(b) => Formula::not(go(b)),
        Formula::And(v) => Formula::And(v.iter().map(go).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(go).collect()),
        Formula::Implies(a, b) => Formula::implies(go(a), go(b)),
        Formula::Iff(a, b) => Formula::iff(go(a), go(b)),
        other => other.clone(),
    }
}

/// Bounds every existential position quantifier to `rect`.
fn restrict_to(f: &Formula, rect: &str) -> Formula {
    let go = |g: &Formula| restrict_to(g, rect);
    match f {
        Formula::Exists(v, b) => {
            Formula::exists(v, Formula::and([Formula::in_set(rect, v), go(b)]))
        }
        Formula::Not(b) => Formula::not(go(b)),
        Formula::And(v) => Formula::And(v.iter().map(go).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(go).collect()),
        Formula::Implies(a, b) => Formula::implies(go(a), go(b)),
        Formula::Iff(a, b) => Formula::iff(go(a), go(b)),
        other => other.clone(),
    }
}

/// The pieces shared by both relativizations: the rectangle variable, the
/// `between ∧ ...` guard parts and the relativized formula.
fn relativize_parts(
    phi: &Formula,
    x: &str,
    x2: &str,
) -> Result<(String, Formula, Formula, Formula)> {
    if !phi.is_first_order() {
        return Err(Error::NotFirstOrder(phi.to_string()));
    }
    let used = phi.fo_names();
    for v in [x, x2] {
        if used.contains(v) {
            return Err(Error::Invalid(format!("formula already uses `{v}`")));
        }
    }
    if x == x2 {
        return Err(Error::Invalid(
            "the two boundary variables must differ".into(),
        ));
    }
    let sets: Vec<String> = phi.set_names().into_iter().collect();
    let set_refs: Vec<&str> = sets.iter().map(String::as_str).collect();
    let rect = fresh("rect", &set_refs);
    let r = rect.as_str();
    let x1 = fresh("x1", &[x, x2]);
    let x3 = fresh("x2", &[x, x2, &x1]);
    let columns = Formula::forall(
        &x1,
        Formula::forall(
            &x3,
            Formula::implies(
                Formula::s1(&x1, &x3),
                Formula::iff(Formula::in_set(r, &x1), Formula::in_set(r, &x3)),
            ),
        ),
    );
    let between = Formula::and([
        columns,
        Formula::in_set(r, x),
        Formula::in_set(r, x2),
        Formula::forall(
            &x1,
            Formula::implies(Formula::s2(&x1, x), Formula::not(Formula::in_set(r, &x1))),
        ),
        Formula::forall(
            &x3,
            Formula::implies(Formula::s2(x2, &x3), Formula::not(Formula::in_set(r, &x3))),
        ),
        Formula::forall(
            &x1,
            Formula::forall(
                &x3,
                Formula::implies(
                    Formula::and([
                        Formula::s2(&x1, &x3),
                        form_top(&x1),
                        Formula::not(Formula::eq(&x1, x2)),
                        Formula::not(Formula::eq(&x3, x)),
                    ]),
                    Formula::iff(Formula::in_set(r, &x3), Formula::in_set(r, &x1)),
                ),
            ),
        ),
    ]);
    let nowrap = Formula::or([
        form_left(x),
        Formula::not(Formula::exists(
            &x3,
            Formula::and([form_left(&x3), Formula::in_set(r, &x3)]),
        )),
    ]);
    let inner = restrict_to(&eliminate_forall(phi), r);
    Ok((rect, between, nowrap, inner))
}

/// `∃rect (between ∧ nowrap ∧ φ')`: holds at top-row positions `x = (1,j)`,
/// `x' = (1,j')` iff `j ≤ j'` and columns `j..j'` satisfy `φ`.
pub fn relativize_fo(phi: &Formula, x: &str, x2: &str) -> Result<Formula> {
    let (rect, between, nowrap, inner) = relativize_parts(phi, x, x2)?;
    Ok(Formula::exists_set(
        &rect,
        Formula::and([between, nowrap, inner]),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile, Alphabet};
    use crate::mso::{evaluate, evaluate_with, models_of, Assignment, Bounds, PictureModel};

    fn blank(m: usize, n: usize) -> PictureModel {
        PictureModel::blank(AttributeSet::empty(), m, n).unwrap()
    }

    #[test]
    fn order_formulas_agree_with_direct_predicate() {
        let (s, p) = (leq_sigma("x", "x'"), leq_pi("x", "x'"));
        for m in 1..=2 {
            for n in 1..=3 {
                let pic = blank(m, n);
                for (i, j, i2, j2) in itertools(m, n) {
                    let a = Assignment::new().with("x", i, j).with("x'", i2, j2);
                    let want = i == i2 && j <= j2;
                    assert_eq!(evaluate_with(&s, &pic, &a, 12).unwrap(), want);
                    assert_eq!(evaluate_with(&p, &pic, &a, 12).unwrap(), want);
                }
            }
        }
    }

    fn itertools(m: usize, n: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut v = Vec::new();
        for i in 0..m {
            for j in 0..n {
                for i2 in 0..m {
                    for j2 in 0..n {
                        v.push((i, j, i2, j2));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn builtins_by_name() {
        for name in BUILTINS {
            assert!(builtin(name).is_ok());
        }
        assert!(builtin("form_bottom").is_err());
        // parameters never get captured
        let f = form_top("y");
        assert_eq!(
            f.free_fo().into_iter().collect::<Vec<_>>(),
            vec!["y".to_string()]
        );
        let g = leq_pi("x1", "x2");
        assert_eq!(g.free_fo().len(), 2);
        let pic = blank(1, 3);
        let a = Assignment::new().with("x1", 0, 0).with("x2", 0, 2);
        assert!(evaluate_with(&g, &pic, &a, 12).unwrap());
        let back = Assignment::new().with("x1", 0, 2).with("x2", 0, 0);
        assert!(!evaluate_with(&g, &pic, &back, 12).unwrap());
    }

    fn top_filter(d: &crate::automata::Dfa, p: &PictureModel) -> bool {
        d.accepts(&p.rows[0])
    }

    #[test]
    fn top_row_languages() {
        let attrs = AttributeSet::new(["a"]).unwrap();
        let b = Alphabet::binary();
        for re in ["(0|1)*1", "(0*10*1)*0*", "0(0|1)*"] {
            let d = compile(re, &b).unwrap().minimal_dfa(100).unwrap();
            let s = topreg(&d, &attrs, Quantifier::Exists).unwrap();
            let p = topreg(&d, &attrs, Quantifier::Forall).unwrap();
            let ms = models_of(&s, &attrs, &[], Bounds::rect(2, 3), 12).unwrap();
            let mp = models_of(&p, &attrs, &[], Bounds::rect(2, 3), 12).unwrap();
            let all = models_of(&Formula::True, &attrs, &[], Bounds::rect(2, 3), 12).unwrap();
            let want: Vec<PictureModel> = all.into_iter().filter(|p| top_filter(&d, p)).collect();
            assert_eq!(ms, want, "{re}");
            assert_eq!(mp, want, "{re}");
        }
    }

    #[test]
    fn top_row_check_must_read_last_letter() {
        // checking only the state stored at the last position ignores the last letter
        let attrs = AttributeSet::new(["a"]).unwrap();
        let d = compile("(0|1)*1", &Alphabet::binary())
            .unwrap()
            .minimal_dfa(100)
            .unwrap();
        let bits = vec!["q0".to_string()];
        let full = topreg(&d, &attrs, Quantifier::Exists).unwrap();
        let Formula::ExistsSet(_, body) = &full else {
            panic!()
        };
        let Formula::And(parts) = body.as_ref() else {
            panic!()
        };
        let finals: Vec<Formula> = (0..d.states() as u32)
            .filter(|&q| d.is_final(q))
            .map(|q| state(q, &bits, "x"))
            .collect();
        let stored_only = Formula::exists(
            "x",
            Formula::and([form_top("x"), form_right("x"), Formula::Or(finals)]),
        );
        let literal = Formula::exists_set("q0", Formula::and([parts[0].clone(), stored_only]));
        let p = PictureModel::new(attrs.clone(), vec![vec![0, 1]]).unwrap();
        assert!(evaluate(&full, &p, 12).unwrap());
        assert!(!evaluate(&literal, &p, 12).unwrap());
    }

    fn shipped() -> Vec<Formula> {
        crate::mso::RELATIVIZATION_FORMULAS
            .iter()
            .map(|t| Formula::parse(t).unwrap())
            .collect()
    }

    #[test]
    fn relativization_matches_subpictures() {
        let attrs = AttributeSet::new(["a"]).unwrap();
        for phi in shipped() {
            let s = relativize_fo(&phi, "x", "x'").unwrap();
            for pic in crate::mso::eval::pictures(&attrs, &[], Bounds::rect(2, 3)).unwrap() {
                let n = pic.width();
                for j in 0..n {
                    for j2 in 0..n {
                        let a = Assignment::new().with("x", 0, j).with("x'", 0, j2);
                        let want = j <= j2 && evaluate(&phi, &pic.columns(j, j2), 12).unwrap();
                        assert_eq!(
                            evaluate_with(&s, &pic, &a, 12).unwrap(),
                            want,
                            "{phi} {pic:?} {j} {j2}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn universal_form_is_vacuous_on_adjacent_wrap() {
        // with x' directly left of x no rectangle satisfies `between`
        let (rect, between, nowrap, inner) = relativize_parts(&Formula::True, "x", "x'").unwrap();
        let pi = Formula::forall_set(
            &rect,
            Formula::implies(between, Formula::and([nowrap, inner])),
        );
        let pic = blank(1, 3);
        let adjacent = Assignment::new().with("x", 0, 1).with("x'", 0, 0);
        assert!(evaluate_with(&pi, &pic, &adjacent, 12).unwrap());
        let sigma = relativize_fo(&Formula::True, "x", "x'").unwrap();
        assert!(!evaluate_with(&sigma, &pic, &adjacent, 12).unwrap());
        let apart = Assignment::new().with("x", 0, 2).with("x'", 0, 0);
        assert!(!evaluate_with(&pi, &pic, &apart, 12).unwrap());
    }

    #[test]
    fn relativization_preconditions() {
        let phi = Formula::parse("(exists-set X (exists y (in X y)))").unwrap();
        assert!(matches!(
            relativize_fo(&phi, "x", "x'"),
            Err(Error::NotFirstOrder(_))
        ));
        let uses_x = Formula::parse("(exists x (top x))").unwrap();
        assert!(relativize_fo(&uses_x, "x", "x'").is_err());
        // a free set variable named like the rectangle is avoided
        let rect = Formula::parse("(exists y (in rect y))").unwrap();
        let r = relativize_fo(&rect, "x", "x'").unwrap();
        assert!(r.free_sets().contains("rect"));
    }
}
