//! Exhaustive comparisons between formulas and direct computations on all
//! small pictures.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::eval::pictures;
use super::{
    evaluate, evaluate_with, leq_pi, leq_sigma, models_of, relativize_fo, topreg, Assignment,
    Bounds, Formula, PictureModel, Quantifier,
};
use crate::automata::compile;
use crate::error::Result;
use crate::picture::{AttributeSet, ColumnAlphabet};

/// First-order formulas over `I = {a}` used for relativization.
pub const RELATIVIZATION_FORMULAS: [&str; 8] = [
    "true",
    "(exists y (top y))",
    "(exists y (and (top y) (in a y)))",
    "(forall y (-> (top y) (in a y)))",
    "(exists y z (and (s2 y z) (in a y) (not (in a z))))",
    "(exists y (and (left y) (in a y)))",
    "(forall y (-> (right y) (not (in a y))))",
    "(exists y z (and (s1 y z) (in a z)))",
];

/// Formulas over `I = {mu, a}` with `mu` read as a set of positions.
pub const SET_FORMULAS: [&str; 5] = [
    "(exists y (and (in mu y) (in a y)))",
    "(and (exists y (in mu y)) (forall y (-> (in mu y) (not (in a y)))))",
    "(forall y (<-> (in mu y) (in a y)))",
    "(exists y z (and (s2 y z) (in mu y) (not (in mu z))))",
    "(and (exists y (and (top y) (in mu y))) (forall y z (-> (and (s1 y z) (in mu y)) (and (in mu z) (in a z)))))",
];

/// Formulas over `I = {mu, a}` with `mu` read as one position.
pub const POSITION_FORMULAS: [&str; 5] = [
    "true",
    "(in a mu)",
    "(top mu)",
    "(exists y (and (s2 mu y) (in a y)))",
    "(and (right mu) (forall y (-> (in a y) (= y mu))))",
];

/// Binary regular expressions used for top-row definability.
pub const TOP_ROW_EXPRESSIONS: [&str; 3] = ["(0|1)*1", "(0*10*1)*0*", "0(0|1)*"];

/// Outcome of one exhaustive comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    /// Picture and assignment pairs compared, or the size of the larger
    /// model set.
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

struct Tally {
    name: String,
    cases: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            cases: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn done(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            cases: self.cases,
            counterexample: self.counterexample,
        }
    }
}

fn positions(p: &PictureModel) -> Vec<(usize, usize)> {
    (0..p.height())
        .flat_map(|i| (0..p.width()).map(move |j| (i, j)))
        .collect()
}

/// `leq_sigma`, `leq_pi` and `i = i' ∧ j ≤ j'` agree for every pair of
/// positions of every picture within `bounds`.
pub fn check_order(bounds: Bounds, set_cap: usize) -> Result<CheckOutcome> {
    let (s, p) = (leq_sigma("x", "x'"), leq_pi("x", "x'"));
    let mut t = Tally::new("order");
    for (m, n) in bounds.sizes() {
        let pic = PictureModel::blank(AttributeSet::empty(), m, n)?;
        for &(i, j) in &positions(&pic) {
            for &(i2, j2) in &positions(&pic) {
                let a = Assignment::new().with("x", i, j).with("x'", i2, j2);
                let want = i == i2 && j <= j2;
                let vs = evaluate_with(&s, &pic, &a, set_cap)?;
                let vp = evaluate_with(&p, &pic, &a, set_cap)?;
                t.record(vs == want && vp == want, || {
                    format!(
                        "{m}x{n} x=({i},{j}) x'=({i2},{j2}): sigma {vs}, pi {vp}, direct {want}"
                    )
                });
            }
        }
    }
    Ok(t.done())
}

/// The relativized formula holds at top-row `x = (1,j)`, `x' = (1,j')` iff
/// `j ≤ j'` and columns `j..j'` satisfy `phi`.
pub fn check_relativization(
    phi: &Formula,
    attrs: &AttributeSet,
    bounds: Bounds,
    set_cap: usize,
) -> Result<CheckOutcome> {
    let rel = relativize_fo(phi, "x", "x'")?;
    let mut t = Tally::new(format!("relativize {phi}"));
    for pic in pictures(attrs, &[], bounds)? {
        let n = pic.width();
        for j in 0..n {
            for j2 in 0..n {
                let a = Assignment::new().with("x", 0, j).with("x'", 0, j2);
                let got = evaluate_with(&rel, &pic, &a, set_cap)?;
                let want = j <= j2 && evaluate(phi, &pic.columns(j, j2), set_cap)?;
                t.record(got == want, || {
                    format!("{} j={j} j'={j2}: got {got}", pic.render())
                });
            }
        }
    }
    Ok(t.done())
}

/// Pictures of one size that agree on columns `j..j'` get the same verdict
/// from the relativized formula.
pub fn check_interval(
    phi: &Formula,
    attrs: &AttributeSet,
    bounds: Bounds,
    set_cap: usize,
) -> Result<CheckOutcome> {
    let rel = relativize_fo(phi, "x", "x'")?;
    let mut t = Tally::new(format!("interval {phi}"));
    let mut seen: HashMap<(usize, usize, usize, usize, PictureModel), (bool, String)> =
        HashMap::new();
    for pic in pictures(attrs, &[], bounds)? {
        let (m, n) = (pic.height(), pic.width());
        for j in 0..n {
            for j2 in j..n {
                let a = Assignment::new().with("x", 0, j).with("x'", 0, j2);
                let v = evaluate_with(&rel, &pic, &a, set_cap)?;
                let key = (m, n, j, j2, pic.columns(j, j2));
                match seen.get(&key) {
                    Some((w, other)) => {
                        let w = *w;
                        t.record(v == w, || {
                            format!("{} vs {other} on columns {j}..{j2}", pic.render())
                        })
                    }
                    None => {
                        seen.insert(key, (v, pic.render()));
                    }
                }
            }
        }
    }
    Ok(t.done())
}

/// `models_of(∃X_mu phi)` over `I ∖ {mu}` equals the erasure of `mu` from
/// `models_of(phi)` over `I`.
pub fn check_exists_set(
    phi: &Formula,
    mu: &str,
    attrs: &AttributeSet,
    bounds: Bounds,
    set_cap: usize,
) -> Result<CheckOutcome> {
    let reduced = attrs.without(&[mu])?;
    let quantified = Formula::exists_set(mu, phi.clone());
    let left: BTreeSet<PictureModel> = models_of(&quantified, &reduced, &[], bounds, set_cap)?
        .into_iter()
        .collect();
    let right = models_of(phi, attrs, &[], bounds, set_cap)?
        .iter()
        .map(|p| p.exset(&[mu]))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(compare_sets(
        format!("exists-set {mu} {phi}"),
        &left,
        &right,
    ))
}

/// `models_of(∃x_mu phi)` over `I ∖ {mu}` equals the erasure of `mu` from the
/// models of `phi` in which `mu` marks exactly one position.
pub fn check_position_exists(
    phi: &Formula,
    mu: &str,
    attrs: &AttributeSet,
    bounds: Bounds,
    set_cap: usize,
) -> Result<CheckOutcome> {
    let reduced = attrs.without(&[mu])?;
    let quantified = Formula::exists(mu, phi.clone());
    let left: BTreeSet<PictureModel> = models_of(&quantified, &reduced, &[], bounds, set_cap)?
        .into_iter()
        .collect();
    let right = models_of(phi, attrs, &[mu], bounds, set_cap)?
        .iter()
        .map(|p| p.exset(&[mu]))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(compare_sets(
        format!("exists-position {mu} {phi}"),
        &left,
        &right,
    ))
}

fn compare_sets(
    name: String,
    left: &BTreeSet<PictureModel>,
    right: &BTreeSet<PictureModel>,
) -> CheckOutcome {
    let counterexample = left
        .symmetric_difference(right)
        .next()
        .map(|p| format!("{} (quantified side: {})", p.render(), left.contains(p)));
    CheckOutcome {
        name,
        cases: left.len().max(right.len()),
        counterexample,
    }
}

/// Both forms of the top-row formula for `re` define exactly the pictures
/// whose top row is in `re`.
pub fn check_topreg(
    re: &str,
    attrs: &AttributeSet,
    bounds: Bounds,
    set_cap: usize,
) -> Result<CheckOutcome> {
    let rows = ColumnAlphabet::new(attrs.clone(), 1)?.row_alphabet();
    let d = compile(re, &rows)?.minimal_dfa(1000)?;
    let forms = [
        topreg(&d, attrs, Quantifier::Exists)?,
        topreg(&d, attrs, Quantifier::Forall)?,
    ];
    let mut t = Tally::new(format!("top-row {re}"));
    for pic in pictures(attrs, &[], bounds)? {
        let want = d.accepts(&pic.rows[0]);
        for (k, f) in forms.iter().enumerate() {
            let got = evaluate(f, &pic, set_cap)?;
            t.record(got == want, || {
                format!("{} form {k}: got {got}", pic.render())
            });
        }
    }
    Ok(t.done())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(t: &str) -> Formula {
        Formula::parse(t).unwrap()
    }

    #[test]
    fn interval_on_small_pictures() {
        let attrs = AttributeSet::new(["a"]).unwrap();
        for t in RELATIVIZATION_FORMULAS {
            let out = check_interval(&parse(t), &attrs, Bounds::rect(2, 3), 12).unwrap();
            assert!(out.passed(), "{out:?}");
            assert!(out.cases > 0);
        }
    }

    #[test]
    fn set_quantifier_erases_an_attribute() {
        let attrs = AttributeSet::new(["mu", "a"]).unwrap();
        for t in SET_FORMULAS {
            let out = check_exists_set(&parse(t), "mu", &attrs, Bounds::cells(4), 12).unwrap();
            assert!(out.passed(), "{out:?}");
        }
    }

    #[test]
    fn position_quantifier_erases_a_unique_mark() {
        let attrs = AttributeSet::new(["mu", "a"]).unwrap();
        for t in POSITION_FORMULAS {
            let out = check_position_exists(&parse(t), "mu", &attrs, Bounds::cells(4), 12).unwrap();
            assert!(out.passed(), "{out:?}");
        }
    }

    #[test]
    fn position_quantifier_is_not_set_quantifier() {
        // "mu is empty" holds for some set but never for a single position
        let attrs = AttributeSet::new(["mu", "a"]).unwrap();
        let phi = parse("(forall y (not (in mu y)))");
        assert!(check_exists_set(&phi, "mu", &attrs, Bounds::cells(2), 12)
            .unwrap()
            .passed());
        let reduced = attrs.without(&["mu"]).unwrap();
        let sets = models_of(
            &Formula::exists_set("mu", phi.clone()),
            &reduced,
            &[],
            Bounds::cells(2),
            12,
        )
        .unwrap();
        assert_eq!(sets.len(), 2 + 4 + 4);
        let none = models_of(&phi, &attrs, &["mu"], Bounds::cells(2), 12).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn order_and_top_row() {
        assert!(check_order(Bounds::rect(2, 3), 12).unwrap().passed());
        let attrs = AttributeSet::new(["a"]).unwrap();
        for re in TOP_ROW_EXPRESSIONS {
            assert!(check_topreg(re, &attrs, Bounds::rect(2, 2), 12)
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn differing_model_sets_are_reported() {
        let attrs = AttributeSet::new(["mu", "a"]).unwrap();
        let some: BTreeSet<_> =
            models_of(&parse("(in a mu)"), &attrs, &["mu"], Bounds::cells(1), 12)
                .unwrap()
                .into_iter()
                .collect();
        let out = compare_sets("x".into(), &some, &BTreeSet::new());
        assert!(!out.passed());
    }
}
