use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Formula;
use crate::error::{Error, Result};
use crate::picture::AttributeSet;

/// Largest picture over which set quantifiers are enumerated.
pub const DEFAULT_SET_CAP: usize = 12;

/// A picture over `2^I`: row letters are attribute bitmasks, attribute `i`
/// is bit `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PictureModel {
    pub attrs: AttributeSet,
    pub rows: Vec<Vec<u32>>,
}

impl PictureModel {
    pub fn new(attrs: AttributeSet, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || n == 0 {
            return Err(Error::Invalid("pictures are non-empty".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("rows of different lengths".into()));
        }
        let limit = 1u32 << attrs.len();
        if rows.iter().flatten().any(|&a| a >= limit) {
            return Err(Error::Invalid(
                "letter outside the attribute alphabet".into(),
            ));
        }
        Ok(PictureModel { attrs, rows })
    }

    /// The all-zero picture of the given size.
    pub fn blank(attrs: AttributeSet, m: usize, n: usize) -> Result<Self> {
        PictureModel::new(attrs, vec![vec![0; n]; m])
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    pub fn cells(&self) -> usize {
        self.height() * self.width()
    }

    /// Letter at 0-based `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.rows[i][j]
    }

    /// Position index of 0-based `(i, j)`.
    pub fn pos(&self, i: usize, j: usize) -> usize {
        i * self.width() + j
    }

    /// Columns `j..=j2` (0-based).
    pub fn columns(&self, j: usize, j2: usize) -> PictureModel {
        PictureModel {
            attrs: self.attrs.clone(),
            rows: self.rows.iter().map(|r| r[j..=j2].to_vec()).collect(),
        }
    }

    /// Positions carrying attribute `name`.
    pub fn marked(&self, name: &str) -> Result<Vec<usize>> {
        let i = self.attrs.index_of(name)?;
        Ok(self
            .rows
            .iter()
            .flatten()
            .enumerate()
            .filter(|(_, &a)| a >> i & 1 == 1)
            .map(|(k, _)| k)
            .collect())
    }

    /// Drops the attributes in `drop` from every letter.
    pub fn exset(&self, drop: &[&str]) -> Result<PictureModel> {
        let target = self.attrs.without(drop)?;
        let pos: Vec<usize> = target
            .names()
            .iter()
            .map(|n| self.attrs.index_of(n))
            .collect::<Result<_>>()?;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&a| {
                        pos.iter()
                            .enumerate()
                            .fold(0, |acc, (k, &i)| acc | (a >> i & 1) << k)
                    })
                    .collect()
            })
            .collect();
        Ok(PictureModel {
            attrs: target,
            rows,
        })
    }

    /// Renders rows as attribute bit strings, e.g. `10 01 / 00 11`.
    pub fn render(&self) -> String {
        let k = self.attrs.len();
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&a| {
                        if k == 0 {
                            "-".to_string()
                        } else {
                            (0..k)
                                .map(|i| if a >> i & 1 == 1 { '1' } else { '0' })
                                .collect()
                        }
                    })
                    .collect::<Vec<String>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" / ")
    }
}

/// Explicit values for variables, overriding the picture's attributes.
/// Positions are 0-based `(row, column)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    pub fo: BTreeMap<String, (usize, usize)>,
    pub sets: BTreeMap<String, Vec<(usize, usize)>>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn with(mut self, x: &str, i: usize, j: usize) -> Self {
        self.fo.insert(x.to_string(), (i, j));
        self
    }
}

struct Env<'a> {
    p: &'a PictureModel,
    fo: Vec<(&'a str, usize)>,
    sets: Vec<(&'a str, u64)>,
    set_cap: usize,
}

impl<'a> Env<'a> {
    fn fo(&self, x: &str) -> Result<usize> {
        if let Some(&(_, v)) = self.fo.iter().rev().find(|(n, _)| *n == x) {
            return Ok(v);
        }
        match self.p.attrs.index_of(x) {
            Ok(_) => {
                let m = self.p.marked(x)?;
                if m.len() == 1 {
                    Ok(m[0])
                } else {
                    Err(Error::Invalid(format!(
                        "attribute `{x}` marks {} positions, not one",
                        m.len()
                    )))
                }
            }
            Err(_) => Err(Error::UnboundVariable(x.to_string())),
        }
    }

    fn set_has(&self, s: &str, pos: usize) -> Result<bool> {
        if let Some(&(_, v)) = self.sets.iter().rev().find(|(n, _)| *n == s) {
            return Ok(v >> pos & 1 == 1);
        }
        let i = self
            .p
            .attrs
            .index_of(s)
            .map_err(|_| Error::UnboundVariable(s.to_string()))?;
        let w = self.p.width();
        Ok(self.p.rows[pos / w][pos % w] >> i & 1 == 1)
    }

    fn eval(&mut self, f: &'a Formula) -> Result<bool> {
        let w = self.p.width();
        let cells = self.p.cells();
        Ok(match f {
            Formula::True => true,
            Formula::False => false,
            Formula::In(s, x) => {
                let p = self.fo(x)?;
                self.set_has(s, p)?
            }
            Formula::S1(x, y) => self.fo(y)? == self.fo(x)? + w,
            Formula::S2(x, y) => {
                let (a, b) = (self.fo(x)?, self.fo(y)?);
                b == a + 1 && b % w != 0
            }
            Formula::Eq(x, y) => self.fo(x)? == self.fo(y)?,
            Formula::Not(a) => !self.eval(a)?,
            Formula::And(v) => {
                for a in v {
                    if !self.eval(a)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(v) => {
                for a in v {
                    if self.eval(a)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Implies(a, b) => !self.eval(a)? || self.eval(b)?,
            Formula::Iff(a, b) => self.eval(a)? == self.eval(b)?,
            Formula::Exists(x, a) | Formula::Forall(x, a) => {
                let want = matches!(f, Formula::Exists(..));
                for pos in 0..cells {
                    self.fo.push((x, pos));
                    let r = self.eval(a);
                    self.fo.pop();
                    if r? == want {
                        return Ok(want);
                    }
                }
                !want
            }
            Formula::ExistsSet(s, a) | Formula::ForallSet(s, a) => {
                if cells > self.set_cap {
                    return Err(Error::cap(
                        "cells under a set quantifier",
                        cells,
                        self.set_cap,
                    ));
                }
                let want = matches!(f, Formula::ExistsSet(..));
                for mask in 0..1u64 << cells {
                    self.sets.push((s, mask));
                    let r = self.eval(a);
                    self.sets.pop();
                    if r? == want {
                        return Ok(want);
                    }
                }
                !want
            }
        })
    }
}

/// `p ⊨ φ`, with free variables read from the picture.
pub fn evaluate(f: &Formula, p: &PictureModel, set_cap: usize) -> Result<bool> {
    evaluate_with(f, p, &Assignment::new(), set_cap)
}

/// `p, [a/x]... ⊨ φ`.
pub fn evaluate_with(
    f: &Formula,
    p: &PictureModel,
    a: &Assignment,
    set_cap: usize,
) -> Result<bool> {
    if p.cells() > 64 {
        return Err(Error::cap("picture cells", p.cells(), 64));
    }
    let set_cap = set_cap.min(63);
    let (m, n) = (p.height(), p.width());
    let mut env = Env {
        p,
        fo: Vec::new(),
        sets: Vec::new(),
        set_cap,
    };
    for (x, &(i, j)) in &a.fo {
        if i >= m || j >= n {
            return Err(Error::OutOfRange {
                what: "position",
                value: i.max(j),
                min: 0,
                max: m.max(n) - 1,
            });
        }
        env.fo.push((x.as_str(), p.pos(i, j)));
    }
    for (s, cells) in &a.sets {
        let mut mask = 0u64;
        for &(i, j) in cells {
            if i >= m || j >= n {
                return Err(Error::Invalid(format!("set `{s}` leaves the picture")));
            }
            mask |= 1 << p.pos(i, j);
        }
        env.sets.push((s.as_str(), mask));
    }
    env.eval(f)
}

/// Size limits for picture enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_rows: usize,
    pub max_cols: usize,
    pub max_cells: usize,
}

impl Bounds {
    /// All pictures with at most `cells` cells.
    pub fn cells(cells: usize) -> Self {
        Bounds {
            max_rows: cells,
            max_cols: cells,
            max_cells: cells,
        }
    }

    /// All pictures of at most `m` rows and `n` columns.
    pub fn rect(m: usize, n: usize) -> Self {
        Bounds {
            max_rows: m,
            max_cols: n,
            max_cells: m * n,
        }
    }

    /// Sizes `(m, n)` in increasing order of height, then width.
    pub fn sizes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for m in 1..=self.max_rows {
            for n in 1..=self.max_cols {
                if m * n <= self.max_cells {
                    out.push((m, n));
                }
            }
        }
        out
    }
}

/// Every picture over `2^I` within `bounds` in which each attribute of `k`
/// marks exactly one position, in canonical order: by size, then by letters
/// in row-major order.
pub fn pictures(attrs: &AttributeSet, k: &[&str], bounds: Bounds) -> Result<Vec<PictureModel>> {
    let kidx: Vec<usize> = k.iter().map(|n| attrs.index_of(n)).collect::<Result<_>>()?;
    let letters = 1u64 << attrs.len();
    let mut out = Vec::new();
    for (m, n) in bounds.sizes() {
        let cells = m * n;
        let total = letters
            .checked_pow(cells as u32)
            .filter(|&t| t <= 1 << 24)
            .ok_or_else(|| Error::cap("pictures of one size", u128::MAX, 1usize << 24))?;
        for code in 0..total {
            let mut c = code;
            let mut flat = vec![0u32; cells];
            for slot in flat.iter_mut().rev() {
                *slot = (c % letters) as u32;
                c /= letters;
            }
            if kidx
                .iter()
                .any(|&i| flat.iter().filter(|&&a| a >> i & 1 == 1).count() != 1)
            {
                continue;
            }
            out.push(PictureModel {
                attrs: attrs.clone(),
                rows: flat.chunks(n).map(<[u32]>::to_vec).collect(),
            });
        }
    }
    Ok(out)
}

/// `Mod_{I,K}(φ)` restricted to `bounds`.
pub fn models_of(
    f: &Formula,
    attrs: &AttributeSet,
    k: &[&str],
    bounds: Bounds,
    set_cap: usize,
) -> Result<Vec<PictureModel>> {
    for x in f.free_fo() {
        if !k.contains(&x.as_str()) {
            return Err(Error::UnboundVariable(x));
        }
    }
    for s in f.free_sets() {
        attrs
            .index_of(&s)
            .map_err(|_| Error::UnboundVariable(s.clone()))?;
    }
    let mut out = Vec::new();
    for p in pictures(attrs, k, bounds)? {
        if evaluate(f, &p, set_cap)? {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mso::{form_left, form_right, form_top, leq_pi};

    fn none() -> AttributeSet {
        AttributeSet::empty()
    }

    #[test]
    fn top_row_predicate() {
        let p = PictureModel::blank(none(), 2, 3).unwrap();
        let top = form_top("x");
        for j in 0..3 {
            assert!(evaluate_with(&top, &p, &Assignment::new().with("x", 0, j), 12).unwrap());
            assert!(!evaluate_with(&top, &p, &Assignment::new().with("x", 1, j), 12).unwrap());
        }
    }

    #[test]
    fn horizontal_order_on_a_row() {
        let p = PictureModel::blank(none(), 1, 3).unwrap();
        let leq = leq_pi("x", "x'");
        let a = Assignment::new().with("x", 0, 0).with("x'", 0, 2);
        assert!(evaluate_with(&leq, &p, &a, 12).unwrap());
        let b = Assignment::new().with("x", 0, 2).with("x'", 0, 0);
        assert!(!evaluate_with(&leq, &p, &b, 12).unwrap());
    }

    #[test]
    fn successor_does_not_wrap() {
        let p = PictureModel::blank(none(), 2, 2).unwrap();
        let a = Assignment::new().with("x", 0, 1).with("y", 1, 0);
        assert!(!evaluate_with(&Formula::s2("x", "y"), &p, &a, 12).unwrap());
        let b = Assignment::new().with("x", 0, 1).with("y", 1, 1);
        assert!(evaluate_with(&Formula::s1("x", "y"), &p, &b, 12).unwrap());
    }

    #[test]
    fn single_cell_is_left_and_right() {
        let p = PictureModel::blank(none(), 1, 1).unwrap();
        let f = Formula::and([form_left("x"), form_right("x")]);
        assert!(evaluate_with(&f, &p, &Assignment::new().with("x", 0, 0), 12).unwrap());
        let row = PictureModel::blank(none(), 1, 4).unwrap();
        assert!(evaluate_with(
            &form_right("x"),
            &row,
            &Assignment::new().with("x", 0, 3),
            12
        )
        .unwrap());
    }

    #[test]
    fn set_tautology_and_cap() {
        let taut = Formula::exists_set("X", Formula::True);
        let p = PictureModel::blank(none(), 2, 2).unwrap();
        assert!(evaluate(&taut, &p, 12).unwrap());
        let big = PictureModel::blank(none(), 4, 4).unwrap();
        assert!(evaluate(&taut, &big, 12).unwrap_err().is_cap());
        assert!(matches!(
            evaluate(&Formula::s1("x", "y"), &p, 12).unwrap_err(),
            Error::UnboundVariable(_)
        ));
    }

    #[test]
    fn models_of_small_cases() {
        let attrs = none();
        assert!(
            models_of(&Formula::False, &attrs, &[], Bounds::cells(4), 12)
                .unwrap()
                .is_empty()
        );
        assert_eq!(
            models_of(&Formula::True, &attrs, &[], Bounds::rect(1, 2), 12)
                .unwrap()
                .len(),
            2
        );
        // free position variable read from its unique mark
        let a = AttributeSet::new(["x"]).unwrap();
        let tops = models_of(&form_top("x"), &a, &["x"], Bounds::rect(2, 2), 12).unwrap();
        // sizes 1x1, 1x2, 2x1, 2x2 with the mark in the top row
        assert_eq!(tops.len(), 1 + 2 + 1 + 2);
    }

    #[test]
    fn unused_attribute_doubles_letters() {
        let a = AttributeSet::new(["a"]).unwrap();
        let ab = AttributeSet::new(["a", "b"]).unwrap();
        let f = Formula::parse("(exists y (and (top y) (in a y)))").unwrap();
        let small = models_of(&f, &a, &[], Bounds::cells(4), 12).unwrap();
        let big = models_of(&f, &ab, &[], Bounds::cells(4), 12).unwrap();
        let want: usize = small.iter().map(|p| 1 << p.cells()).sum();
        assert_eq!(big.len(), want);
        for p in &big {
            assert!(small.contains(&p.exset(&["b"]).unwrap()));
        }
    }
}
