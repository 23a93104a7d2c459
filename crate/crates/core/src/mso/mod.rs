//! Monadic second-order formulas over pictures, evaluated by brute force.
//!
//! Text syntax (prefix s-expressions):
//!
//! ```text
//! φ ::= true | false
//!     | (in X x) | (s1 x y) | (s2 x y) | (= x y)
//!     | (not φ) | (and φ ...) | (or φ ...) | (-> φ ψ) | (<-> φ ψ)
//!     | (exists x ... φ) | (forall x ... φ)
//!     | (exists-set X ... φ) | (forall-set X ... φ)
//!     | (top x) | (left x) | (right x) | (leq x y)
//! ```
//!
//! `s1 x y` says `y` is directly below `x`, `s2 x y` that `y` is directly
//! right of `x`. `leq` is the set-quantified horizontal order. Free set
//! variables are read from the picture's attributes; a free first-order
//! variable `x` is the unique position marked with attribute `x`.

mod builtins;
mod checks;
mod eval;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub use builtins::{
    builtin, closed_right, form_left, form_right, form_top, leq_pi, leq_sigma, letter,
    relativize_fo, state, topreg, Quantifier, BUILTINS,
};
pub use checks::{
    check_exists_set, check_interval, check_order, check_position_exists, check_relativization,
    check_topreg, CheckOutcome, POSITION_FORMULAS, RELATIVIZATION_FORMULAS, SET_FORMULAS,
    TOP_ROW_EXPRESSIONS,
};
pub use eval::{
    evaluate, evaluate_with, models_of, pictures, Assignment, Bounds, PictureModel, DEFAULT_SET_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    /// `X(x)`: set variable, position variable.
    In(String, String),
    /// `y` is the vertical successor of `x`.
    S1(String, String),
    /// `y` is the horizontal successor of `x`.
    S2(String, String),
    Eq(String, String),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    ExistsSet(String, Box<Formula>),
    ForallSet(String, Box<Formula>),
}

impl Formula {
    pub fn in_set(set: &str, x: &str) -> Self {
        Formula::In(set.into(), x.into())
    }

    pub fn s1(x: &str, y: &str) -> Self {
        Formula::S1(x.into(), y.into())
    }

    pub fn s2(x: &str, y: &str) -> Self {
        Formula::S2(x.into(), y.into())
    }

    pub fn eq(x: &str, y: &str) -> Self {
        Formula::Eq(x.into(), y.into())
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(parts: impl IntoIterator<Item = Formula>) -> Self {
        Formula::And(parts.into_iter().collect())
    }

    pub fn or(parts: impl IntoIterator<Item = Formula>) -> Self {
        Formula::Or(parts.into_iter().collect())
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(x: &str, f: Formula) -> Self {
        Formula::Exists(x.into(), Box::new(f))
    }

    pub fn forall(x: &str, f: Formula) -> Self {
        Formula::Forall(x.into(), Box::new(f))
    }

    pub fn exists_set(x: &str, f: Formula) -> Self {
        Formula::ExistsSet(x.into(), Box::new(f))
    }

    pub fn forall_set(x: &str, f: Formula) -> Self {
        Formula::ForallSet(x.into(), Box::new(f))
    }

    pub fn parse(text: &str) -> Result<Formula> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let f = p.formula()?;
        if p.pos < p.tokens.len() {
            return Err(p.error("trailing input"));
        }
        Ok(f)
    }

    /// Free position variables.
    pub fn free_fo(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(
            &mut Vec::new(),
            &mut Vec::new(),
            &mut out,
            &mut BTreeSet::new(),
        );
        out
    }

    /// Free set variables.
    pub fn free_sets(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(
            &mut Vec::new(),
            &mut Vec::new(),
            &mut BTreeSet::new(),
            &mut out,
        );
        out
    }

    fn collect_free(
        &self,
        fo: &mut Vec<String>,
        sets: &mut Vec<String>,
        free_fo: &mut BTreeSet<String>,
        free_sets: &mut BTreeSet<String>,
    ) {
        let mut var = |v: &String, fo: &Vec<String>| {
            if !fo.contains(v) {
                free_fo.insert(v.clone());
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::In(s, x) => {
                if !sets.contains(s) {
                    free_sets.insert(s.clone());
                }
                var(x, fo);
            }
            Formula::S1(x, y) | Formula::S2(x, y) | Formula::Eq(x, y) => {
                var(x, fo);
                var(y, fo);
            }
            Formula::Not(f) => f.collect_free(fo, sets, free_fo, free_sets),
            Formula::And(v) | Formula::Or(v) => {
                for f in v {
                    f.collect_free(fo, sets, free_fo, free_sets);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(fo, sets, free_fo, free_sets);
                b.collect_free(fo, sets, free_fo, free_sets);
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                fo.push(x.clone());
                f.collect_free(fo, sets, free_fo, free_sets);
                fo.pop();
            }
            Formula::ExistsSet(x, f) | Formula::ForallSet(x, f) => {
                sets.push(x.clone());
                f.collect_free(fo, sets, free_fo, free_sets);
                sets.pop();
            }
        }
    }

    /// All position variable names, free or bound.
    pub fn fo_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::In(_, x) => {
                out.insert(x.clone());
            }
            Formula::S1(x, y) | Formula::S2(x, y) | Formula::Eq(x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            Formula::Exists(x, _) | Formula::Forall(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    /// All set variable names, free or bound.
    pub fn set_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::In(s, _) | Formula::ExistsSet(s, _) | Formula::ForallSet(s, _) => {
                out.insert(s.clone());
            }
            _ => {}
        });
        out
    }

    fn visit(&self, g: &mut impl FnMut(&Formula)) {
        g(self);
        match self {
            Formula::Not(f)
            | Formula::Exists(_, f)
            | Formula::Forall(_, f)
            | Formula::ExistsSet(_, f)
            | Formula::ForallSet(_, f) => f.visit(g),
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|f| f.visit(g)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit(g);
                b.visit(g);
            }
            _ => {}
        }
    }

    /// No set quantifiers.
    pub fn is_first_order(&self) -> bool {
        let mut fo = true;
        self.visit(&mut |f| {
            if matches!(f, Formula::ExistsSet(..) | Formula::ForallSet(..)) {
                fo = false;
            }
        });
        fo
    }

    pub fn has_set_quantifier(&self) -> bool {
        !self.is_first_order()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::In(s, x) => write!(f, "(in {s} {x})"),
            Formula::S1(x, y) => write!(f, "(s1 {x} {y})"),
            Formula::S2(x, y) => write!(f, "(s2 {x} {y})"),
            Formula::Eq(x, y) => write!(f, "(= {x} {y})"),
            Formula::Not(a) => write!(f, "(not {a})"),
            Formula::And(v) | Formula::Or(v) => {
                let op = if matches!(self, Formula::And(_)) {
                    "and"
                } else {
                    "or"
                };
                write!(f, "({op}")?;
                for a in v {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Formula::Implies(a, b) => write!(f, "(-> {a} {b})"),
            Formula::Iff(a, b) => write!(f, "(<-> {a} {b})"),
            Formula::Exists(x, a) => write!(f, "(exists {x} {a})"),
            Formula::Forall(x, a) => write!(f, "(forall {x} {a})"),
            Formula::ExistsSet(x, a) => write!(f, "(exists-set {x} {a})"),
            Formula::ForallSet(x, a) => write!(f, "(forall-set {x} {a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Word(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            '(' => {
                out.push((i, Token::Open));
                chars.next();
            }
            ')' => {
                out.push((i, Token::Close));
                chars.next();
            }
            ';' => {
                // comment to end of line
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if is_word_char(c) => {
                let mut w = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_word_char(c) {
                        break;
                    }
                    w.push(c);
                    chars.next();
                }
                out.push((i, Token::Word(w)));
            }
            other => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '-' | '>' | '<' | '=' | '.')
}

fn is_identifier(w: &str) -> bool {
    let mut cs = w.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && w.chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '.'))
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        let pos = self.tokens.get(self.pos).map(|t| t.0).unwrap_or(usize::MAX);
        Error::Parse {
            pos,
            msg: msg.to_string(),
        }
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn ident(&mut self) -> Result<String> {
        match self.next() {
            Some(Token::Word(w)) if is_identifier(&w) && !is_keyword(&w) => Ok(w),
            _ => {
                self.pos -= 1;
                Err(self.error("expected a variable name"))
            }
        }
    }

    fn close(&mut self) -> Result<()> {
        match self.next() {
            Some(Token::Close) => Ok(()),
            _ => {
                self.pos -= 1;
                Err(self.error("expected `)`"))
            }
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.next() {
            Some(Token::Word(w)) if w == "true" => Ok(Formula::True),
            Some(Token::Word(w)) if w == "false" => Ok(Formula::False),
            Some(Token::Open) => {
                let head = match self.next() {
                    Some(Token::Word(w)) => w,
                    _ => {
                        self.pos -= 1;
                        return Err(self.error("expected an operator"));
                    }
                };
                let f = self.compound(&head)?;
                self.close()?;
                Ok(f)
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected a formula"))
            }
        }
    }

    fn compound(&mut self, head: &str) -> Result<Formula> {
        Ok(match head {
            "in" => {
                let s = self.ident()?;
                Formula::In(s, self.ident()?)
            }
            "s1" | "s2" | "=" | "leq" => {
                let x = self.ident()?;
                let y = self.ident()?;
                match head {
                    "s1" => Formula::S1(x, y),
                    "s2" => Formula::S2(x, y),
                    "=" => Formula::Eq(x, y),
                    _ => leq_pi(&x, &y),
                }
            }
            "top" => form_top(&self.ident()?),
            "left" => form_left(&self.ident()?),
            "right" => form_right(&self.ident()?),
            "not" => Formula::not(self.formula()?),
            "and" | "or" => {
                let mut v = Vec::new();
                while !matches!(self.tokens.get(self.pos), Some((_, Token::Close)) | None) {
                    v.push(self.formula()?);
                }
                if head == "and" {
                    Formula::And(v)
                } else {
                    Formula::Or(v)
                }
            }
            "->" | "<->" => {
                let a = self.formula()?;
                let b = self.formula()?;
                if head == "->" {
                    Formula::implies(a, b)
                } else {
                    Formula::iff(a, b)
                }
            }
            "exists" | "forall" | "exists-set" | "forall-set" => {
                let mut vars = vec![self.ident()?];
                while let Some((_, Token::Word(w))) = self.tokens.get(self.pos) {
                    if !is_identifier(w) || is_keyword(w) {
                        break;
                    }
                    vars.push(self.ident()?);
                }
                let mut body = self.formula()?;
                for v in vars.iter().rev() {
                    body = match head {
                        "exists" => Formula::exists(v, body),
                        "forall" => Formula::forall(v, body),
                        "exists-set" => Formula::exists_set(v, body),
                        _ => Formula::forall_set(v, body),
                    };
                }
                body
            }
            other => {
                self.pos -= 1;
                return Err(self.error(&format!("unknown operator `{other}`")));
            }
        })
    }
}

fn is_keyword(w: &str) -> bool {
    matches!(w, "true" | "false")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_roundtrip() {
        let text = "(forall x1 x2 (-> (and (s2 x1 x2) (in cld x1)) (in cld x2)))";
        let f = Formula::parse(text).unwrap();
        assert_eq!(
            f.to_string(),
            text.replace("forall x1 x2", "forall x1 (forall x2")
                .replace(")))", "))))")
        );
        assert_eq!(Formula::parse(&f.to_string()).unwrap(), f);
        assert_eq!(f.free_sets(), BTreeSet::from(["cld".to_string()]));
        assert!(f.free_fo().is_empty());
        assert!(f.is_first_order());
    }

    #[test]
    fn free_variables_respect_binders() {
        let f =
            Formula::parse("(and (in a x) (exists x (s1 x y)) (exists-set a (in a z)))").unwrap();
        assert_eq!(
            f.free_fo(),
            BTreeSet::from(["x".into(), "y".into(), "z".into()])
        );
        assert_eq!(f.free_sets(), BTreeSet::from(["a".into()]));
        assert!(!f.is_first_order());
    }

    #[test]
    fn sugar_expands() {
        let f = Formula::parse("(top x)").unwrap();
        assert_eq!(f, form_top("x"));
        assert!(Formula::parse("(leq x x')").unwrap().has_set_quantifier());
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "(in a)",
            "(and true",
            "(foo x)",
            "x",
            "(exists true)",
            "true true",
            "(s1 x #)",
        ] {
            let e = Formula::parse(bad).unwrap_err();
            assert!(matches!(e, Error::Parse { .. }), "{bad}: {e}");
        }
        // comments are skipped
        assert_eq!(Formula::parse("; note\n true").unwrap(), Formula::True);
    }
}
