//! Regular expressions over indexed alphabets.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! union  := concat (('|' | '∪') concat)*
//! concat := repeat*
//! repeat := atom ('*' | '+' | '?' | '^*' | '^+')*
//! atom   := '(' union ')' | 'ε' | '∅' | '.' | letter
//!         | '[' '^'? letter+ ']' | '{' letter (',' letter)* '}'
//! letter := single character label | '<' label '>'
//! ```
//!
//! `.` is any letter, `[..]` and `{..}` are letter sets, and `[^..]` is a
//! complemented set. Labels are resolved with [`Alphabet::letter_of`], so
//! decimal indices work for unlabelled alphabets.

use super::alphabet::{Alphabet, Letter, LetterPartition};
use super::nfa::Nfa;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regex {
    Empty,
    Epsilon,
    /// One letter from a non-empty set.
    Class(Vec<Letter>),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

impl Regex {
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex> {
        let mut p = Parser {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            i: 0,
            alphabet,
        };
        let r = p.union()?;
        if p.i < p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(r)
    }

    pub fn nullable(&self) -> bool {
        match self {
            Regex::Empty | Regex::Class(_) => false,
            Regex::Epsilon | Regex::Star(_) => true,
            Regex::Concat(v) => v.iter().all(Regex::nullable),
            Regex::Union(v) => v.iter().any(Regex::nullable),
            Regex::Plus(r) => r.nullable(),
        }
    }

    /// Glushkov automaton: one state per letter position plus an initial
    /// state.
    pub fn to_nfa(&self, alphabet: &Alphabet) -> Result<Nfa> {
        let mut positions: Vec<Vec<Letter>> = Vec::new();
        let mut follow: Vec<Vec<usize>> = Vec::new();
        let info = glushkov(self, alphabet, &mut positions, &mut follow)?;
        let k = alphabet.size();
        // letters are grouped by the set of positions they can occupy
        let mut at: Vec<Vec<u32>> = vec![Vec::new(); k];
        for (i, set) in positions.iter().enumerate() {
            for &a in set {
                at[a as usize].push(i as u32);
            }
        }
        let (parts, keys) = LetterPartition::from_keys(at);
        let classes = keys.len();
        let n = positions.len();
        let mut delta = vec![vec![Vec::new(); classes]; n + 1];
        let targets = |from: &[usize], delta_row: &mut Vec<Vec<u32>>| {
            for (c, key) in keys.iter().enumerate() {
                for &j in from {
                    if key.binary_search(&(j as u32)).is_ok() {
                        delta_row[c].push(j as u32 + 1);
                    }
                }
            }
        };
        targets(&info.first, &mut delta[0]);
        for i in 0..n {
            let mut row = vec![Vec::new(); classes];
            targets(&follow[i], &mut row);
            delta[i + 1] = row;
        }
        let mut finals = vec![false; n + 1];
        finals[0] = info.nullable;
        for &i in &info.last {
            finals[i + 1] = true;
        }
        let mut nfa = Nfa::from_raw(alphabet.clone(), parts, vec![0], finals, delta).trim();
        nfa.compress();
        Ok(nfa)
    }
}

/// Parses and compiles in one step.
pub fn compile(text: &str, alphabet: &Alphabet) -> Result<Nfa> {
    Regex::parse(text, alphabet)?.to_nfa(alphabet)
}

struct Info {
    nullable: bool,
    first: Vec<usize>,
    last: Vec<usize>,
}

fn glushkov(
    r: &Regex,
    alphabet: &Alphabet,
    positions: &mut Vec<Vec<Letter>>,
    follow: &mut Vec<Vec<usize>>,
) -> Result<Info> {
    Ok(match r {
        Regex::Empty => Info {
            nullable: false,
            first: vec![],
            last: vec![],
        },
        Regex::Epsilon => Info {
            nullable: true,
            first: vec![],
            last: vec![],
        },
        Regex::Class(set) => {
            if set.is_empty() {
                return Err(Error::Invalid("empty letter class".into()));
            }
            if let Some(&a) = set.iter().find(|&&a| a as usize >= alphabet.size()) {
                return Err(Error::OutOfRange {
                    what: "letter",
                    value: a as usize,
                    min: 0,
                    max: alphabet.size() - 1,
                });
            }
            positions.push(set.clone());
            follow.push(Vec::new());
            let i = positions.len() - 1;
            Info {
                nullable: false,
                first: vec![i],
                last: vec![i],
            }
        }
        Regex::Union(v) => {
            let mut out = Info {
                nullable: false,
                first: vec![],
                last: vec![],
            };
            for r in v {
                let i = glushkov(r, alphabet, positions, follow)?;
                out.nullable |= i.nullable;
                out.first.extend(i.first);
                out.last.extend(i.last);
            }
            out
        }
        Regex::Concat(v) => {
            let mut out = Info {
                nullable: true,
                first: vec![],
                last: vec![],
            };
            for r in v {
                let i = glushkov(r, alphabet, positions, follow)?;
                for &l in &out.last {
                    follow[l].extend(&i.first);
                }
                if out.nullable {
                    out.first.extend(&i.first);
                }
                if i.nullable {
                    out.last.extend(i.last);
                } else {
                    out.last = i.last;
                }
                out.nullable &= i.nullable;
            }
            out
        }
        Regex::Star(inner) | Regex::Plus(inner) => {
            let i = glushkov(inner, alphabet, positions, follow)?;
            for &l in &i.last {
                follow[l].extend(&i.first);
            }
            Info {
                nullable: i.nullable || matches!(r, Regex::Star(_)),
                ..i
            }
        }
    })
    .map(|mut info| {
        info.first.sort_unstable();
        info.first.dedup();
        info.last.sort_unstable();
        info.last.dedup();
        for f in follow.iter_mut() {
            f.sort_unstable();
            f.dedup();
        }
        info
    })
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or_else(
            || self.chars.last().map_or(0, |&(p, c)| p + c.len_utf8()),
            |&(p, _)| p,
        )
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn union(&mut self) -> Result<Regex> {
        let mut alts = vec![self.concat()?];
        while self.eat('|') || self.eat('∪') {
            alts.push(self.concat()?);
        }
        Ok(if alts.len() == 1 {
            alts.pop().unwrap()
        } else {
            Regex::Union(alts)
        })
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, '|' | '∪' | ')') {
                break;
            }
            items.push(self.repeat()?);
        }
        Ok(match items.len() {
            0 => Regex::Epsilon,
            1 => items.pop().unwrap(),
            _ => Regex::Concat(items),
        })
    }

    fn repeat(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            if self.eat('*') {
                r = Regex::Star(Box::new(r));
            } else if self.eat('+') {
                r = Regex::Plus(Box::new(r));
            } else if self.eat('?') {
                r = Regex::Union(vec![r, Regex::Epsilon]);
            } else if self.peek() == Some('^') {
                self.i += 1;
                if self.eat('*') {
                    r = Regex::Star(Box::new(r));
                } else if self.eat('+') {
                    r = Regex::Plus(Box::new(r));
                } else {
                    return Err(self.error("expected `*` or `+` after `^`"));
                }
            } else {
                return Ok(r);
            }
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            None => Err(self.error("unexpected end of expression")),
            Some('(') => {
                self.i += 1;
                let r = self.union()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(r)
            }
            Some('ε') => {
                self.i += 1;
                Ok(Regex::Epsilon)
            }
            Some('∅') => {
                self.i += 1;
                Ok(Regex::Empty)
            }
            Some('.') => {
                self.i += 1;
                Ok(Regex::Class((0..self.alphabet.size() as Letter).collect()))
            }
            Some('[') => {
                self.i += 1;
                let negate = self.eat('^');
                let mut set = Vec::new();
                while !self.eat(']') {
                    set.push(self.letter()?);
                }
                self.class(set, negate)
            }
            Some('{') => {
                self.i += 1;
                let mut set = vec![self.letter()?];
                while self.eat(',') {
                    set.push(self.letter()?);
                }
                if !self.eat('}') {
                    return Err(self.error("expected `}`"));
                }
                self.class(set, false)
            }
            Some(c) if "*+?^)]},|∪".contains(c) => Err(self.error("unexpected operator")),
            Some(_) => {
                let a = self.letter()?;
                Ok(Regex::Class(vec![a]))
            }
        }
    }

    fn class(&self, mut set: Vec<Letter>, negate: bool) -> Result<Regex> {
        if negate {
            set = (0..self.alphabet.size() as Letter)
                .filter(|a| !set.contains(a))
                .collect();
        }
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            return Ok(Regex::Empty);
        }
        Ok(Regex::Class(set))
    }

    fn letter(&mut self) -> Result<Letter> {
        let start = self.i;
        let label = match self.peek() {
            None => return Err(self.error("expected a letter")),
            Some('<') => {
                self.i += 1;
                let mut l = String::new();
                loop {
                    match self.peek() {
                        Some('>') => {
                            self.i += 1;
                            break;
                        }
                        Some(c) => {
                            l.push(c);
                            self.i += 1;
                        }
                        None => return Err(self.error("unterminated `<`")),
                    }
                }
                l
            }
            Some(c) => {
                self.i += 1;
                c.to_string()
            }
        };
        self.alphabet.letter_of(&label).ok_or_else(|| Error::Parse {
            pos: self.chars[start].0,
            msg: format!("unknown letter `{label}`"),
        })
    }
}
