//! Regular expressions in the notation `0` (empty set), `1` (empty word),
//! `+` (union), juxtaposition (concatenation), `*` (star) and `^k` (power).

use std::fmt;

use super::Alphabet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Symbol(char),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
    Power(Box<Regex>, u32),
}

impl Regex {
    pub fn symbol(c: char) -> Regex {
        Regex::Symbol(c)
    }

    /// Union, simplified: `0` is dropped and `r + r` collapses.
    pub fn union(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, r) | (r, Regex::Empty) => r,
            (a, b) if a == b => a,
            (a, b) => Regex::Union(Box::new(a), Box::new(b)),
        }
    }

    /// Concatenation, simplified: `1` is dropped and `0` absorbs.
    pub fn concat(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
            (Regex::Epsilon, r) | (r, Regex::Epsilon) => r,
            (a, b) => Regex::Concat(Box::new(a), Box::new(b)),
        }
    }

    pub fn star(a: Regex) -> Regex {
        match a {
            Regex::Empty | Regex::Epsilon => Regex::Epsilon,
            s @ Regex::Star(_) => s,
            r => Regex::Star(Box::new(r)),
        }
    }

    pub fn power(a: Regex, k: u32) -> Regex {
        match (a, k) {
            (_, 0) => Regex::Epsilon,
            (r, 1) => r,
            (Regex::Epsilon, _) => Regex::Epsilon,
            (Regex::Empty, _) => Regex::Empty,
            (r, k) => Regex::Power(Box::new(r), k),
        }
    }

    pub fn union_all<I: IntoIterator<Item = Regex>>(items: I) -> Regex {
        items.into_iter().fold(Regex::Empty, Regex::union)
    }

    pub fn concat_all<I: IntoIterator<Item = Regex>>(items: I) -> Regex {
        items.into_iter().fold(Regex::Epsilon, Regex::concat)
    }

    /// Distinct symbols in order of first occurrence.
    pub fn symbols(&self) -> Vec<char> {
        fn walk(r: &Regex, out: &mut Vec<char>) {
            match r {
                Regex::Empty | Regex::Epsilon => {}
                Regex::Symbol(c) => {
                    if !out.contains(c) {
                        out.push(*c)
                    }
                }
                Regex::Union(a, b) | Regex::Concat(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Regex::Star(a) | Regex::Power(a, _) => walk(a, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Number of symbol occurrences once powers are expanded.
    pub fn expanded_width(&self) -> u64 {
        match self {
            Regex::Empty | Regex::Epsilon => 0,
            Regex::Symbol(_) => 1,
            Regex::Union(a, b) | Regex::Concat(a, b) => {
                a.expanded_width().saturating_add(b.expanded_width())
            }
            Regex::Star(a) => a.expanded_width(),
            Regex::Power(a, k) => a.expanded_width().saturating_mul(*k as u64),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            Regex::Star(_) | Regex::Power(..) => 2,
            _ => 3,
        }
    }

    fn render(&self, min_prec: u8, out: &mut String) {
        let paren = self.precedence() < min_prec;
        if paren {
            out.push('(');
        }
        match self {
            Regex::Empty => out.push('0'),
            Regex::Epsilon => out.push('1'),
            Regex::Symbol(c) => out.push(*c),
            Regex::Union(a, b) => {
                a.render(0, out);
                out.push_str(" + ");
                b.render(0, out);
            }
            Regex::Concat(a, b) => {
                a.render(1, out);
                let mut right = String::new();
                b.render(1, &mut right);
                if out.ends_with(|c: char| c.is_ascii_digit())
                    || right.starts_with(|c: char| c.is_ascii_digit())
                {
                    out.push(' ');
                }
                out.push_str(&right);
            }
            Regex::Star(a) => {
                a.render(3, out);
                out.push('*');
            }
            Regex::Power(a, k) => {
                a.render(3, out);
                out.push('^');
                out.push_str(&k.to_string());
            }
        }
        if paren {
            out.push(')');
        }
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(0, &mut s);
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Char(char),
    Pow(u32),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

/// Parses `text` into a [`Regex`] whose symbols all belong to `alphabet`.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '^' {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            let digits_from = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if digits_from == i {
                return Err(Error::Syntax {
                    pos: i,
                    msg: "expected an exponent after '^'".into(),
                });
            }
            let digits: String = chars[digits_from..i].iter().collect();
            let k = digits.parse::<u32>().map_err(|_| Error::Syntax {
                pos: digits_from,
                msg: "exponent too large".into(),
            })?;
            toks.push((start, Tok::Pow(k)));
            continue;
        }
        toks.push((i, Tok::Char(c)));
        i += 1;
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: chars.len(),
        alphabet,
    };
    let r = p.expr()?;
    if let Some(&(pos, tok)) = p.toks.get(p.at) {
        let msg = match tok {
            Tok::Char(')') => "unbalanced ')'".to_string(),
            Tok::Char(c) => format!("unexpected '{c}'"),
            Tok::Pow(_) => "unexpected '^'".to_string(),
        };
        return Err(Error::Syntax { pos, msg });
    }
    Ok(r)
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.at).map(|t| t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(Tok::Char(c)) => !matches!(c, '+' | '*' | ')'),
            _ => false,
        }
    }

    fn expr(&mut self) -> Result<Regex> {
        let mut r = self.term()?;
        while self.peek() == Some(Tok::Char('+')) {
            self.at += 1;
            let rhs = self.term()?;
            r = Regex::Union(Box::new(r), Box::new(rhs));
        }
        Ok(r)
    }

    fn term(&mut self) -> Result<Regex> {
        if !self.starts_atom() {
            return Err(Error::Syntax {
                pos: self.pos(),
                msg: match self.peek() {
                    None => "unexpected end of input".into(),
                    Some(Tok::Char(c)) => format!("expected an expression, found '{c}'"),
                    Some(Tok::Pow(_)) => "expected an expression, found '^'".into(),
                },
            });
        }
        let mut r = self.factor()?;
        while self.starts_atom() {
            let rhs = self.factor()?;
            r = Regex::Concat(Box::new(r), Box::new(rhs));
        }
        Ok(r)
    }

    fn factor(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Char('*')) => {
                    self.at += 1;
                    r = Regex::Star(Box::new(r));
                }
                Some(Tok::Pow(k)) => {
                    self.at += 1;
                    r = Regex::Power(Box::new(r), k);
                }
                _ => return Ok(r),
            }
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let pos = self.pos();
        let Some(Tok::Char(c)) = self.peek() else {
            return Err(Error::Syntax {
                pos,
                msg: "expected an expression".into(),
            });
        };
        self.at += 1;
        match c {
            '0' => Ok(Regex::Empty),
            '1' => Ok(Regex::Epsilon),
            '(' => {
                let r = self.expr()?;
                if self.peek() != Some(Tok::Char(')')) {
                    return Err(Error::Syntax {
                        pos: self.pos(),
                        msg: "expected ')'".into(),
                    });
                }
                self.at += 1;
                Ok(r)
            }
            c if c.is_ascii_digit() => Err(Error::Syntax {
                pos,
                msg: format!("unexpected digit '{c}'"),
            }),
            c if self.alphabet.contains(c) => Ok(Regex::Symbol(c)),
            c => Err(Error::UnknownSymbol { symbol: c, pos }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Alphabet {
        Alphabet::parse("a").unwrap()
    }

    fn sym(c: char) -> Box<Regex> {
        Box::new(Regex::Symbol(c))
    }

    #[test]
    fn parses_tail_example() {
        let r = parse_regex("a + a^6 a*", &a()).unwrap();
        let expected = Regex::Union(
            sym('a'),
            Box::new(Regex::Concat(
                Box::new(Regex::Power(sym('a'), 6)),
                Box::new(Regex::Star(sym('a'))),
            )),
        );
        assert_eq!(r, expected);
    }

    #[test]
    fn parses_epsilon_and_empty() {
        assert_eq!(parse_regex("1", &a()).unwrap(), Regex::Epsilon);
        assert_eq!(parse_regex(" 0 ", &a()).unwrap(), Regex::Empty);
    }

    #[test]
    fn parses_nested_cycle_example() {
        let r = parse_regex("a + (a^3 + a^4)(a^7)*", &a()).unwrap();
        let inner = Regex::Union(
            Box::new(Regex::Power(sym('a'), 3)),
            Box::new(Regex::Power(sym('a'), 4)),
        );
        let expected = Regex::Union(
            sym('a'),
            Box::new(Regex::Concat(
                Box::new(inner),
                Box::new(Regex::Star(Box::new(Regex::Power(sym('a'), 7)))),
            )),
        );
        assert_eq!(r, expected);
    }

    #[test]
    fn errors_carry_positions() {
        let ab = Alphabet::parse("ab").unwrap();
        assert_eq!(
            parse_regex("a + c", &ab),
            Err(Error::UnknownSymbol { symbol: 'c', pos: 4 })
        );
        assert!(matches!(parse_regex("(a", &ab), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_regex("a)", &ab), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_regex("a^", &ab), Err(Error::Syntax { .. })));
        assert!(matches!(parse_regex("", &ab), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_regex("a + + b", &ab), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_regex("a2", &ab), Err(Error::Syntax { pos: 1, .. })));
    }

    #[test]
    fn display_round_trips() {
        let ab = Alphabet::parse("ab").unwrap();
        for text in [
            "a + a^6 a*",
            "(1 + a)(a^7)*",
            "(ab)* + b^2",
            "((a + b)^2)*",
            "a(a + b)*b",
            "0",
            "1",
        ] {
            let r = parse_regex(text, &ab).unwrap();
            assert_eq!(r.to_string(), text);
            assert_eq!(parse_regex(&r.to_string(), &ab).unwrap(), r);
        }
    }

    #[test]
    fn smart_constructors_simplify() {
        let a = Regex::symbol('a');
        assert_eq!(Regex::union(Regex::Empty, a.clone()), a);
        assert_eq!(Regex::concat(Regex::Epsilon, a.clone()), a);
        assert_eq!(Regex::concat(a.clone(), Regex::Empty), Regex::Empty);
        assert_eq!(Regex::star(Regex::star(a.clone())), Regex::star(a.clone()));
        assert_eq!(Regex::power(a.clone(), 0), Regex::Epsilon);
        assert_eq!(Regex::power(a.clone(), 1), a);
    }
}
