use std::fmt;

use crate::error::{Error, Result};

/// Exponent of a factor: a positive integer or `ω+k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(u32),
    OmegaPlus(u32),
}

impl Exponent {
    pub const OMEGA: Exponent = Exponent::OmegaPlus(0);
}

/// A product of powers of variables; the empty product is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OmegaTerm {
    pub factors: Vec<(char, Exponent)>,
}

impl OmegaTerm {
    pub fn one() -> Self {
        OmegaTerm::default()
    }

    pub fn var(x: char) -> Self {
        OmegaTerm {
            factors: vec![(x, Exponent::Finite(1))],
        }
    }

    /// `x^k`, with `x^0 = 1`.
    pub fn power(x: char, k: u32) -> Self {
        if k == 0 {
            OmegaTerm::one()
        } else {
            OmegaTerm {
                factors: vec![(x, Exponent::Finite(k))],
            }
        }
    }

    pub fn omega_plus(x: char, k: u32) -> Self {
        OmegaTerm {
            factors: vec![(x, Exponent::OmegaPlus(k))],
        }
    }

    pub fn times(mut self, other: OmegaTerm) -> Self {
        self.factors.extend(other.factors);
        self
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Leq,
    Eq,
}

/// `lhs <= rhs`, or `lhs = rhs` meaning both directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub lhs: OmegaTerm,
    pub relation: Relation,
    pub rhs: OmegaTerm,
}

impl Inequality {
    pub fn leq(lhs: OmegaTerm, rhs: OmegaTerm) -> Self {
        Inequality {
            lhs,
            relation: Relation::Leq,
            rhs,
        }
    }

    pub fn eq(lhs: OmegaTerm, rhs: OmegaTerm) -> Self {
        Inequality {
            lhs,
            relation: Relation::Eq,
            rhs,
        }
    }

    /// Distinct variables in order of first occurrence.
    pub fn variables(&self) -> Vec<char> {
        let mut vars = Vec::new();
        for &(x, _) in self.lhs.factors.iter().chain(&self.rhs.factors) {
            if !vars.contains(&x) {
                vars.push(x);
            }
        }
        vars
    }

    /// Parses `lhs <= rhs` or `lhs = rhs`. Terms are `1` or products of
    /// single-letter variables with optional exponents `^k`, `^w` (ω) and
    /// `^(w+k)`; `ω` may be written in place of `w`.
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let mut p = Parser { chars, at: 0 };
        let lhs = p.term()?;
        let relation = match p.peek() {
            Some('<') => {
                p.at += 1;
                p.expect('=')?;
                Relation::Leq
            }
            Some('=') => {
                p.at += 1;
                Relation::Eq
            }
            _ => return Err(p.error("expected '<=' or '='")),
        };
        let rhs = p.term()?;
        if p.peek().is_some() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(Inequality { lhs, relation, rhs })
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.at)
            .map_or_else(|| self.chars.last().map_or(0, |&(p, _)| p + 1), |&(p, _)| p)
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.at;
        let mut value: u32 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d))
                .ok_or_else(|| self.error("exponent too large"))?;
            self.at += 1;
        }
        if self.at == start {
            return Err(self.error("expected a number"));
        }
        Ok(value)
    }

    fn is_omega(c: Option<char>) -> bool {
        matches!(c, Some('w') | Some('ω'))
    }

    fn term(&mut self) -> Result<OmegaTerm> {
        if self.peek() == Some('1') {
            self.at += 1;
            return Ok(OmegaTerm::one());
        }
        let mut factors = Vec::new();
        let mut saw_variable = false;
        while let Some(c) = self.peek() {
            if !c.is_alphabetic() {
                break;
            }
            saw_variable = true;
            self.at += 1;
            if self.peek() != Some('^') {
                factors.push((c, Exponent::Finite(1)));
                continue;
            }
            self.at += 1;
            let exp = match self.peek() {
                c if Parser::is_omega(c) => {
                    self.at += 1;
                    Some(Exponent::OMEGA)
                }
                Some('(') => {
                    self.at += 1;
                    if !Parser::is_omega(self.peek()) {
                        return Err(self.error("expected 'w'"));
                    }
                    self.at += 1;
                    let k = if self.peek() == Some('+') {
                        self.at += 1;
                        self.number()?
                    } else {
                        0
                    };
                    self.expect(')')?;
                    Some(Exponent::OmegaPlus(k))
                }
                _ => match self.number()? {
                    0 => None,
                    k => Some(Exponent::Finite(k)),
                },
            };
            if let Some(e) = exp {
                factors.push((c, e));
            }
        }
        if !saw_variable {
            return Err(self.error("expected a term"));
        }
        Ok(OmegaTerm { factors })
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(k) => write!(f, "{k}"),
            Exponent::OmegaPlus(0) => write!(f, "w"),
            Exponent::OmegaPlus(k) => write!(f, "(w+{k})"),
        }
    }
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (x, e) in &self.factors {
            match e {
                Exponent::Finite(1) => write!(f, "{x}")?,
                e => write!(f, "{x}^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Leq => "<=",
            Relation::Eq => "=",
        };
        write!(f, "{} {rel} {}", self.lhs, self.rhs)
    }
}
