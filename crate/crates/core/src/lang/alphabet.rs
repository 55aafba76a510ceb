use std::fmt;

use crate::error::{Error, Result};

/// Characters with a fixed meaning in the regex and term grammars.
const RESERVED: &[char] = &['0', '1', '+', '*', '^', '(', ')', '=', '<', '{', '}', ','];

/// An ordered list of distinct single-character symbols.
///
/// The position of a symbol is its index everywhere in the crate: transition
/// rows, stamp images and morphism tables are all indexed by it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        for (i, &c) in symbols.iter().enumerate() {
            if c.is_whitespace() || c.is_ascii_digit() || RESERVED.contains(&c) {
                return Err(Error::InvalidAlphabet(format!("'{c}' cannot be a symbol")));
            }
            if symbols[..i].contains(&c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol '{c}'")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Parses a symbol list such as `"ab"` or `"a,b"`; commas and whitespace are separators.
    pub fn parse(text: &str) -> Result<Self> {
        Alphabet::new(text.chars().filter(|c| *c != ',' && !c.is_whitespace()))
    }

    pub fn empty() -> Self {
        Alphabet::default()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    pub fn contains(&self, c: char) -> bool {
        self.symbols.contains(&c)
    }

    pub fn same_symbols(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.symbols.iter().all(|&c| other.contains(c))
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.symbols.iter().all(|&c| other.contains(c))
    }

    /// Identical alphabets are kept as they are; otherwise the sorted union.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        if self == other {
            return self.clone();
        }
        let mut symbols: Vec<char> = self.symbols.clone();
        symbols.extend(other.symbols.iter().copied().filter(|&c| !self.contains(c)));
        symbols.sort_unstable();
        Alphabet { symbols }
    }

    /// Converts a string into symbol indices.
    pub fn word(&self, text: &str) -> Result<Vec<usize>> {
        text.chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(pos, c)| {
                self.index_of(c)
                    .ok_or(Error::UnknownSymbol { symbol: c, pos })
            })
            .collect()
    }

    pub fn spell(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.symbols[i]).collect()
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for a in 0..self.len() {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_reserved() {
        assert!(Alphabet::parse("aa").is_err());
        assert!(Alphabet::parse("a1").is_err());
        assert!(Alphabet::parse("a+").is_err());
        assert_eq!(Alphabet::parse("a, b").unwrap().symbols(), &['a', 'b']);
    }

    #[test]
    fn union_is_sorted_unless_identical() {
        let ba = Alphabet::parse("ba").unwrap();
        assert_eq!(ba.union(&ba), ba);
        let a = Alphabet::parse("a").unwrap();
        assert_eq!(ba.union(&a).symbols(), &['a', 'b']);
        let c = Alphabet::parse("c").unwrap();
        assert_eq!(c.union(&ba).symbols(), &['a', 'b', 'c']);
    }

    #[test]
    fn words_in_shortlex_order() {
        let ab = Alphabet::parse("ab").unwrap();
        let words: Vec<String> = ab.words_up_to(2).iter().map(|w| ab.spell(w)).collect();
        assert_eq!(words, ["", "a", "b", "aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn unknown_symbol_reports_position() {
        let ab = Alphabet::parse("ab").unwrap();
        assert_eq!(
            ab.word("abc"),
            Err(Error::UnknownSymbol { symbol: 'c', pos: 2 })
        );
    }
}
