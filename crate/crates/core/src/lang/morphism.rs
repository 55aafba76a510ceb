use std::fmt;

use super::Alphabet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorphismKind {
    /// Every letter maps to a letter.
    LengthPreserving,
    /// Every letter maps to a letter or to the empty word.
    LengthDecreasing,
    General,
}

/// A free-monoid morphism `A* -> B*` given by the images of the letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Vec<usize>>,
}

impl Morphism {
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Vec<usize>>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} images for {} letters",
                images.len(),
                source.len()
            )));
        }
        if images.iter().flatten().any(|&b| b >= target.len()) {
            return Err(Error::InvalidMorphism("image symbol out of range".into()));
        }
        Ok(Morphism {
            source,
            target,
            images,
        })
    }

    /// Builds a morphism from `letter -> word` pairs. Letters not listed are
    /// an error; `1` or an empty string denotes the empty word.
    pub fn from_pairs<'a, I>(source: Alphabet, target: Alphabet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (char, &'a str)>,
    {
        let mut images: Vec<Option<Vec<usize>>> = vec![None; source.len()];
        for (letter, word) in pairs {
            let a = source.index_of(letter).ok_or_else(|| {
                Error::InvalidMorphism(format!("'{letter}' is not in the source alphabet"))
            })?;
            if images[a].is_some() {
                return Err(Error::InvalidMorphism(format!("'{letter}' is mapped twice")));
            }
            let word = word.trim();
            let image = if word == "1" { Vec::new() } else { target.word(word)? };
            images[a] = Some(image);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(a, img)| {
                img.ok_or_else(|| {
                    Error::InvalidMorphism(format!("no image for '{}'", source.symbol(a)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source, target, images)
    }

    /// Parses `a=x,b=yz` (also accepts `a->x`) into a morphism.
    pub fn parse(source: Alphabet, target: Alphabet, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (lhs, rhs) = item
                .split_once("->")
                .or_else(|| item.split_once('='))
                .ok_or_else(|| Error::InvalidMorphism(format!("expected letter=word in '{item}'")))?;
            let mut chars = lhs.trim().chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::InvalidMorphism(format!("bad letter '{}'", lhs.trim()))),
            };
            pairs.push((letter, rhs));
        }
        Morphism::from_pairs(source, target, pairs)
    }

    pub fn identity(alphabet: &Alphabet) -> Morphism {
        Morphism {
            source: alphabet.clone(),
            target: alphabet.clone(),
            images: (0..alphabet.len()).map(|a| vec![a]).collect(),
        }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, a: usize) -> &[usize] {
        &self.images[a]
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn kind(&self) -> MorphismKind {
        if self.images.iter().all(|w| w.len() == 1) {
            MorphismKind::LengthPreserving
        } else if self.images.iter().all(|w| w.len() <= 1) {
            MorphismKind::LengthDecreasing
        } else {
            MorphismKind::General
        }
    }

    pub fn apply(&self, word: &[usize]) -> Vec<usize> {
        word.iter().flat_map(|&a| self.images[a].iter().copied()).collect()
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(a, w)| {
                let img = if w.is_empty() { "1".to_string() } else { self.target.spell(w) };
                format!("{}={}", self.source.symbol(a), img)
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_follow_images() {
        let ab = Alphabet::parse("ab").unwrap();
        let cd = Alphabet::parse("cd").unwrap();
        let lp = Morphism::parse(ab.clone(), cd.clone(), "a=c,b=c").unwrap();
        assert_eq!(lp.kind(), MorphismKind::LengthPreserving);
        let ld = Morphism::parse(ab.clone(), cd.clone(), "a=c,b=1").unwrap();
        assert_eq!(ld.kind(), MorphismKind::LengthDecreasing);
        let g = Morphism::parse(ab.clone(), cd.clone(), "a->cd, b->1").unwrap();
        assert_eq!(g.kind(), MorphismKind::General);
        assert_eq!(g.apply(&[0, 1, 0]), vec![0, 1, 0, 1]);
        assert_eq!(g.to_string(), "a=cd,b=1");
    }

    #[test]
    fn rejects_incomplete_or_foreign() {
        let ab = Alphabet::parse("ab").unwrap();
        let c = Alphabet::parse("c").unwrap();
        assert!(matches!(
            Morphism::parse(ab.clone(), c.clone(), "a=c"),
            Err(Error::InvalidMorphism(_))
        ));
        assert!(matches!(
            Morphism::parse(ab.clone(), c.clone(), "a=c,b=d"),
            Err(Error::UnknownSymbol { symbol: 'd', .. })
        ));
        assert!(Morphism::parse(ab, c, "a=c,a=c,b=c").is_err());
    }
}
