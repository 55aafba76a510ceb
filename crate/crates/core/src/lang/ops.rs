use super::{Alphabet, Dfa, Morphism, MorphismKind, Nfa};
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoolOp {
    Union,
    Intersect,
    Difference,
    Complement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

fn mismatch(a: &Alphabet, b: &Alphabet) -> Error {
    Error::AlphabetMismatch {
        left: a.to_string(),
        right: b.to_string(),
    }
}

/// Boolean combination. `Complement` ignores the second operand; the others require it.
pub fn boolean(op: BoolOp, left: &Dfa, right: Option<&Dfa>) -> Result<Dfa> {
    match (op, right) {
        (BoolOp::Complement, _) => Ok(left.complement()),
        (BoolOp::Union, Some(r)) => left.union(r),
        (BoolOp::Intersect, Some(r)) => left.intersect(r),
        (BoolOp::Difference, Some(r)) => left.difference(r),
        (_, None) => Err(Error::InvalidAutomaton(format!("{op:?} needs two operands"))),
    }
}

pub fn quotient(side: Side, word: &[usize], lang: &Dfa) -> Dfa {
    match side {
        Side::Left => lang.left_quotient(word),
        Side::Right => lang.right_quotient(word),
    }
}

impl Dfa {
    fn product(&self, other: &Dfa, keep: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        if !self.alphabet().same_symbols(other.alphabet()) {
            return Err(mismatch(self.alphabet(), other.alphabet()));
        }
        let other = other.with_alphabet(self.alphabet())?;
        let (n, m, k) = (self.states(), other.states(), self.alphabet().len());
        let delta = (0..n * m)
            .map(|s| {
                let (p, q) = (s / m, s % m);
                (0..k).map(|a| self.next(p, a) * m + other.next(q, a)).collect()
            })
            .collect();
        let finals = (0..n * m)
            .map(|s| keep(self.is_final(s / m), other.is_final(s % m)))
            .collect();
        let initial = self.initial() * m + other.initial();
        Ok(Dfa::from_parts(self.alphabet().clone(), delta, initial, finals)?.minimize())
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |x, y| x || y)
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |x, y| x && y)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |x, y| x && !y)
    }

    pub fn complement(&self) -> Dfa {
        let finals: Vec<usize> = (0..self.states()).filter(|&q| !self.is_final(q)).collect();
        self.with_finals(&finals)
            .expect("states are in range")
            .minimize()
    }

    /// `{w : uw ∈ L}`.
    pub fn left_quotient(&self, word: &[usize]) -> Dfa {
        let start = self.run(self.initial(), word);
        Dfa::from_parts(
            self.alphabet().clone(),
            self.delta().to_vec(),
            start,
            (0..self.states()).map(|q| self.is_final(q)).collect(),
        )
        .expect("same structure")
        .minimize()
    }

    /// `{w : wu ∈ L}`.
    pub fn right_quotient(&self, word: &[usize]) -> Dfa {
        let finals: Vec<usize> = (0..self.states())
            .filter(|&q| self.is_final(self.run(q, word)))
            .collect();
        self.with_finals(&finals).expect("states are in range").minimize()
    }

    /// Interleavings of a word of `self` with a word of `other`, over the union alphabet.
    pub fn shuffle(&self, other: &Dfa) -> Result<Dfa> {
        let alphabet = self.alphabet().union(other.alphabet());
        let l = self.with_alphabet(&alphabet)?;
        let r = other.with_alphabet(&alphabet)?;
        let (n, m) = (l.states(), r.states());
        let mut edges = Vec::with_capacity(n * m * alphabet.len() * 2);
        for p in 0..n {
            for q in 0..m {
                for a in 0..alphabet.len() {
                    edges.push((p * m + q, a, l.next(p, a) * m + q));
                    edges.push((p * m + q, a, p * m + r.next(q, a)));
                }
            }
        }
        let finals = (0..n * m).filter(|&s| l.is_final(s / m) && r.is_final(s % m));
        let nfa = Nfa::new(alphabet, n * m, edges, [l.initial() * m + r.initial()], finals)?;
        Ok(nfa.determinize(Limits::global().state_cap)?.minimize())
    }

    /// Image under a length-preserving morphism.
    pub fn rename(&self, phi: &Morphism) -> Result<Dfa> {
        if phi.kind() != MorphismKind::LengthPreserving {
            return Err(Error::NotLengthPreserving);
        }
        let lang = self.on_alphabet(phi.source())?;
        let edges: Vec<(usize, usize, usize)> = (0..lang.states())
            .flat_map(|q| {
                let lang = &lang;
                (0..lang.alphabet().len()).map(move |a| (q, phi.image(a)[0], lang.next(q, a)))
            })
            .collect();
        let nfa = Nfa::new(
            phi.target().clone(),
            lang.states(),
            edges,
            [lang.initial()],
            lang.final_states(),
        )?;
        Ok(nfa.determinize(Limits::global().state_cap)?.minimize())
    }

    /// Preimage `φ⁻¹(L)` over the source alphabet of `φ`.
    pub fn inverse_image(&self, phi: &Morphism) -> Result<Dfa> {
        let lang = self.on_alphabet(phi.target())?;
        let delta = (0..lang.states())
            .map(|q| {
                (0..phi.source().len())
                    .map(|a| lang.run(q, phi.image(a)))
                    .collect()
            })
            .collect();
        let finals = (0..lang.states()).map(|q| lang.is_final(q)).collect();
        Ok(Dfa::from_parts(phi.source().clone(), delta, lang.initial(), finals)?.minimize())
    }

    /// Reindexes onto an alphabet with exactly the same symbols.
    fn on_alphabet(&self, alphabet: &Alphabet) -> Result<Dfa> {
        if !self.alphabet().same_symbols(alphabet) {
            return Err(mismatch(self.alphabet(), alphabet));
        }
        self.with_alphabet(alphabet)
    }
}

pub fn shuffle(left: &Dfa, right: &Dfa) -> Result<Dfa> {
    left.shuffle(right)
}

pub fn rename_image(lang: &Dfa, phi: &Morphism) -> Result<Dfa> {
    lang.rename(phi)
}

pub fn inverse_morphism(lang: &Dfa, phi: &Morphism) -> Result<Dfa> {
    lang.inverse_image(phi)
}

pub fn equivalent(left: &Dfa, right: &Dfa) -> bool {
    left.equivalent(right)
}
