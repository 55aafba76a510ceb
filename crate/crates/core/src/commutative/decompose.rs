use serde::Serialize;

use super::EPSet;
use crate::error::{Error, Result};
use crate::lang::{Alphabet, Dfa};
use crate::limits::Limits;
use crate::monoid::syntactic_monoid;

/// A shuffle of unary languages, one per letter of the alphabet: the words
/// whose number of occurrences of the i-th letter lies in `components[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ShuffleTerm {
    pub components: Vec<EPSet>,
}

impl ShuffleTerm {
    pub fn to_dfa(&self, alphabet: &Alphabet) -> Result<Dfa> {
        let mut acc: Option<Dfa> = None;
        for (&c, e) in alphabet.symbols().iter().zip(&self.components) {
            let letter = Alphabet::new([c])?;
            let part = e.to_dfa(&letter)?;
            acc = Some(match acc {
                None => part,
                Some(d) => d.shuffle(&part)?,
            });
        }
        match acc {
            Some(d) => d.with_alphabet(alphabet),
            None => Ok(Dfa::universal(alphabet)),
        }
    }

    /// Whether a word with these letter counts belongs to the term.
    pub fn contains_counts(&self, counts: &[usize]) -> bool {
        self.components.iter().zip(counts).all(|(e, &n)| e.contains(n))
    }
}

/// A commutative language written as a finite union of shuffle terms.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    #[serde(serialize_with = "serialize_alphabet")]
    pub alphabet: Alphabet,
    pub terms: Vec<ShuffleTerm>,
}

fn serialize_alphabet<S: serde::Serializer>(a: &Alphabet, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(a.symbols().iter().map(|c| c.to_string()))
}

impl Decomposition {
    /// The union of all terms.
    pub fn to_dfa(&self) -> Result<Dfa> {
        let mut acc = Dfa::empty(&self.alphabet);
        for t in &self.terms {
            acc = acc.union(&t.to_dfa(&self.alphabet)?)?;
        }
        Ok(acc)
    }
}

/// Splits a commutative language through its syntactic stamp `η`: for every
/// tuple `(m_a)` with `m_a` a power of `η(a)` and `∏ m_a` in the syntactic
/// image, the term `⧢_a {a^n : η(a)^n = m_a}`. The union is checked against
/// the input before returning.
pub fn decompose_commutative(dfa: &Dfa) -> Result<Decomposition> {
    decompose_with_cap(dfa, Limits::global().term_cap)
}

pub fn decompose_with_cap(dfa: &Dfa, cap: usize) -> Result<Decomposition> {
    let syn = syntactic_monoid(dfa)?;
    let m = syn.monoid();
    if !m.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let k = dfa.alphabet().len();
    // cyclic submonoid of each letter image with the exponents reaching each element
    let mut cyclic: Vec<Vec<(usize, EPSet)>> = Vec::with_capacity(k);
    for a in 0..k {
        let g = syn.stamp().image(a);
        let mut powers = vec![m.identity()];
        let mut p = m.identity();
        let start = loop {
            p = m.mul(p, g);
            if let Some(i) = powers.iter().position(|&x| x == p) {
                break i;
            }
            powers.push(p);
        };
        let period = powers.len() - start;
        let element_at = |n: usize| {
            if n < start {
                powers[n]
            } else {
                powers[start + (n - start) % period]
            }
        };
        let elements: Vec<(usize, EPSet)> = powers
            .iter()
            .map(|&x| (x, EPSet::from_fn(start, period, |n| element_at(n) == x)))
            .collect();
        cyclic.push(elements);
    }
    // good[i][x]: some completion of the partial product x by letters i.. lands in the image
    let n = m.size();
    let mut reach: Vec<bool> = (0..n).map(|x| x == m.identity()).collect();
    let mut good = vec![Vec::new(); k + 1];
    good[k] = (0..n).map(|x| syn.in_image(x)).collect();
    for i in (0..k).rev() {
        let mut next = vec![false; n];
        for (x, _) in &cyclic[i] {
            for r in (0..n).filter(|&r| reach[r]) {
                next[m.mul(*x, r)] = true;
            }
        }
        reach = next;
        good[i] = (0..n)
            .map(|x| (0..n).any(|r| reach[r] && syn.in_image(m.mul(x, r))))
            .collect();
    }
    let mut terms = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    search(&cyclic, &good, m, 0, m.identity(), &mut chosen, &mut terms, cap)?;
    let result = Decomposition {
        alphabet: dfa.alphabet().clone(),
        terms,
    };
    if !result.to_dfa()?.equivalent(dfa) {
        return Err(Error::Consistency(
            "decomposition does not recognize the input language".into(),
        ));
    }
    Ok(result)
}

#[allow(clippy::too_many_arguments)]
fn search(
    cyclic: &[Vec<(usize, EPSet)>],
    good: &[Vec<bool>],
    m: &crate::monoid::OrderedMonoid,
    depth: usize,
    product: usize,
    chosen: &mut Vec<usize>,
    terms: &mut Vec<ShuffleTerm>,
    cap: usize,
) -> Result<()> {
    if !good[depth][product] {
        return Ok(());
    }
    if depth == cyclic.len() {
        if terms.len() == cap {
            return Err(Error::TermCap { cap });
        }
        terms.push(ShuffleTerm {
            components: chosen
                .iter()
                .enumerate()
                .map(|(a, &i)| cyclic[a][i].1.clone())
                .collect(),
        });
        return Ok(());
    }
    for (i, (x, _)) in cyclic[depth].iter().enumerate() {
        chosen.push(i);
        search(cyclic, good, m, depth + 1, m.mul(product, *x), chosen, terms, cap)?;
        chosen.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang(text: &str, alphabet: &str) -> Dfa {
        Dfa::from_regex(text, &Alphabet::parse(alphabet).unwrap()).unwrap()
    }

    #[test]
    fn parity_language_is_one_term() {
        let l = lang("(aa)*", "a").shuffle(&lang("b(bb)*", "b")).unwrap();
        let d = decompose_commutative(&l).unwrap();
        assert_eq!(d.terms.len(), 1);
        let t = &d.terms[0];
        assert_eq!(t.components[0], EPSet::from_fn(0, 2, |n| n % 2 == 0));
        assert_eq!(t.components[1], EPSet::from_fn(0, 2, |n| n % 2 == 1));
    }

    #[test]
    fn unary_star() {
        let d = decompose_commutative(&lang("a*", "a")).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.terms[0].components, vec![EPSet::naturals()]);
    }

    #[test]
    fn small_finite_language() {
        let l = lang("1 + a + b + ab + ba", "ab");
        let d = decompose_commutative(&l).unwrap();
        assert!(d.to_dfa().unwrap().equivalent(&l));
        let singleton = |n: usize| EPSet::finite(&[n]);
        assert!(d.terms.contains(&ShuffleTerm {
            components: vec![singleton(1), singleton(1)]
        }));
    }

    #[test]
    fn rejects_non_commutative() {
        assert_eq!(
            decompose_commutative(&lang("ab", "ab")).unwrap_err(),
            Error::NotCommutative
        );
    }

    #[test]
    fn term_cap() {
        let l = lang("(a + b)^4 (a + b)*", "ab");
        assert_eq!(decompose_with_cap(&l, 2).unwrap_err(), Error::TermCap { cap: 2 });
    }
}
