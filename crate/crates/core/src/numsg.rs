//! Additive submonoids of ℕ and the languages `a{a^s : s ∈ S}*`.

use std::fmt;

use serde::Serialize;

use crate::commutative::EPSet;
use crate::error::{Error, Result};
use crate::ineq::{satisfies, Inequality, OmegaTerm};
use crate::lang::{Alphabet, Dfa};
use crate::monoid::syntactic_monoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Conductor {
    /// Every integer from this value on is a member.
    Finite(usize),
    /// The monoid misses infinitely many integers (its generators have a common factor).
    Infinite,
}

impl fmt::Display for Conductor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conductor::Finite(c) => write!(f, "{c}"),
            Conductor::Infinite => f.write_str("∞"),
        }
    }
}

/// The additive submonoid `⟨S⟩` of ℕ generated by a finite set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumericalSemigroup {
    generators: Vec<usize>,
    minimal_generators: Vec<usize>,
    gcd: usize,
    /// Membership of `n · gcd` for `n` below the scaled conductor bound.
    scaled: Vec<bool>,
    scaled_conductor: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl NumericalSemigroup {
    pub fn generate(gens: &[usize]) -> NumericalSemigroup {
        let mut generators: Vec<usize> = gens.iter().copied().filter(|&s| s > 0).collect();
        generators.sort_unstable();
        generators.dedup();
        let g = generators.iter().fold(0, |acc, &s| gcd(acc, s));
        if g == 0 {
            return NumericalSemigroup {
                generators,
                minimal_generators: Vec::new(),
                gcd: 0,
                scaled: vec![true],
                scaled_conductor: 1,
            };
        }
        let scaled_gens: Vec<usize> = generators.iter().map(|&s| s / g).collect();
        let max = *scaled_gens.last().expect("nonempty");
        let bound = 2 * max * max + max;
        let mut member = vec![false; bound + 1];
        member[0] = true;
        for n in 1..=bound {
            member[n] = scaled_gens.iter().any(|&s| s <= n && member[n - s]);
        }
        let conductor = (0..=bound)
            .rev()
            .find(|&n| !member[n])
            .map_or(0, |gap| gap + 1);
        member.truncate(conductor.max(1));
        // a generator is minimal iff the smaller minimal generators do not reach it
        let mut minimal = Vec::new();
        let mut reach = vec![false; max + 1];
        reach[0] = true;
        for &s in &scaled_gens {
            if !reach[s] {
                minimal.push(s * g);
                for n in s..=max {
                    if reach[n - s] {
                        reach[n] = true;
                    }
                }
            }
        }
        NumericalSemigroup {
            generators,
            minimal_generators: minimal,
            gcd: g,
            scaled: member,
            scaled_conductor: conductor,
        }
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn minimal_generators(&self) -> &[usize] {
        &self.minimal_generators
    }

    pub fn gcd(&self) -> usize {
        self.gcd
    }

    pub fn contains(&self, n: usize) -> bool {
        if self.gcd == 0 {
            return n == 0;
        }
        if n % self.gcd != 0 {
            return false;
        }
        let k = n / self.gcd;
        k >= self.scaled_conductor || self.scaled[k]
    }

    pub fn conductor(&self) -> Conductor {
        if self.gcd == 1 {
            Conductor::Finite(self.scaled_conductor)
        } else {
            Conductor::Infinite
        }
    }

    pub fn members_below(&self, limit: usize) -> Vec<usize> {
        (0..limit).filter(|&n| self.contains(n)).collect()
    }

    pub fn to_epset(&self) -> EPSet {
        if self.gcd == 0 {
            return EPSet::finite(&[0]);
        }
        EPSet::from_fn(self.scaled_conductor * self.gcd, self.gcd, |n| self.contains(n))
    }

    /// The language `{a^{n+1} : n ∈ ⟨S⟩}` over `{a}`.
    pub fn language(&self) -> Dfa {
        let alphabet = Alphabet::new(['a']).expect("valid alphabet");
        self.to_epset()
            .offset(1)
            .to_dfa(&alphabet)
            .expect("unary alphabet")
    }
}

pub fn generate(gens: &[usize]) -> NumericalSemigroup {
    NumericalSemigroup::generate(gens)
}

pub fn build_ls(gens: &[usize]) -> Dfa {
    NumericalSemigroup::generate(gens).language()
}

/// `x <= x^{m+1}`.
pub fn shift_inequality(m: usize) -> Inequality {
    Inequality::leq(OmegaTerm::var('x'), OmegaTerm::power('x', m as u32 + 1))
}

/// For each `m <= m_bound`, whether the syntactic monoid of `L_S` satisfies
/// `x <= x^{m+1}`. Each answer must agree with `m ∈ ⟨S⟩`; any disagreement is
/// reported as an error.
pub fn vs_characterization(gens: &[usize], m_bound: usize) -> Result<Vec<(usize, bool)>> {
    let sg = NumericalSemigroup::generate(gens);
    let syn = syntactic_monoid(&sg.language())?;
    let mut out = Vec::with_capacity(m_bound + 1);
    for m in 0..=m_bound {
        let holds = satisfies(syn.monoid(), &shift_inequality(m));
        if holds != sg.contains(m) {
            return Err(Error::Consistency(format!(
                "x <= x^{} is {} but {m} is {}in the semigroup",
                m + 1,
                if holds { "satisfied" } else { "not satisfied" },
                if sg.contains(m) { "" } else { "not " }
            )));
        }
        out.push((m, holds));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_five() {
        let s = generate(&[3, 5]);
        assert_eq!(s.members_below(12), vec![0, 3, 5, 6, 8, 9, 10, 11]);
        assert_eq!(s.minimal_generators(), [3, 5]);
        assert_eq!(s.conductor(), Conductor::Finite(8));
    }

    #[test]
    fn empty_and_non_coprime() {
        let e = generate(&[]);
        assert_eq!(e.members_below(10), vec![0]);
        assert_eq!(e.conductor(), Conductor::Infinite);
        let s = generate(&[4, 6]);
        assert_eq!(s.members_below(15), vec![0, 4, 6, 8, 10, 12, 14]);
        assert_eq!(s.minimal_generators(), [4, 6]);
        assert_eq!(s.conductor(), Conductor::Infinite);
        assert_eq!(s.to_epset(), EPSet::from_fn(4, 2, |n| n == 0 || (n >= 4 && n % 2 == 0)));
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let s = generate(&[3, 5, 6, 8, 10]);
        assert_eq!(s.minimal_generators(), [3, 5]);
        assert_eq!(s.to_epset(), generate(&[3, 5]).to_epset());
        assert_eq!(generate(&[2, 0, 2]).generators(), [2]);
    }

    #[test]
    fn languages() {
        let a = Alphabet::parse("a").unwrap();
        assert_eq!(build_ls(&[4]), Dfa::from_regex("a(a^4)*", &a).unwrap());
        assert_eq!(build_ls(&[]), Dfa::from_regex("a", &a).unwrap());
        let l = build_ls(&[3, 5]);
        let members: Vec<usize> = (0..12).filter(|&n| l.accepts(&vec![0; n])).collect();
        assert_eq!(members, vec![1, 4, 6, 7, 9, 10, 11]);
    }

    #[test]
    fn characterization() {
        let rows = vs_characterization(&[3, 5], 12).unwrap();
        assert!(!rows[4].1);
        assert!(rows[8].1);
        assert!(vs_characterization(&[1], 12).unwrap().iter().all(|r| r.1));
        for (m, holds) in vs_characterization(&[4], 12).unwrap() {
            assert_eq!(holds, m % 4 == 0);
        }
    }
}
