use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lang::{Alphabet, Dfa, Regex};

/// An eventually periodic subset of ℕ: below `threshold` membership is
/// given by `exceptions`, from `threshold` on by `n mod period ∈ residues`.
///
/// Values are always canonical (minimal period, then minimal threshold), so
/// equal sets compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EPSet {
    exceptions: Vec<usize>,
    threshold: usize,
    period: usize,
    residues: Vec<usize>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl EPSet {
    pub fn new(
        exceptions: Vec<usize>,
        threshold: usize,
        period: usize,
        residues: Vec<usize>,
    ) -> Result<Self> {
        if period == 0 {
            return Err(Error::DivisionByZero);
        }
        if exceptions.iter().any(|&e| e >= threshold) {
            return Err(Error::InvalidAutomaton("exceptions must lie below the threshold".into()));
        }
        if residues.iter().any(|&r| r >= period) {
            return Err(Error::InvalidAutomaton("residues must lie below the period".into()));
        }
        let raw = EPSet {
            exceptions,
            threshold,
            period,
            residues,
        };
        Ok(EPSet::from_fn(threshold, period, |n| raw.contains(n)))
    }

    /// The canonical set agreeing with `pred` below `threshold` and periodic
    /// with period `period` from `threshold` on.
    pub fn from_fn(threshold: usize, period: usize, pred: impl Fn(usize) -> bool) -> EPSet {
        let period = period.max(1);
        let tail: Vec<bool> = (0..period).map(|r| pred(threshold + r)).collect();
        let period = (1..=period)
            .filter(|d| period % d == 0)
            .find(|&d| (0..period).all(|r| tail[r] == tail[r % d]))
            .expect("the full period always works");
        let head: Vec<bool> = (0..threshold).map(&pred).collect();
        let member = |n: usize| {
            if n < threshold {
                head[n]
            } else {
                tail[(n - threshold) % period]
            }
        };
        let mut t = threshold;
        while t > 0 && member(t - 1) == member(t - 1 + period) {
            t -= 1;
        }
        EPSet {
            exceptions: (0..t).filter(|&n| member(n)).collect(),
            threshold: t,
            period,
            residues: (0..period).filter(|&r| member(t + (r + period - t % period) % period)).collect(),
        }
    }

    pub fn empty() -> EPSet {
        EPSet::from_fn(0, 1, |_| false)
    }

    pub fn naturals() -> EPSet {
        EPSet::from_fn(0, 1, |_| true)
    }

    pub fn finite(elements: &[usize]) -> EPSet {
        let t = elements.iter().max().map_or(0, |&m| m + 1);
        EPSet::from_fn(t, 1, |n| elements.contains(&n))
    }

    /// `{n : n >= start}`.
    pub fn from_threshold(start: usize) -> EPSet {
        EPSet::from_fn(start, 1, |n| n >= start)
    }

    pub fn contains(&self, n: usize) -> bool {
        if n < self.threshold {
            self.exceptions.binary_search(&n).is_ok()
        } else {
            self.residues.binary_search(&(n % self.period)).is_ok()
        }
    }

    pub fn exceptions(&self) -> &[usize] {
        &self.exceptions
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn residues(&self) -> &[usize] {
        &self.residues
    }

    pub fn is_empty(&self) -> bool {
        self.exceptions.is_empty() && self.residues.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    /// Members below `limit`.
    pub fn members_below(&self, limit: usize) -> Vec<usize> {
        (0..limit).filter(|&n| self.contains(n)).collect()
    }

    fn combine(&self, other: &EPSet, f: impl Fn(bool, bool) -> bool) -> EPSet {
        let t = self.threshold.max(other.threshold);
        let p = lcm(self.period, other.period);
        EPSet::from_fn(t, p, |n| f(self.contains(n), other.contains(n)))
    }

    pub fn union(&self, other: &EPSet) -> EPSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &EPSet) -> EPSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn complement(&self) -> EPSet {
        EPSet::from_fn(self.threshold, self.period, |n| !self.contains(n))
    }

    /// `{n + k : n in self}`.
    pub fn offset(&self, k: usize) -> EPSet {
        EPSet::from_fn(self.threshold + k, self.period, |n| n >= k && self.contains(n - k))
    }

    /// `{n : n + 1 ∈ self}`.
    pub fn shift(&self) -> EPSet {
        EPSet::from_fn(self.threshold.saturating_sub(1), self.period, |n| self.contains(n + 1))
    }

    /// `{n : k·n ∈ self}`.
    pub fn divide(&self, k: usize) -> Result<EPSet> {
        if k == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(EPSet::from_fn(self.threshold.div_ceil(k), self.period, |n| {
            self.contains(k * n)
        }))
    }

    /// Sumset `{m + n : m ∈ self, n ∈ other}`.
    pub fn sum(&self, other: &EPSet) -> EPSet {
        let t = self.threshold + other.threshold + self.period + other.period + self.period * other.period;
        let p = lcm(self.period, other.period);
        let limit = t + p;
        let mut hit = vec![false; limit];
        let a = self.members_below(limit);
        let b = other.members_below(limit);
        for &x in &a {
            for &y in b.iter().take_while(|&&y| x + y < limit) {
                hit[x + y] = true;
            }
        }
        EPSet::from_fn(t, p, |n| hit[n])
    }

    /// The unary language `{a^n : n ∈ self}` over a one-letter alphabet.
    pub fn to_dfa(&self, alphabet: &Alphabet) -> Result<Dfa> {
        if alphabet.len() != 1 {
            return Err(Error::NotUnary);
        }
        let states = self.threshold + self.period;
        let delta = (0..states)
            .map(|i| vec![if i + 1 < states { i + 1 } else { self.threshold }])
            .collect();
        let finals = (0..states).map(|i| self.contains(i)).collect();
        Ok(Dfa::from_parts(alphabet.clone(), delta, 0, finals)?.minimize())
    }

    /// The exponent set of a unary language.
    pub fn from_dfa(dfa: &Dfa) -> Result<EPSet> {
        if dfa.alphabet().len() != 1 {
            return Err(Error::NotUnary);
        }
        let mut path = Vec::new();
        let mut seen = vec![usize::MAX; dfa.states()];
        let mut q = dfa.initial();
        while seen[q] == usize::MAX {
            seen[q] = path.len();
            path.push(q);
            q = dfa.next(q, 0);
        }
        let t = seen[q];
        let p = path.len() - t;
        Ok(EPSet::from_fn(t, p, |n| {
            let i = if n < t { n } else { t + (n - t) % p };
            dfa.is_final(path[i])
        }))
    }

    pub fn to_regex(&self, symbol: char) -> Regex {
        let alphabet = Alphabet::new([symbol]).expect("a single symbol is a valid alphabet");
        self.to_dfa(&alphabet).expect("unary alphabet").to_regex()
    }
}

pub fn to_epset(dfa: &Dfa) -> Result<EPSet> {
    EPSet::from_dfa(dfa)
}

pub fn from_epset(e: &EPSet, alphabet: &Alphabet) -> Result<Dfa> {
    e.to_dfa(alphabet)
}

pub fn ep_shift(e: &EPSet) -> EPSet {
    e.shift()
}

pub fn ep_divide(e: &EPSet, k: usize) -> Result<EPSet> {
    e.divide(k)
}

impl fmt::Display for EPSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[usize]| {
            xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        let mut parts = Vec::new();
        if !self.exceptions.is_empty() {
            parts.push(format!("{{{}}}", list(&self.exceptions)));
        }
        if !self.residues.is_empty() {
            let bound = if self.threshold > 0 {
                format!("n ≥ {}", self.threshold)
            } else {
                "n".to_string()
            };
            if self.period == 1 {
                parts.push(if self.threshold > 0 { format!("{{{bound}}}") } else { "ℕ".into() });
            } else {
                parts.push(format!(
                    "{{{bound} : n mod {} ∈ {{{}}}}}",
                    self.period,
                    list(&self.residues)
                ));
            }
        }
        if parts.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&parts.join(" ∪ "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unary() -> Alphabet {
        Alphabet::parse("a").unwrap()
    }

    fn ep(text: &str) -> EPSet {
        to_epset(&Dfa::from_regex(text, &unary()).unwrap()).unwrap()
    }

    #[test]
    fn canonical_forms_from_automata() {
        let e = ep("a + a^6 a*");
        assert_eq!(e, EPSet::new(vec![1], 6, 1, vec![0]).unwrap());
        assert_eq!((e.exceptions(), e.threshold(), e.period(), e.residues()), (&[1][..], 6, 1, &[0][..]));
        let empty = ep("0");
        assert_eq!((empty.threshold(), empty.period()), (0, 1));
        assert!(empty.is_empty());
        let c = ep("a(a^7)*");
        assert_eq!((c.threshold(), c.period(), c.residues()), (0, 7, &[1][..]));
        assert!(c.exceptions().is_empty());
    }

    #[test]
    fn canonicalization_shrinks_period_and_threshold() {
        let e = EPSet::new(vec![0, 2], 4, 4, vec![0, 2]).unwrap();
        assert_eq!((e.threshold(), e.period(), e.residues()), (0, 2, &[0][..]));
        assert_eq!(EPSet::new(vec![], 3, 2, vec![0, 1]).unwrap(), EPSet::from_threshold(3));
        assert!(EPSet::new(vec![5], 3, 1, vec![]).is_err());
        assert_eq!(EPSet::new(vec![], 0, 0, vec![]), Err(Error::DivisionByZero));
    }

    #[test]
    fn shift_and_divide() {
        let e = ep("a + a^6 a*");
        assert_eq!(ep_shift(&e), ep("1 + a^5 a*"));
        assert_eq!(ep_shift(&EPSet::empty()), EPSet::empty());
        let c = ep("a(a^7)*");
        assert_eq!(c.shift(), ep("(a^7)*"));
        assert_eq!(ep_divide(&e, 2).unwrap(), EPSet::from_threshold(3));
        assert_eq!(e.divide(1).unwrap(), e);
        assert_eq!(c.divide(3).unwrap(), EPSet::from_fn(0, 7, |n| n % 7 == 5));
        assert_eq!(e.divide(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn round_trip_through_automata() {
        for text in ["1 + a", "a + (a^3 + a^4)(a^7)*", "(aa)*", "0", "a*", "aaa"] {
            let d = Dfa::from_regex(text, &unary()).unwrap();
            let e = to_epset(&d).unwrap();
            assert_eq!(from_epset(&e, &unary()).unwrap(), d, "{text}");
        }
        let ab = Alphabet::parse("ab").unwrap();
        assert_eq!(to_epset(&Dfa::universal(&ab)), Err(Error::NotUnary));
    }

    #[test]
    fn boolean_and_sum() {
        let evens = EPSet::from_fn(0, 2, |n| n % 2 == 0);
        let threes = EPSet::from_fn(0, 3, |n| n % 3 == 0);
        assert_eq!(evens.intersect(&threes), EPSet::from_fn(0, 6, |n| n % 6 == 0));
        assert_eq!(evens.union(&evens.complement()), EPSet::naturals());
        let s = EPSet::finite(&[0]).union(&EPSet::from_fn(0, 3, |n| n % 3 == 0));
        let five = EPSet::from_fn(0, 5, |n| n % 5 == 0);
        let sg = s.sum(&five);
        assert_eq!(sg.members_below(12), vec![0, 3, 5, 6, 8, 9, 10, 11]);
        assert_eq!(sg.threshold(), 8);
        assert_eq!(EPSet::finite(&[1, 4]).offset(2), EPSet::finite(&[3, 6]));
    }

    #[test]
    fn display() {
        assert_eq!(ep("a + a^6 a*").to_string(), "{1} ∪ {n ≥ 6}");
        assert_eq!(EPSet::empty().to_string(), "∅");
        assert_eq!(ep("a*").to_string(), "ℕ");
        assert_eq!(ep("a(a^7)*").to_string(), "{n : n mod 7 ∈ {1}}");
        assert_eq!(ep("a(a^7)*").to_regex('a').to_string(), "a(a^7)*");
    }
}
