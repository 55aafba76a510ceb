//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use synmon_core::lang::Regex;

/// End positions reachable by matching `re` from each start in `starts`.
fn ends(re: &Regex, w: &[char], starts: &BTreeSet<usize>) -> BTreeSet<usize> {
    match re {
        Regex::Empty => BTreeSet::new(),
        Regex::Epsilon => starts.clone(),
        Regex::Symbol(c) => starts
            .iter()
            .filter(|&&i| i < w.len() && w[i] == *c)
            .map(|&i| i + 1)
            .collect(),
        Regex::Union(a, b) => {
            let mut out = ends(a, w, starts);
            out.extend(ends(b, w, starts));
            out
        }
        Regex::Concat(a, b) => ends(b, w, &ends(a, w, starts)),
        Regex::Star(a) => {
            let mut seen = starts.clone();
            let mut frontier = starts.clone();
            while !frontier.is_empty() {
                let next: BTreeSet<usize> =
                    ends(a, w, &frontier).difference(&seen).copied().collect();
                seen.extend(next.iter().copied());
                frontier = next;
            }
            seen
        }
        Regex::Power(a, k) => {
            let mut cur = starts.clone();
            for _ in 0..*k {
                cur = ends(a, w, &cur);
            }
            cur
        }
    }
}

/// Whether `re` matches all of `word`.
pub fn matches(re: &Regex, word: &str) -> bool {
    let w: Vec<char> = word.chars().collect();
    ends(re, &w, &BTreeSet::from([0])).contains(&w.len())
}

/// All words over `letters` of length at most `max_len`.
pub fn words(letters: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |&c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub const CONTEXT_BOUND: usize = 200;

/// Syntactic monoid of a unary language computed from contexts: `a^i` and
/// `a^j` are identified when `a^{i+r}` and `a^{j+r}` agree for all `r` below
/// [`CONTEXT_BOUND`].
pub struct UnaryOracle {
    /// Least power in each class, in increasing order.
    pub reps: Vec<usize>,
    /// `class[i]` is the class of `a^i` for `i < CONTEXT_BOUND`.
    pub class: Vec<usize>,
    member: Vec<bool>,
}

impl UnaryOracle {
    pub fn new(member: impl Fn(usize) -> bool) -> UnaryOracle {
        let member: Vec<bool> = (0..CONTEXT_BOUND * CONTEXT_BOUND).map(member).collect();
        let mut by_sig: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
        let mut reps = Vec::new();
        let mut class = Vec::new();
        for i in 0..CONTEXT_BOUND {
            let sig: Vec<bool> = (0..CONTEXT_BOUND).map(|r| member[i + r]).collect();
            let next = reps.len();
            let c = *by_sig.entry(sig).or_insert(next);
            if c == next {
                reps.push(i);
            }
            class.push(c);
        }
        UnaryOracle { reps, class, member }
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    /// `a^i <= a^j`: every context accepting `a^i` accepts `a^j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        (0..CONTEXT_BOUND).all(|r| !self.member[i + r] || self.member[j + r])
    }

    /// Strict pairs between class representatives, as exponents.
    pub fn strict_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for &i in &self.reps {
            for &j in &self.reps {
                if i != j && self.leq(i, j) {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    /// Whether `x <= x^k` for every element `x`.
    pub fn shift_holds(&self, k: usize) -> bool {
        self.reps.iter().all(|&i| self.leq(i, i * k))
    }
}

pub const BITS: usize = 128;

/// Unary languages as membership prefixes of length [`BITS`], for languages
/// periodic with `period` from well below `BITS`.
#[derive(Clone, Copy)]
pub struct Prefixes {
    pub period: usize,
}

impl Prefixes {
    pub fn encode(&self, f: impl Fn(usize) -> bool) -> u128 {
        (0..BITS).filter(|&i| f(i)).fold(0, |m, i| m | (1u128 << i))
    }

    /// `a^{-1} L`, refilling the top bit from one period earlier.
    pub fn quotient(&self, x: u128) -> u128 {
        let top = (x >> (BITS - self.period)) & 1;
        (x >> 1) | (top << (BITS - 1))
    }

    /// Closure of `gens` under union, intersection and quotient, and
    /// complement when asked.
    pub fn closure(&self, gens: &[u128], complement: bool) -> HashSet<u128> {
        let mut set: HashSet<u128> = gens.iter().copied().collect();
        loop {
            let items: Vec<u128> = set.iter().copied().collect();
            let mut next = set.clone();
            for &x in &items {
                next.insert(self.quotient(x));
                if complement {
                    next.insert(!x);
                }
                for &y in &items {
                    next.insert(x | y);
                    next.insert(x & y);
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }
}
