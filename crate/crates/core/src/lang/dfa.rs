use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Alphabet, Nfa, Regex};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A complete deterministic automaton.
///
/// Every operation in the crate returns the canonical form: minimal, states
/// numbered in breadth-first order from the initial state (state 0), symbols
/// explored in alphabet order. Two canonical automata over the same alphabet
/// recognize the same language iff they are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    pub fn from_parts(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("at least one state is required".into()));
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton(format!("initial state {initial} out of range")));
        }
        if finals.len() != n {
            return Err(Error::InvalidAutomaton("final flags do not match the state count".into()));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidAutomaton(format!(
                    "state {q} has {} transitions, expected {}",
                    row.len(),
                    alphabet.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidAutomaton(format!("transition target {t} out of range")));
            }
        }
        Ok(Dfa {
            alphabet,
            delta,
            initial,
            finals,
        })
    }

    /// Canonical automaton of the empty language.
    pub fn empty(alphabet: &Alphabet) -> Dfa {
        Dfa {
            delta: vec![vec![0; alphabet.len()]],
            alphabet: alphabet.clone(),
            initial: 0,
            finals: vec![false],
        }
    }

    /// Canonical automaton of `A*`.
    pub fn universal(alphabet: &Alphabet) -> Dfa {
        let mut d = Dfa::empty(alphabet);
        d.finals[0] = true;
        d
    }

    /// Compiles `text` over `alphabet` into the canonical automaton.
    pub fn from_regex(text: &str, alphabet: &Alphabet) -> Result<Dfa> {
        let r = super::parse_regex(text, alphabet)?;
        compile(&r, alphabet)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn next(&self, q: usize, a: usize) -> usize {
        self.delta[q][a]
    }

    pub fn delta(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn final_states(&self) -> Vec<usize> {
        (0..self.states()).filter(|&q| self.finals[q]).collect()
    }

    pub fn run(&self, from: usize, word: &[usize]) -> usize {
        word.iter().fold(from, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.finals[self.run(self.initial, word)]
    }

    pub fn accepts_str(&self, word: &str) -> Result<bool> {
        Ok(self.accepts(&self.alphabet.word(word)?))
    }

    pub fn is_empty_language(&self) -> bool {
        self.reachable().iter().all(|&q| !self.finals[q])
    }

    /// The same transition structure with another set of accepting states.
    pub fn with_finals(&self, finals: &[usize]) -> Result<Dfa> {
        let mut flags = vec![false; self.states()];
        for &q in finals {
            if q >= self.states() {
                return Err(Error::InvalidAutomaton(format!("state {q} out of range")));
            }
            flags[q] = true;
        }
        Dfa::from_parts(self.alphabet.clone(), self.delta.clone(), self.initial, flags)
    }

    /// Reinterprets the language over `target`, a superset of the current
    /// alphabet (possibly reordered). Words using new symbols are rejected.
    pub fn with_alphabet(&self, target: &Alphabet) -> Result<Dfa> {
        if target == &self.alphabet {
            return Ok(self.clone());
        }
        if !self.alphabet.is_subset_of(target) {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: target.to_string(),
            });
        }
        let sink = self.states();
        let columns: Vec<Option<usize>> = target
            .symbols()
            .iter()
            .map(|&c| self.alphabet.index_of(c))
            .collect();
        let mut delta: Vec<Vec<usize>> = self
            .delta
            .iter()
            .map(|row| columns.iter().map(|col| col.map_or(sink, |a| row[a])).collect())
            .collect();
        delta.push(vec![sink; target.len()]);
        let mut finals = self.finals.clone();
        finals.push(false);
        Ok(Dfa::from_parts(target.clone(), delta, self.initial, finals)?.minimize())
    }

    fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut at = 0;
        while at < order.len() {
            let q = order[at];
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            at += 1;
        }
        order
    }

    /// Minimal automaton in canonical numbering.
    pub fn minimize(&self) -> Dfa {
        let order = self.reachable();
        let mut local = vec![usize::MAX; self.states()];
        for (i, &q) in order.iter().enumerate() {
            local[q] = i;
        }
        let delta: Vec<Vec<usize>> = order
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| local[t]).collect())
            .collect();
        let finals: Vec<bool> = order.iter().map(|&q| self.finals[q]).collect();
        let block_of = hopcroft(&delta, &finals, self.alphabet.len());
        let blocks = block_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; blocks];
        for (q, &b) in block_of.iter().enumerate() {
            if rep[b] == usize::MAX {
                rep[b] = q;
            }
        }
        let quotient_delta: Vec<Vec<usize>> = rep
            .iter()
            .map(|&q| delta[q].iter().map(|&t| block_of[t]).collect())
            .collect();
        let quotient_finals: Vec<bool> = rep.iter().map(|&q| finals[q]).collect();
        let quotient = Dfa {
            alphabet: self.alphabet.clone(),
            delta: quotient_delta,
            initial: block_of[0],
            finals: quotient_finals,
        };
        quotient.renumber()
    }

    /// Breadth-first renumbering from the initial state; drops unreachable states.
    fn renumber(&self) -> Dfa {
        let order = self.reachable();
        let mut id = vec![usize::MAX; self.states()];
        for (i, &q) in order.iter().enumerate() {
            id[q] = i;
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            delta: order
                .iter()
                .map(|&q| self.delta[q].iter().map(|&t| id[t]).collect())
                .collect(),
            initial: 0,
            finals: order.iter().map(|&q| self.finals[q]).collect(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.minimize()
    }

    /// Language equality. Automata over different symbol sets are never equivalent.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        if !self.alphabet.same_symbols(&other.alphabet) {
            return false;
        }
        match other.with_alphabet(&self.alphabet) {
            Ok(o) => self.minimize() == o.minimize(),
            Err(_) => false,
        }
    }

    pub fn to_nfa(&self) -> Nfa {
        let edges = self
            .delta
            .iter()
            .enumerate()
            .flat_map(|(q, row)| row.iter().enumerate().map(move |(a, &t)| (q, a, t)));
        Nfa::new(
            self.alphabet.clone(),
            self.states(),
            edges,
            [self.initial],
            self.final_states(),
        )
        .expect("a valid automaton converts to a valid nfa")
    }

    /// A regular expression for the language. Unary languages get the
    /// `exceptions + tail` form; others go through state elimination.
    pub fn to_regex(&self) -> Regex {
        let m = self.minimize();
        if m.alphabet.len() == 1 {
            return m.unary_regex();
        }
        m.eliminate_states()
    }

    fn unary_regex(&self) -> Regex {
        let a = Regex::symbol(self.alphabet.symbol(0));
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        let mut path = Vec::new();
        let mut q = self.initial;
        while !seen.contains_key(&q) {
            seen.insert(q, path.len());
            path.push(q);
            q = self.delta[q][0];
        }
        let tail = seen[&q];
        let cycle = path.len() - tail;
        let mut parts: Vec<Regex> = (0..tail)
            .filter(|&i| self.finals[path[i]])
            .map(|i| Regex::power(a.clone(), i as u32))
            .collect();
        let cyc = &path[tail..];
        if cyc.iter().all(|&s| self.finals[s]) {
            parts.push(Regex::concat(
                Regex::power(a.clone(), tail as u32),
                Regex::star(a.clone()),
            ));
        } else {
            for (j, &s) in cyc.iter().enumerate() {
                if self.finals[s] {
                    parts.push(Regex::concat(
                        Regex::power(a.clone(), (tail + j) as u32),
                        Regex::star(Regex::power(a.clone(), cycle as u32)),
                    ));
                }
            }
        }
        Regex::union_all(parts)
    }

    fn eliminate_states(&self) -> Regex {
        let n = self.states();
        // states that can reach a final state
        let mut live = self.finals.clone();
        loop {
            let mut changed = false;
            for q in 0..n {
                if !live[q] && self.delta[q].iter().any(|&t| live[t]) {
                    live[q] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if !live[self.initial] {
            return Regex::Empty;
        }
        // generalized automaton: node n is the start, n + 1 the end
        let (start, end) = (n, n + 1);
        let mut label: BTreeMap<(usize, usize), Regex> = BTreeMap::new();
        let add = |label: &mut BTreeMap<(usize, usize), Regex>, p, q, r: Regex| {
            let cur = label.remove(&(p, q)).unwrap_or(Regex::Empty);
            let next = Regex::union(cur, r);
            if next != Regex::Empty {
                label.insert((p, q), next);
            }
        };
        add(&mut label, start, self.initial, Regex::Epsilon);
        for q in (0..n).filter(|&q| live[q]) {
            for (a, &t) in self.delta[q].iter().enumerate() {
                if live[t] {
                    add(&mut label, q, t, Regex::symbol(self.alphabet.symbol(a)));
                }
            }
            if self.finals[q] {
                add(&mut label, q, end, Regex::Epsilon);
            }
        }
        let mut remaining: Vec<usize> = (0..n).filter(|&q| live[q]).collect();
        while !remaining.is_empty() {
            // eliminate the state with the fewest in * out edges
            let (pos, &s) = remaining
                .iter()
                .enumerate()
                .min_by_key(|(_, &s)| {
                    let ins = label.keys().filter(|&&(p, q)| q == s && p != s).count();
                    let outs = label.keys().filter(|&&(p, q)| p == s && q != s).count();
                    (ins * outs, s)
                })
                .expect("nonempty");
            remaining.remove(pos);
            let loop_re = label.remove(&(s, s)).map_or(Regex::Epsilon, Regex::star);
            let ins: Vec<(usize, Regex)> = label
                .iter()
                .filter(|(&(_, q), _)| q == s)
                .map(|(&(p, _), r)| (p, r.clone()))
                .collect();
            let outs: Vec<(usize, Regex)> = label
                .iter()
                .filter(|(&(p, _), _)| p == s)
                .map(|(&(_, q), r)| (q, r.clone()))
                .collect();
            label.retain(|&(p, q), _| p != s && q != s);
            for (p, rin) in &ins {
                for (q, rout) in &outs {
                    let r = Regex::concat_all([rin.clone(), loop_re.clone(), rout.clone()]);
                    add(&mut label, *p, *q, r);
                }
            }
        }
        label.remove(&(start, end)).unwrap_or(Regex::Empty)
    }

    pub fn to_json(&self) -> DfaJson {
        DfaJson {
            alphabet: self.alphabet.symbols().iter().map(|c| c.to_string()).collect(),
            states: self.states(),
            initial: self.initial,
            finals: self.final_states(),
            delta: self.delta.clone(),
        }
    }

    pub fn from_json(json: &DfaJson) -> Result<Dfa> {
        let mut symbols = Vec::with_capacity(json.alphabet.len());
        for s in &json.alphabet {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => symbols.push(c),
                _ => return Err(Error::InvalidAlphabet(format!("'{s}' is not a single symbol"))),
            }
        }
        let alphabet = Alphabet::new(symbols)?;
        if json.delta.len() != json.states {
            return Err(Error::InvalidAutomaton(format!(
                "{} rows for {} states",
                json.delta.len(),
                json.states
            )));
        }
        let mut finals = vec![false; json.states];
        for &q in &json.finals {
            if q >= json.states {
                return Err(Error::InvalidAutomaton(format!("final state {q} out of range")));
            }
            finals[q] = true;
        }
        Dfa::from_parts(alphabet, json.delta.clone(), json.initial, finals)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n");
        out.push_str("  start [shape=point];\n");
        for q in 0..self.states() {
            let shape = if self.finals[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {q} [shape={shape}];");
        }
        let _ = writeln!(out, "  start -> {};", self.initial);
        for (q, row) in self.delta.iter().enumerate() {
            let mut grouped: BTreeMap<usize, Vec<char>> = BTreeMap::new();
            for (a, &t) in row.iter().enumerate() {
                grouped.entry(t).or_default().push(self.alphabet.symbol(a));
            }
            for (t, syms) in grouped {
                let label: Vec<String> = syms.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "  {q} -> {t} [label=\"{}\"];", label.join(","));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Serialized form: `{alphabet, states, initial, finals, delta}` with one
/// `delta` row per state and one column per symbol index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaJson {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub delta: Vec<Vec<usize>>,
}

/// Compiles a regex into the canonical automaton, using the global state cap.
pub fn compile(regex: &Regex, alphabet: &Alphabet) -> Result<Dfa> {
    compile_with_cap(regex, alphabet, Limits::global().state_cap)
}

pub fn compile_with_cap(regex: &Regex, alphabet: &Alphabet, cap: usize) -> Result<Dfa> {
    let nfa = Nfa::glushkov(regex, alphabet, cap)?;
    Ok(nfa.determinize(cap)?.minimize())
}

/// Hopcroft partition refinement; returns the block index of every state.
fn hopcroft(delta: &[Vec<usize>], finals: &[bool], k: usize) -> Vec<usize> {
    let n = delta.len();
    let mut inverse: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; k];
    for (p, row) in delta.iter().enumerate() {
        for (a, &q) in row.iter().enumerate() {
            inverse[a][q].push(p);
        }
    }
    let (accepting, rejecting): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| finals[q]);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![0; n];
    for group in [accepting, rejecting] {
        if !group.is_empty() {
            for &q in &group {
                block_of[q] = blocks.len();
            }
            blocks.push(group);
        }
    }
    let mut pending: Vec<Vec<bool>> = vec![vec![false; k]; blocks.len()];
    let mut work: VecDeque<(usize, usize)> = VecDeque::new();
    if blocks.len() == 2 {
        let smaller = usize::from(blocks[1].len() < blocks[0].len());
        for a in 0..k {
            pending[smaller][a] = true;
            work.push_back((smaller, a));
        }
    }
    let mut marked = vec![false; n];
    let mut hits = vec![0usize; blocks.len()];
    while let Some((b, a)) = work.pop_front() {
        pending[b][a] = false;
        let mut pre = Vec::new();
        for &q in &blocks[b] {
            for &p in &inverse[a][q] {
                if !marked[p] {
                    marked[p] = true;
                    pre.push(p);
                }
            }
        }
        let mut touched = Vec::new();
        for &p in &pre {
            let y = block_of[p];
            if hits[y] == 0 {
                touched.push(y);
            }
            hits[y] += 1;
        }
        for y in touched {
            let count = std::mem::take(&mut hits[y]);
            if count == blocks[y].len() {
                continue;
            }
            let (inside, outside): (Vec<usize>, Vec<usize>) =
                blocks[y].iter().partition(|&&q| marked[q]);
            let nb = blocks.len();
            for &q in &inside {
                block_of[q] = nb;
            }
            blocks[y] = outside;
            blocks.push(inside);
            pending.push(vec![false; k]);
            hits.push(0);
            for c in 0..k {
                if pending[y][c] {
                    pending[nb][c] = true;
                    work.push_back((nb, c));
                } else {
                    let s = if blocks[nb].len() <= blocks[y].len() { nb } else { y };
                    pending[s][c] = true;
                    work.push_back((s, c));
                }
            }
        }
        for &p in &pre {
            marked[p] = false;
        }
    }
    block_of
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unary() -> Alphabet {
        Alphabet::parse("a").unwrap()
    }

    fn chain(d: &Dfa) -> Vec<usize> {
        (0..d.states()).map(|q| d.next(q, 0)).collect()
    }

    #[test]
    fn cycle_example_compiles_to_tail_cycle() {
        let d = Dfa::from_regex("a + (a^3 + a^4)(a^7)*", &unary()).unwrap();
        assert_eq!(d.states(), 9);
        assert_eq!(chain(&d), vec![1, 2, 3, 4, 5, 6, 7, 8, 2]);
        assert_eq!(d.final_states(), vec![1, 3, 4]);
    }

    #[test]
    fn tail_example_compiles_to_chain() {
        let d = Dfa::from_regex("a + a^6 a*", &unary()).unwrap();
        assert_eq!(d.states(), 7);
        assert_eq!(chain(&d), vec![1, 2, 3, 4, 5, 6, 6]);
        assert_eq!(d.final_states(), vec![1, 6]);
        // frozen from direct enumeration of a^0..a^10
        let members: Vec<usize> = (0..=10)
            .filter(|&n| d.accepts(&vec![0; n]))
            .collect();
        assert_eq!(members, vec![1, 6, 7, 8, 9, 10]);
    }

    #[test]
    fn empty_language_has_one_state() {
        let d = Dfa::from_regex("0", &unary()).unwrap();
        assert_eq!(d, Dfa::empty(&unary()));
        assert_eq!(d.states(), 1);
        assert!(d.final_states().is_empty());
        let ab = Alphabet::parse("ab").unwrap();
        assert_eq!(Dfa::from_regex("a0b", &ab).unwrap().states(), 1);
    }

    #[test]
    fn minimization_merges_equivalent_states() {
        // odd number of a's, with redundant states
        let ab = Alphabet::parse("ab").unwrap();
        let d = Dfa::from_parts(
            ab.clone(),
            vec![vec![1, 0], vec![2, 1], vec![3, 2], vec![0, 3]],
            0,
            vec![false, true, false, true],
        )
        .unwrap();
        let m = d.minimize();
        assert_eq!(m.states(), 2);
        assert_eq!(m, m.minimize());
        assert!(m.equivalent(&Dfa::from_regex("b*a(b + ab*a)*", &ab).unwrap()));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let d = Dfa::from_regex("a + a^6 a*", &unary()).unwrap();
        let text = serde_json::to_string(&d.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"alphabet":["a"],"states":7,"initial":0,"finals":[1,6],"delta":[[1],[2],[3],[4],[5],[6],[6]]}"#
        );
        let back: DfaJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Dfa::from_json(&back).unwrap(), d);
        let bad = DfaJson {
            alphabet: vec!["a".into()],
            states: 1,
            initial: 0,
            finals: vec![],
            delta: vec![vec![3]],
        };
        assert!(matches!(Dfa::from_json(&bad), Err(Error::InvalidAutomaton(_))));
    }

    #[test]
    fn state_cap_is_enforced() {
        let ab = Alphabet::parse("ab").unwrap();
        let r = super::super::parse_regex("(a + b)*a(a + b)^12", &ab).unwrap();
        assert_eq!(compile_with_cap(&r, &ab, 1000), Err(Error::StateCap { cap: 1000 }));
        assert!(compile_with_cap(&r, &ab, 10_000).is_ok());
    }

    #[test]
    fn unary_regex_rendering() {
        let a = unary();
        let show = |t: &str| Dfa::from_regex(t, &a).unwrap().to_regex().to_string();
        assert_eq!(show("a + a^6 a*"), "a + a^6 a*");
        assert_eq!(show("1 + a"), "1 + a");
        assert_eq!(show("0"), "0");
        assert_eq!(show("a*"), "a*");
        assert_eq!(show("a(a^7)*"), "a(a^7)*");
    }

    #[test]
    fn state_elimination_preserves_language() {
        let ab = Alphabet::parse("ab").unwrap();
        for text in ["(ab)*", "a*b*", "(a + b)*a(a + b)", "1", "0", "(aa)*(b + bbb)"] {
            let d = Dfa::from_regex(text, &ab).unwrap();
            let r = d.to_regex();
            let back = compile(&r, &ab).unwrap();
            assert_eq!(back, d, "{text} -> {r}");
        }
    }

    #[test]
    fn dot_lists_every_state() {
        let d = Dfa::from_regex("1 + a", &unary()).unwrap();
        let dot = d.to_dot();
        assert!(dot.contains("1 [shape=doublecircle]"));
        assert!(dot.contains("2 -> 2 [label=\"a\"]"));
    }
}
