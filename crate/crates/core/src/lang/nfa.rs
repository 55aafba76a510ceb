use std::collections::{BTreeSet, HashMap};

use super::{Alphabet, Dfa, Regex};
use crate::error::{Error, Result};

/// A nondeterministic automaton without empty-word transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    /// `transitions[state][symbol]` is a sorted list of successors.
    transitions: Vec<Vec<Vec<usize>>>,
    initial: Vec<usize>,
    finals: Vec<bool>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        edges: impl IntoIterator<Item = (usize, usize, usize)>,
        initial: impl IntoIterator<Item = usize>,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let k = alphabet.len();
        let mut transitions = vec![vec![Vec::new(); k]; states];
        for (p, a, q) in edges {
            if p >= states || q >= states || a >= k {
                return Err(Error::InvalidAutomaton(format!(
                    "transition ({p}, {a}, {q}) out of range"
                )));
            }
            transitions[p][a].push(q);
        }
        for row in &mut transitions {
            for succ in row.iter_mut() {
                succ.sort_unstable();
                succ.dedup();
            }
        }
        let mut init: Vec<usize> = initial.into_iter().collect();
        init.sort_unstable();
        init.dedup();
        let mut is_final = vec![false; states];
        for q in finals {
            if q >= states {
                return Err(Error::InvalidAutomaton(format!("state {q} out of range")));
            }
            is_final[q] = true;
        }
        if let Some(&q) = init.iter().find(|&&q| q >= states) {
            return Err(Error::InvalidAutomaton(format!("state {q} out of range")));
        }
        Ok(Nfa {
            alphabet,
            transitions,
            initial: init,
            finals: is_final,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn successors(&self, q: usize, a: usize) -> &[usize] {
        &self.transitions[q][a]
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut current: BTreeSet<usize> = self.initial.iter().copied().collect();
        for &a in word {
            current = current
                .iter()
                .flat_map(|&q| self.transitions[q][a].iter().copied())
                .collect();
        }
        current.iter().any(|&q| self.finals[q])
    }

    /// Position automaton of `regex`; `alphabet` must contain every symbol used.
    pub fn glushkov(regex: &Regex, alphabet: &Alphabet, cap: usize) -> Result<Self> {
        if regex.expanded_width() >= cap as u64 {
            return Err(Error::StateCap { cap });
        }
        let mut g = Glushkov {
            alphabet,
            positions: Vec::new(),
            follow: Vec::new(),
        };
        let info = g.visit(regex)?;
        let states = g.positions.len() + 1;
        let mut edges = Vec::new();
        for &p in &info.first {
            edges.push((0, g.positions[p], p + 1));
        }
        for (p, follows) in g.follow.iter().enumerate() {
            for &q in follows {
                edges.push((p + 1, g.positions[q], q + 1));
            }
        }
        let mut finals: Vec<usize> = info.last.iter().map(|&p| p + 1).collect();
        if info.nullable {
            finals.push(0);
        }
        Nfa::new(alphabet.clone(), states, edges, [0], finals)
    }

    /// Subset construction; the result is complete but not minimized.
    pub fn determinize(&self, cap: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = vec![self.initial.clone()];
        index.insert(self.initial.clone(), 0);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut mark = vec![false; self.states()];
        let mut at = 0;
        while at < subsets.len() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let mut next = Vec::new();
                for &q in &subsets[at] {
                    for &r in &self.transitions[q][a] {
                        if !mark[r] {
                            mark[r] = true;
                            next.push(r);
                        }
                    }
                }
                for &r in &next {
                    mark[r] = false;
                }
                next.sort_unstable();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        if id >= cap {
                            return Err(Error::StateCap { cap });
                        }
                        index.insert(next.clone(), id);
                        subsets.push(next);
                        id
                    }
                };
                row.push(id);
            }
            delta.push(row);
            at += 1;
        }
        let finals = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.finals[q]))
            .collect();
        Dfa::from_parts(self.alphabet.clone(), delta, 0, finals)
    }
}

struct Glushkov<'a> {
    alphabet: &'a Alphabet,
    /// Symbol index of each position.
    positions: Vec<usize>,
    follow: Vec<BTreeSet<usize>>,
}

struct PosInfo {
    nullable: bool,
    first: BTreeSet<usize>,
    last: BTreeSet<usize>,
}

impl Glushkov<'_> {
    fn visit(&mut self, r: &Regex) -> Result<PosInfo> {
        Ok(match r {
            Regex::Empty => PosInfo {
                nullable: false,
                first: BTreeSet::new(),
                last: BTreeSet::new(),
            },
            Regex::Epsilon => PosInfo {
                nullable: true,
                first: BTreeSet::new(),
                last: BTreeSet::new(),
            },
            Regex::Symbol(c) => {
                let a = self
                    .alphabet
                    .index_of(*c)
                    .ok_or(Error::UnknownSymbol { symbol: *c, pos: 0 })?;
                let p = self.positions.len();
                self.positions.push(a);
                self.follow.push(BTreeSet::new());
                PosInfo {
                    nullable: false,
                    first: [p].into(),
                    last: [p].into(),
                }
            }
            Regex::Union(a, b) => {
                let x = self.visit(a)?;
                let y = self.visit(b)?;
                PosInfo {
                    nullable: x.nullable || y.nullable,
                    first: &x.first | &y.first,
                    last: &x.last | &y.last,
                }
            }
            Regex::Concat(a, b) => {
                let x = self.visit(a)?;
                let y = self.visit(b)?;
                self.link(&x.last, &y.first);
                PosInfo {
                    nullable: x.nullable && y.nullable,
                    first: if x.nullable { &x.first | &y.first } else { x.first },
                    last: if y.nullable { &x.last | &y.last } else { y.last },
                }
            }
            Regex::Star(a) => {
                let x = self.visit(a)?;
                self.link(&x.last, &x.first);
                PosInfo {
                    nullable: true,
                    first: x.first,
                    last: x.last,
                }
            }
            Regex::Power(a, k) => {
                let mut acc = self.visit(&Regex::Epsilon)?;
                for _ in 0..*k {
                    let y = self.visit(a)?;
                    self.link(&acc.last, &y.first);
                    acc = PosInfo {
                        nullable: acc.nullable && y.nullable,
                        first: if acc.nullable { &acc.first | &y.first } else { acc.first },
                        last: if y.nullable { &acc.last | &y.last } else { y.last },
                    };
                }
                acc
            }
        })
    }

    fn link(&mut self, from: &BTreeSet<usize>, to: &BTreeSet<usize>) {
        for &p in from {
            self.follow[p].extend(to.iter().copied());
        }
    }
}
