use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lang::{Alphabet, Dfa};
use crate::limits::Limits;

use super::OrderedMonoid;

/// A monoid morphism from the free monoid on `alphabet`, given by letter images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stamp {
    alphabet: Alphabet,
    target: OrderedMonoid,
    images: Vec<usize>,
    surjective: bool,
}

impl Stamp {
    pub fn new(alphabet: Alphabet, target: OrderedMonoid, images: Vec<usize>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} images for {} letters",
                images.len(),
                alphabet.len()
            )));
        }
        if let Some(&x) = images.iter().find(|&&x| x >= target.size()) {
            return Err(Error::InvalidMorphism(format!("image {x} is not an element")));
        }
        let surjective = target.submonoid_generated(&images).len() == target.size();
        Ok(Stamp {
            alphabet,
            target,
            images,
            surjective,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn target(&self) -> &OrderedMonoid {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn eval(&self, word: &[usize]) -> usize {
        self.target.product(word.iter().map(|&a| self.images[a]))
    }

    /// The language `η⁻¹(P)` for a set of elements `P`.
    pub fn preimage(&self, elements: &[usize]) -> Dfa {
        let m = &self.target;
        let delta = (0..m.size())
            .map(|x| self.images.iter().map(|&g| m.mul(x, g)).collect())
            .collect();
        let mut finals = vec![false; m.size()];
        for &x in elements {
            finals[x] = true;
        }
        Dfa::from_parts(self.alphabet.clone(), delta, m.identity(), finals)
            .expect("cayley automaton is complete")
            .minimize()
    }
}

/// The syntactic stamp of a language together with the data it was computed from.
#[derive(Debug, Clone)]
pub struct SyntacticData {
    dfa: Dfa,
    stamp: Stamp,
    image: Vec<usize>,
    transformations: Vec<Vec<u32>>,
    words: Vec<Vec<usize>>,
}

impl SyntacticData {
    /// The minimal automaton the monoid acts on.
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn stamp(&self) -> &Stamp {
        &self.stamp
    }

    pub fn monoid(&self) -> &OrderedMonoid {
        &self.stamp.target
    }

    /// Elements whose preimage lies in the language.
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn in_image(&self, x: usize) -> bool {
        self.image.binary_search(&x).is_ok()
    }

    /// State map of element `x`.
    pub fn transformation(&self, x: usize) -> &[u32] {
        &self.transformations[x]
    }

    /// Shortlex-least word representing `x`.
    pub fn word(&self, x: usize) -> &[usize] {
        &self.words[x]
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }
}

/// Name of a word with runs compressed: `aab` becomes `a^2b`, the empty word `1`.
pub fn word_name(alphabet: &Alphabet, word: &[usize]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        out.push(alphabet.symbol(word[i]));
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

/// Transition monoid of the minimal automaton of `dfa`, ordered by equality.
///
/// Elements are numbered by their shortlex-least representative, so the
/// identity is element 0.
pub fn transition_monoid(dfa: &Dfa) -> Result<SyntacticData> {
    transition_monoid_with_cap(dfa, Limits::global().monoid_cap)
}

pub fn transition_monoid_with_cap(dfa: &Dfa, cap: usize) -> Result<SyntacticData> {
    let dfa = dfa.minimize();
    let (s, k) = (dfa.states(), dfa.alphabet().len());
    let identity: Vec<u32> = (0..s as u32).collect();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![identity];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut at = 0;
    while at < elements.len() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next: Vec<u32> = elements[at]
                .iter()
                .map(|&q| dfa.next(q as usize, a) as u32)
                .collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = elements.len();
                    if id >= cap {
                        return Err(Error::MonoidCap { cap });
                    }
                    index.insert(next.clone(), id);
                    elements.push(next);
                    let mut w = words[at].clone();
                    w.push(a);
                    words.push(w);
                    parent.push((at, a));
                    id
                }
            };
            row.push(id);
        }
        right.push(row);
        at += 1;
    }
    let n = elements.len();
    // x * y = (x * parent(y)) * last letter of y, filled in breadth-first order of y
    let mut mult = vec![0u32; n * n];
    for x in 0..n {
        mult[x * n] = x as u32;
        for y in 1..n {
            let (py, a) = parent[y];
            mult[x * n + y] = right[mult[x * n + py] as usize][a] as u32;
        }
    }
    let leq = (0..n * n).map(|i| i / n == i % n).collect();
    let names = words.iter().map(|w| word_name(dfa.alphabet(), w)).collect();
    let monoid = OrderedMonoid::from_raw(n, mult, 0, leq, names);
    let images = (0..k).map(|a| right[0][a]).collect();
    let image = (0..n)
        .filter(|&x| dfa.is_final(elements[x][dfa.initial()] as usize))
        .collect();
    let stamp = Stamp::new(dfa.alphabet().clone(), monoid, images)?;
    Ok(SyntacticData {
        dfa,
        stamp,
        image,
        transformations: elements,
        words,
    })
}

/// `incl[s][t]` iff the residual language of `s` is contained in that of `t`.
fn residual_inclusion(dfa: &Dfa) -> Vec<bool> {
    let s = dfa.states();
    let mut incl: Vec<bool> = (0..s * s)
        .map(|i| !dfa.is_final(i / s) || dfa.is_final(i % s))
        .collect();
    loop {
        let mut changed = false;
        for p in 0..s {
            for q in 0..s {
                if incl[p * s + q]
                    && (0..dfa.alphabet().len())
                        .any(|a| !incl[dfa.next(p, a) * s + dfa.next(q, a)])
                {
                    incl[p * s + q] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return incl;
        }
    }
}

/// The syntactic order: `u <= v` iff every context putting `u` in the
/// language also puts `v` in it.
pub fn syntactic_order(data: &SyntacticData) -> OrderedMonoid {
    syntactic_order_with(data, Exec::default())
}

pub fn syntactic_order_with(data: &SyntacticData, exec: Exec) -> OrderedMonoid {
    let dfa = &data.dfa;
    let s = dfa.states();
    let incl = residual_inclusion(dfa);
    let m = data.monoid();
    let n = m.size();
    let t = &data.transformations;
    // every state is reachable, so contexts xuy range over (state, suffix)
    let rows: Vec<Vec<bool>> = exec.map(n, |u| {
        (0..n)
            .map(|v| (0..s).all(|q| incl[t[u][q] as usize * s + t[v][q] as usize]))
            .collect()
    });
    let mult = (0..n)
        .flat_map(|x| (0..n).map(move |y| m.mul(x, y) as u32))
        .collect();
    OrderedMonoid::from_raw(n, mult, m.identity(), rows.concat(), m.names().to_vec())
}

/// Syntactic ordered monoid, syntactic stamp and syntactic image of a language.
pub fn syntactic_monoid(dfa: &Dfa) -> Result<SyntacticData> {
    syntactic_monoid_with(dfa, Exec::default())
}

pub fn syntactic_monoid_with(dfa: &Dfa, exec: Exec) -> Result<SyntacticData> {
    let mut data = transition_monoid(dfa)?;
    let ordered = syntactic_order_with(&data, exec);
    data.stamp.target = ordered;
    Ok(data)
}

/// The stamp `a -> (φ₁(a), φ₂(a))` onto the submonoid of the product it generates.
pub fn restricted_product(s1: &Stamp, s2: &Stamp) -> Result<Stamp> {
    restricted_product_with_cap(s1, s2, Limits::global().monoid_cap)
}

pub fn restricted_product_with_cap(s1: &Stamp, s2: &Stamp, cap: usize) -> Result<Stamp> {
    let alphabet = s1.alphabet();
    if !alphabet.same_symbols(s2.alphabet()) {
        return Err(Error::AlphabetMismatch {
            left: alphabet.to_string(),
            right: s2.alphabet().to_string(),
        });
    }
    let (m1, m2) = (s1.target(), s2.target());
    let gens: Vec<(usize, usize)> = alphabet
        .symbols()
        .iter()
        .enumerate()
        .map(|(a, &c)| {
            let b = s2.alphabet().index_of(c).expect("same symbols");
            (s1.image(a), s2.image(b))
        })
        .collect();
    let one = (m1.identity(), m2.identity());
    let mut index: HashMap<(usize, usize), usize> = HashMap::from([(one, 0)]);
    let mut elements = vec![one];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut at = 0;
    while at < elements.len() {
        let (x, y) = elements[at];
        for (a, &(g, h)) in gens.iter().enumerate() {
            let next = (m1.mul(x, g), m2.mul(y, h));
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(Error::MonoidCap { cap });
                }
                index.insert(next, elements.len());
                elements.push(next);
                let mut w = words[at].clone();
                w.push(a);
                words.push(w);
            }
        }
        at += 1;
    }
    let n = elements.len();
    let mut mult = Vec::with_capacity(n * n);
    let mut leq = Vec::with_capacity(n * n);
    for &(x1, y1) in &elements {
        for &(x2, y2) in &elements {
            mult.push(index[&(m1.mul(x1, x2), m2.mul(y1, y2))] as u32);
            leq.push(m1.leq(x1, x2) && m2.leq(y1, y2));
        }
    }
    let names = words.iter().map(|w| word_name(alphabet, w)).collect();
    let target = OrderedMonoid::from_raw(n, mult, 0, leq, names);
    let images = gens.iter().map(|p| index[p]).collect();
    Stamp::new(alphabet.clone(), target, images)
}
