use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lang::{Alphabet, Dfa};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureOp {
    Union,
    Intersect,
    Complement,
    LeftQuotient,
    RightQuotient,
}

impl ClosureOp {
    pub const ALL: [ClosureOp; 5] = [
        ClosureOp::Union,
        ClosureOp::Intersect,
        ClosureOp::Complement,
        ClosureOp::LeftQuotient,
        ClosureOp::RightQuotient,
    ];

    /// Union, intersection and both quotients.
    pub const LATTICE: [ClosureOp; 4] = [
        ClosureOp::Union,
        ClosureOp::Intersect,
        ClosureOp::LeftQuotient,
        ClosureOp::RightQuotient,
    ];
}

impl fmt::Display for ClosureOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureOp::Union => "union",
            ClosureOp::Intersect => "intersect",
            ClosureOp::Complement => "complement",
            ClosureOp::LeftQuotient => "left_quotient",
            ClosureOp::RightQuotient => "right_quotient",
        })
    }
}

impl FromStr for ClosureOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosureOp::ALL
            .into_iter()
            .find(|op| op.to_string() == s.trim())
            .ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: format!("unknown closure operation '{s}'"),
            })
    }
}

/// A finite family of languages closed under a set of operations.
#[derive(Debug, Clone)]
pub struct ClosureFamily {
    alphabet: Alphabet,
    members: Vec<Dfa>,
    generators: Vec<Dfa>,
    ops: Vec<ClosureOp>,
}

impl ClosureFamily {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Canonical automata of the members, sorted.
    pub fn members(&self) -> &[Dfa] {
        &self.members
    }

    pub fn generators(&self) -> &[Dfa] {
        &self.generators
    }

    pub fn ops(&self) -> &[ClosureOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, lang: &Dfa) -> bool {
        let canonical = match lang.with_alphabet(&self.alphabet) {
            Ok(d) => d.minimize(),
            Err(_) => return false,
        };
        self.members.binary_search(&canonical).is_ok()
    }

    /// One-step check: every declared operation applied to members yields a member.
    pub fn is_closed_under(&self, op: ClosureOp) -> bool {
        let set: HashSet<&Dfa> = self.members.iter().collect();
        let k = self.alphabet.len();
        let ms = &self.members;
        match op {
            ClosureOp::Union => ms.iter().all(|f| {
                ms.iter().all(|g| set.contains(&f.union(g).expect("same alphabet")))
            }),
            ClosureOp::Intersect => ms.iter().all(|f| {
                ms.iter().all(|g| set.contains(&f.intersect(g).expect("same alphabet")))
            }),
            ClosureOp::Complement => ms.iter().all(|f| set.contains(&f.complement())),
            ClosureOp::LeftQuotient => {
                ms.iter().all(|f| (0..k).all(|a| set.contains(&f.left_quotient(&[a]))))
            }
            ClosureOp::RightQuotient => {
                ms.iter().all(|f| (0..k).all(|a| set.contains(&f.right_quotient(&[a]))))
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.ops.iter().all(|&op| self.is_closed_under(op))
    }
}

/// Least family containing `gens`, `∅` and `A*` closed under `ops`, with
/// quotients by single letters.
pub fn lattice_closure(gens: &[Dfa], ops: &[ClosureOp]) -> Result<ClosureFamily> {
    lattice_closure_with(gens, ops, Exec::default(), Limits::global().family_cap)
}

/// Breadth-first by generation. Within a generation the candidate results
/// (unions, then intersections, then complements, then quotients) are
/// computed with `exec` and merged in that fixed order, so the outcome does
/// not depend on the execution strategy.
pub fn lattice_closure_with(
    gens: &[Dfa],
    ops: &[ClosureOp],
    exec: Exec,
    cap: usize,
) -> Result<ClosureFamily> {
    let alphabet = match gens.first() {
        Some(g) => g.alphabet().clone(),
        None => return Err(Error::InvalidAutomaton("at least one generator is required".into())),
    };
    let mut canonical_gens = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.alphabet().same_symbols(&alphabet) {
            return Err(Error::AlphabetMismatch {
                left: alphabet.to_string(),
                right: g.alphabet().to_string(),
            });
        }
        canonical_gens.push(g.with_alphabet(&alphabet)?.minimize());
    }
    let mut ops: Vec<ClosureOp> = ops.to_vec();
    ops.sort();
    ops.dedup();

    let mut members: Vec<Dfa> = Vec::new();
    let mut seen: HashSet<Dfa> = HashSet::new();
    let mut frontier: Vec<Dfa> = Vec::new();
    let seeds = [Dfa::empty(&alphabet), Dfa::universal(&alphabet)];
    for d in seeds.into_iter().chain(canonical_gens.iter().cloned()) {
        if seen.insert(d.clone()) {
            frontier.push(d);
        }
    }
    if seen.len() > cap {
        return Err(Error::FamilyCap { cap });
    }
    let k = alphabet.len();
    while !frontier.is_empty() {
        let old = members.len();
        members.extend(frontier.iter().cloned());
        // pairs with at least one side in the frontier
        let pairs: Vec<(usize, usize)> = (old..members.len())
            .flat_map(|j| (0..=j).map(move |i| (i, j)))
            .collect();
        let mut tasks: Vec<(ClosureOp, usize, usize)> = Vec::new();
        for &op in &ops {
            match op {
                ClosureOp::Union | ClosureOp::Intersect => {
                    tasks.extend(pairs.iter().map(|&(i, j)| (op, i, j)))
                }
                ClosureOp::Complement => tasks.extend((old..members.len()).map(|i| (op, i, 0))),
                ClosureOp::LeftQuotient | ClosureOp::RightQuotient => tasks.extend(
                    (old..members.len()).flat_map(|i| (0..k).map(move |a| (op, i, a))),
                ),
            }
        }
        let results: Vec<Dfa> = exec.map(tasks.len(), |t| {
            let (op, i, j) = tasks[t];
            let f = &members[i];
            match op {
                ClosureOp::Union => f.union(&members[j]).expect("same alphabet"),
                ClosureOp::Intersect => f.intersect(&members[j]).expect("same alphabet"),
                ClosureOp::Complement => f.complement(),
                ClosureOp::LeftQuotient => f.left_quotient(&[j]),
                ClosureOp::RightQuotient => f.right_quotient(&[j]),
            }
        });
        frontier = Vec::new();
        for d in results {
            if !seen.contains(&d) {
                seen.insert(d.clone());
                frontier.push(d);
                if seen.len() > cap {
                    return Err(Error::FamilyCap { cap });
                }
            }
        }
    }
    members.sort();
    Ok(ClosureFamily {
        alphabet,
        members,
        generators: canonical_gens,
        ops,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unary(text: &str) -> Dfa {
        Dfa::from_regex(text, &Alphabet::parse("a").unwrap()).unwrap()
    }

    #[test]
    fn one_plus_a_family() {
        let fam = lattice_closure(&[unary("1 + a")], &ClosureOp::LATTICE).unwrap();
        assert_eq!(fam.len(), 4);
        for text in ["0", "1", "1 + a", "a*"] {
            assert!(fam.contains(&unary(text)), "{text}");
        }
        assert!(fam.is_closed());
    }

    #[test]
    fn complement_adds_members() {
        let fam = lattice_closure(&[unary("1 + a")], &ClosureOp::ALL).unwrap();
        assert!(fam.contains(&unary("aa a*")));
        assert!(fam.is_closed());
        assert!(fam.is_closed_under(ClosureOp::Complement));
    }

    #[test]
    fn cap_and_mismatch() {
        let gens = [unary("a + a^6 a*")];
        assert_eq!(
            lattice_closure_with(&gens, &ClosureOp::LATTICE, Exec::Sequential, 5).unwrap_err(),
            Error::FamilyCap { cap: 5 }
        );
        let other = Dfa::from_regex("b", &Alphabet::parse("ab").unwrap()).unwrap();
        assert!(lattice_closure(&[gens[0].clone(), other], &ClosureOp::LATTICE).is_err());
        assert_eq!("left_quotient".parse::<ClosureOp>().unwrap(), ClosureOp::LeftQuotient);
        assert!("concat".parse::<ClosureOp>().is_err());
    }

    #[test]
    fn strategies_agree() {
        let gens = [unary("a + a^6 a*")];
        let a = lattice_closure_with(&gens, &ClosureOp::LATTICE, Exec::Sequential, 1000).unwrap();
        let b = lattice_closure_with(&gens, &ClosureOp::LATTICE, Exec::Parallel, 1000).unwrap();
        assert_eq!(a.members(), b.members());
    }
}
