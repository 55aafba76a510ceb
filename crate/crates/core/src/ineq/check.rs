use serde::Serialize;

use super::{Exponent, Inequality, OmegaTerm, Relation};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::limits::Limits;
use crate::monoid::{OrderedMonoid, Stamp};

/// Which assignments of variables are quantified over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every element of the monoid.
    Monoid,
    /// Images of letters only.
    Lp,
    /// Images of letters and the identity.
    Ld,
}

/// A failing assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Vec<(char, usize)>,
    pub lhs: usize,
    pub rhs: usize,
    /// True when the failing direction is `rhs <= lhs` of an equation.
    pub reversed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

/// Value of `term` when each variable `vars[i]` is sent to `values[i]`.
pub fn eval_term(
    term: &OmegaTerm,
    m: &OrderedMonoid,
    assignment: &[(char, usize)],
) -> Result<usize> {
    let mut acc = m.identity();
    for &(x, e) in &term.factors {
        let v = assignment
            .iter()
            .find(|(y, _)| *y == x)
            .map(|&(_, v)| v)
            .ok_or(Error::UnassignedVariable(x))?;
        acc = m.mul(acc, power(m, v, e));
    }
    Ok(acc)
}

fn power(m: &OrderedMonoid, x: usize, e: Exponent) -> usize {
    match e {
        Exponent::Finite(k) => m.pow(x, k as usize),
        Exponent::OmegaPlus(k) => m.mul(m.omega(x), m.pow(x, k as usize)),
    }
}

/// Does `m` satisfy `ineq` for every assignment of its variables?
pub fn satisfies(m: &OrderedMonoid, ineq: &Inequality) -> bool {
    check(m, ineq).map(|v| v.holds).unwrap_or(false)
}

pub fn check(m: &OrderedMonoid, ineq: &Inequality) -> Result<Verdict> {
    check_with(m, ineq, Exec::default())
}

pub fn check_with(m: &OrderedMonoid, ineq: &Inequality, exec: Exec) -> Result<Verdict> {
    let all: Vec<usize> = (0..m.size()).collect();
    check_over(m, ineq, &all, exec)
}

/// Satisfaction by a stamp: assignments range over the elements selected by `mode`.
pub fn stamp_check(stamp: &Stamp, ineq: &Inequality, mode: Mode) -> Result<Verdict> {
    stamp_check_with(stamp, ineq, mode, Exec::default())
}

pub fn stamp_check_with(stamp: &Stamp, ineq: &Inequality, mode: Mode, exec: Exec) -> Result<Verdict> {
    let m = stamp.target();
    let mut values: Vec<usize> = match mode {
        Mode::Monoid => (0..m.size()).collect(),
        Mode::Lp => stamp.images().to_vec(),
        Mode::Ld => {
            let mut v = stamp.images().to_vec();
            v.push(m.identity());
            v
        }
    };
    values.sort_unstable();
    values.dedup();
    check_over(m, ineq, &values, exec)
}

pub fn stamp_satisfies(stamp: &Stamp, ineq: &Inequality, mode: Mode) -> bool {
    stamp_check(stamp, ineq, mode).map(|v| v.holds).unwrap_or(false)
}

/// Exhaustive check over `values^vars`. The counterexample is the first
/// failing assignment in lexicographic order, with the first variable most
/// significant, so it does not depend on the execution strategy.
fn check_over(m: &OrderedMonoid, ineq: &Inequality, values: &[usize], exec: Exec) -> Result<Verdict> {
    let vars = ineq.variables();
    let max = Limits::global().max_variables;
    if vars.len() > max {
        return Err(Error::TooManyVariables {
            count: vars.len(),
            max,
        });
    }
    let base = values.len() as u64;
    let total = base.pow(vars.len() as u32);
    let assignment = |mut i: u64| -> Vec<(char, usize)> {
        let mut out = vec![(' ', 0); vars.len()];
        for slot in (0..vars.len()).rev() {
            out[slot] = (vars[slot], values[(i % base) as usize]);
            i /= base;
        }
        out
    };
    let sides = |i: u64| {
        let a = assignment(i);
        let l = eval_term(&ineq.lhs, m, &a).expect("all variables assigned");
        let r = eval_term(&ineq.rhs, m, &a).expect("all variables assigned");
        (a, l, r)
    };
    let fails = |i: u64| {
        let (_, l, r) = sides(i);
        match ineq.relation {
            Relation::Leq => !m.leq(l, r),
            Relation::Eq => l != r,
        }
    };
    Ok(match exec.find_first(total, fails) {
        None => Verdict {
            holds: true,
            counterexample: None,
        },
        Some(i) => {
            let (assignment, lhs, rhs) = sides(i);
            Verdict {
                holds: false,
                counterexample: Some(Counterexample {
                    reversed: ineq.relation == Relation::Eq && m.leq(lhs, rhs),
                    assignment,
                    lhs,
                    rhs,
                }),
            }
        }
    })
}

/// All `(p, q)` with `0 <= p, q <= bound` and `m ⊨ x^p <= x^q`.
pub fn enumerate_power_inequalities(m: &OrderedMonoid, bound: usize) -> Vec<(usize, usize)> {
    let powers: Vec<Vec<usize>> = (0..m.size())
        .map(|x| (0..=bound).map(|k| m.pow(x, k)).collect())
        .collect();
    let mut out = Vec::new();
    for p in 0..=bound {
        for q in 0..=bound {
            if powers.iter().all(|pw| m.leq(pw[p], pw[q])) {
                out.push((p, q));
            }
        }
    }
    out
}
