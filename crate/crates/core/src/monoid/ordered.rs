use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest monoid checked exhaustively for associativity and accepted by the
/// isomorphism search.
pub const EXHAUSTIVE_LIMIT: usize = 64;
const SAMPLED_TRIPLES: u64 = 200_000;

/// A finite monoid with a compatible partial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedMonoid {
    n: usize,
    mult: Vec<u32>,
    identity: usize,
    leq: Vec<bool>,
    names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidProps {
    pub commutative: bool,
    pub aperiodic: bool,
    pub idempotents: Vec<usize>,
    /// `omega[x]` is the idempotent power of `x`.
    pub omega: Vec<usize>,
}

/// Serialized form: `{n, identity, mult, leq, names}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidJson {
    pub n: usize,
    pub identity: usize,
    pub mult: Vec<Vec<usize>>,
    pub leq: Vec<Vec<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl OrderedMonoid {
    /// Validated construction. `leq` defaults to equality when `None`.
    pub fn from_parts(
        mult: Vec<Vec<usize>>,
        identity: usize,
        leq: Option<Vec<Vec<bool>>>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::InvalidMonoid("a monoid has at least one element".into()));
        }
        if mult.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMonoid("multiplication table is not square".into()));
        }
        if mult.iter().flatten().any(|&z| z >= n) {
            return Err(Error::InvalidMonoid("product out of range".into()));
        }
        let leq = match leq {
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidMonoid("order matrix has the wrong shape".into()));
                }
                rows.concat()
            }
            None => (0..n * n).map(|i| i / n == i % n).collect(),
        };
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::InvalidMonoid("one name per element is required".into()));
            }
        }
        let m = OrderedMonoid {
            n,
            mult: mult.into_iter().flatten().map(|z| z as u32).collect(),
            identity,
            leq,
            names: names.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect()),
        };
        m.validate_with(Exec::default())?;
        Ok(m)
    }

    /// Unchecked construction for tables built by the crate itself.
    pub(crate) fn from_raw(
        n: usize,
        mult: Vec<u32>,
        identity: usize,
        leq: Vec<bool>,
        names: Vec<String>,
    ) -> Self {
        debug_assert_eq!(mult.len(), n * n);
        debug_assert_eq!(leq.len(), n * n);
        OrderedMonoid {
            n,
            mult,
            identity,
            leq,
            names,
        }
    }

    pub fn trivial() -> OrderedMonoid {
        OrderedMonoid::from_raw(1, vec![0], 0, vec![true], vec!["1".into()])
    }

    /// Checks every monoid and order axiom. Associativity is exhaustive up to
    /// [`EXHAUSTIVE_LIMIT`] elements and sampled beyond.
    pub fn validate_with(&self, exec: Exec) -> Result<()> {
        let n = self.n;
        let bad = |msg: String| Err(Error::InvalidMonoid(msg));
        if self.identity >= n {
            return bad(format!("identity {} out of range", self.identity));
        }
        let e = self.identity;
        if let Some(x) = (0..n).find(|&x| self.mul(e, x) != x || self.mul(x, e) != x) {
            return bad(format!("{e} is not an identity for {x}"));
        }
        let assoc = |x: usize, y: usize, z: usize| {
            self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z))
        };
        if n <= EXHAUSTIVE_LIMIT {
            let found = exec.find_first(n as u64, |x| {
                let x = x as usize;
                !(0..n).all(|y| (0..n).all(|z| assoc(x, y, z)))
            });
            if let Some(x) = found {
                return bad(format!("multiplication is not associative at {x}"));
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            let triples: Vec<(usize, usize, usize)> = (0..SAMPLED_TRIPLES)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            if let Some(i) = exec.find_first(SAMPLED_TRIPLES, |i| {
                let (x, y, z) = triples[i as usize];
                !assoc(x, y, z)
            }) {
                let (x, y, z) = triples[i as usize];
                return bad(format!("multiplication is not associative at ({x}, {y}, {z})"));
            }
        }
        if let Some(x) = (0..n).find(|&x| !self.leq(x, x)) {
            return bad(format!("order is not reflexive at {x}"));
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return bad(format!("order is not antisymmetric at ({x}, {y})"));
                }
            }
        }
        let broken = exec.find_first(n as u64, |x| {
            let x = x as usize;
            (0..n).any(|y| {
                self.leq(x, y)
                    && ((0..n).any(|z| self.leq(y, z) && !self.leq(x, z))
                        || (0..n).any(|z| {
                            !self.leq(self.mul(z, x), self.mul(z, y))
                                || !self.leq(self.mul(x, z), self.mul(y, z))
                        }))
            })
        });
        if let Some(x) = broken {
            return bad(format!("order is not transitive or not compatible at {x}"));
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.n + y] as usize
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    /// `x^k`, with `x^0` the identity.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        let (mut result, mut base, mut k) = (self.identity, x, k);
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// The unique idempotent among the positive powers of `x`.
    pub fn omega(&self, x: usize) -> usize {
        let mut p = x;
        loop {
            if self.mul(p, p) == p {
                return p;
            }
            p = self.mul(p, x);
        }
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn props(&self) -> MonoidProps {
        let omega: Vec<usize> = (0..self.n).map(|x| self.omega(x)).collect();
        MonoidProps {
            commutative: self.is_commutative(),
            aperiodic: (0..self.n).all(|x| self.mul(omega[x], x) == omega[x]),
            idempotents: (0..self.n).filter(|&x| self.is_idempotent(x)).collect(),
            omega,
        }
    }

    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && self.leq(x, y))
            .collect()
    }

    /// Pairs `x < y` with nothing strictly in between.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(x, y)| {
                !(0..self.n).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y))
            })
            .collect()
    }

    pub fn is_upset(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &x in set {
            member[x] = true;
        }
        set.iter()
            .all(|&x| (0..self.n).all(|y| !self.leq(x, y) || member[y]))
    }

    /// Elements generated by `gens`, in breadth-first order from the identity.
    pub fn submonoid_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut order = vec![self.identity];
        seen[self.identity] = true;
        let mut at = 0;
        while at < order.len() {
            let x = order[at];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
            at += 1;
        }
        order
    }

    /// The submonoid on `elements` (which must contain the identity and be
    /// closed under multiplication), renumbered in the given order.
    pub fn restrict(&self, elements: &[usize]) -> Result<OrderedMonoid> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &x) in elements.iter().enumerate() {
            index[x] = i;
        }
        let k = elements.len();
        if index[self.identity] == usize::MAX {
            return Err(Error::InvalidMonoid("submonoid must contain the identity".into()));
        }
        let mut mult = Vec::with_capacity(k * k);
        for &x in elements {
            for &y in elements {
                let z = index[self.mul(x, y)];
                if z == usize::MAX {
                    return Err(Error::InvalidMonoid("subset is not closed under product".into()));
                }
                mult.push(z as u32);
            }
        }
        let leq = elements
            .iter()
            .flat_map(|&x| elements.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.leq(x, y))
            .collect();
        let names = elements.iter().map(|&x| self.names[x].clone()).collect();
        Ok(OrderedMonoid::from_raw(k, mult, index[self.identity], leq, names))
    }

    /// The same monoid ordered by equality.
    pub fn with_equality_order(&self) -> OrderedMonoid {
        let n = self.n;
        OrderedMonoid {
            leq: (0..n * n).map(|i| i / n == i % n).collect(),
            ..self.clone()
        }
    }

    /// Product monoid with the componentwise order; element `(x, y)` has index `x * |other| + y`.
    pub fn direct_product(&self, other: &OrderedMonoid) -> OrderedMonoid {
        let (n, m) = (self.n, other.n);
        let size = n * m;
        let split = |i: usize| (i / m, i % m);
        let mut mult = Vec::with_capacity(size * size);
        let mut leq = Vec::with_capacity(size * size);
        for i in 0..size {
            let (x1, y1) = split(i);
            for j in 0..size {
                let (x2, y2) = split(j);
                mult.push((self.mul(x1, x2) * m + other.mul(y1, y2)) as u32);
                leq.push(self.leq(x1, x2) && other.leq(y1, y2));
            }
        }
        let names = (0..size)
            .map(|i| {
                let (x, y) = split(i);
                format!("({},{})", self.names[x], other.names[y])
            })
            .collect();
        OrderedMonoid::from_raw(size, mult, self.identity * m + other.identity, leq, names)
    }

    /// An isomorphism of ordered monoids `self -> other`, as an element map.
    pub fn find_isomorphism(&self, other: &OrderedMonoid) -> Result<Option<Vec<usize>>> {
        for m in [self, other] {
            if m.n > EXHAUSTIVE_LIMIT {
                return Err(Error::TooLarge {
                    size: m.n,
                    max: EXHAUSTIVE_LIMIT,
                });
            }
        }
        if self.n != other.n {
            return Ok(None);
        }
        let sig_self: Vec<_> = (0..self.n).map(|x| self.signature(x)).collect();
        let sig_other: Vec<_> = (0..other.n).map(|x| other.signature(x)).collect();
        let mut a: Vec<_> = sig_self.clone();
        let mut b: Vec<_> = sig_other.clone();
        a.sort();
        b.sort();
        if a != b {
            return Ok(None);
        }
        let gens = self.generating_set();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| (0..other.n).filter(|&y| sig_other[y] == sig_self[g]).collect())
            .collect();
        let mut choice = vec![0usize; gens.len()];
        Ok(self.search(other, &gens, &candidates, &mut choice, 0))
    }

    pub fn is_isomorphic(&self, other: &OrderedMonoid) -> Result<bool> {
        Ok(self.find_isomorphism(other)?.is_some())
    }

    fn search(
        &self,
        other: &OrderedMonoid,
        gens: &[usize],
        candidates: &[Vec<usize>],
        choice: &mut Vec<usize>,
        depth: usize,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            return self.extend_map(other, gens, choice);
        }
        for &c in &candidates[depth] {
            choice[depth] = c;
            if let Some(map) = self.search(other, gens, candidates, choice, depth + 1) {
                return Some(map);
            }
        }
        None
    }

    /// Extends generator images along the right Cayley graph and checks the
    /// result is a well-defined order isomorphism.
    fn extend_map(&self, other: &OrderedMonoid, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        map[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let target = other.mul(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = target;
                    queue.push_back(y);
                } else if map[y] != target {
                    return None;
                }
            }
        }
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        if distinct.len() != self.n || distinct.contains(&usize::MAX) {
            return None;
        }
        let order_ok = (0..self.n)
            .all(|x| (0..self.n).all(|y| self.leq(x, y) == other.leq(map[x], map[y])));
        order_ok.then_some(map)
    }

    /// Greedy generating set: each element not yet generated is added.
    fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut covered = vec![false; self.n];
        covered[self.identity] = true;
        for x in 0..self.n {
            if !covered[x] {
                gens.push(x);
                for y in self.submonoid_generated(&gens) {
                    covered[y] = true;
                }
            }
        }
        gens
    }

    /// Isomorphism-invariant data of an element.
    fn signature(&self, x: usize) -> (usize, bool, bool, usize, usize) {
        let mut powers = vec![x];
        let mut p = x;
        loop {
            p = self.mul(p, x);
            if powers.contains(&p) {
                break;
            }
            powers.push(p);
        }
        let below = (0..self.n).filter(|&y| self.leq(y, x)).count();
        let above = (0..self.n).filter(|&y| self.leq(x, y)).count();
        (powers.len(), x == self.identity, self.is_idempotent(x), below, above)
    }

    pub fn to_json(&self) -> MonoidJson {
        let n = self.n;
        MonoidJson {
            n,
            identity: self.identity,
            mult: (0..n).map(|x| (0..n).map(|y| self.mul(x, y)).collect()).collect(),
            leq: (0..n).map(|x| (0..n).map(|y| self.leq(x, y)).collect()).collect(),
            names: Some(self.names.clone()),
        }
    }

    pub fn from_json(json: &MonoidJson) -> Result<OrderedMonoid> {
        if json.mult.len() != json.n {
            return Err(Error::InvalidMonoid(format!(
                "{} rows for {} elements",
                json.mult.len(),
                json.n
            )));
        }
        OrderedMonoid::from_parts(
            json.mult.clone(),
            json.identity,
            Some(json.leq.clone()),
            json.names.clone(),
        )
    }

    /// Hasse diagram of the order: one edge per covering pair, smaller below.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph order {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for x in 0..self.n {
            let _ = writeln!(out, "  {x} [label=\"{}\"];", self.names[x].replace('"', "\\\""));
        }
        for (x, y) in self.covering_pairs() {
            let _ = writeln!(out, "  {x} -> {y};");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `{0..=cap}` under `min(x + y, cap)` ordered by equality.
    fn saturating(cap: usize) -> OrderedMonoid {
        let mult = (0..=cap)
            .map(|x| (0..=cap).map(|y| (x + y).min(cap)).collect())
            .collect();
        OrderedMonoid::from_parts(mult, 0, None, None).unwrap()
    }

    #[test]
    fn rejects_broken_tables() {
        let not_assoc = vec![vec![0, 1], vec![1, 1]];
        assert!(OrderedMonoid::from_parts(not_assoc, 1, None, None).is_err());
        let m = saturating(2);
        let table: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| m.mul(x, y)).collect()).collect();
        let natural = (0..3).map(|x| (0..3).map(|y| x <= y).collect()).collect();
        assert!(OrderedMonoid::from_parts(table.clone(), 0, Some(natural), None).is_ok());
        // 1 <= 0 would force 1*1 = 2 <= 1*0 = 1
        let mut reversed = vec![vec![false; 3]; 3];
        for (x, row) in reversed.iter_mut().enumerate() {
            row[x] = true;
        }
        reversed[1][0] = true;
        assert!(matches!(
            OrderedMonoid::from_parts(table, 0, Some(reversed), None),
            Err(Error::InvalidMonoid(_))
        ));
    }

    #[test]
    fn omega_and_props() {
        let m = saturating(6);
        let p = m.props();
        assert!(p.commutative && p.aperiodic);
        assert_eq!(p.idempotents, vec![0, 6]);
        assert_eq!(m.omega(1), 6);
        assert_eq!(m.pow(2, 2), 4);
        assert_eq!(m.pow(5, 0), 0);
        let t = OrderedMonoid::trivial();
        assert_eq!(t.props().omega, vec![0]);
        assert!(t.props().aperiodic);
    }

    #[test]
    fn covering_pairs_reduce_a_chain() {
        let n = 4;
        let leq = (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect();
        // the monoid max(x, y) is compatible with the natural order
        let mult = (0..n).map(|x| (0..n).map(|y| x.max(y)).collect()).collect();
        let m = OrderedMonoid::from_parts(mult, 0, Some(leq), None).unwrap();
        assert_eq!(m.strict_pairs().len(), 6);
        assert_eq!(m.covering_pairs(), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(m.is_upset(&[2, 3]));
        assert!(!m.is_upset(&[1, 3]));
        assert!(m.to_dot().contains("1 -> 2;"));
    }

    #[test]
    fn isomorphism_search() {
        let a = saturating(3);
        // same monoid with elements listed in reverse
        let perm = [3usize, 2, 1, 0];
        let mult = (0..4)
            .map(|i| (0..4).map(|j| perm[a.mul(perm[i], perm[j])]).collect())
            .collect();
        let b = OrderedMonoid::from_parts(mult, 3, None, None).unwrap();
        let map = a.find_isomorphism(&b).unwrap().unwrap();
        assert_eq!(map, vec![3, 2, 1, 0]);
        assert!(!a.is_isomorphic(&saturating(4)).unwrap());
        let cyclic = OrderedMonoid::from_parts(
            (0..4).map(|x| (0..4).map(|y| (x + y) % 4).collect()).collect(),
            0,
            None,
            None,
        )
        .unwrap();
        assert!(!a.is_isomorphic(&cyclic).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let m = saturating(2);
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back: MonoidJson = serde_json::from_str(&text).unwrap();
        assert_eq!(OrderedMonoid::from_json(&back).unwrap(), m);
        let unnamed = r#"{"n":1,"identity":0,"mult":[[0]],"leq":[[true]]}"#;
        let j: MonoidJson = serde_json::from_str(unnamed).unwrap();
        assert_eq!(OrderedMonoid::from_json(&j).unwrap().size(), 1);
    }

    #[test]
    fn direct_product_and_restriction() {
        let a = saturating(1);
        let p = a.direct_product(&a);
        assert_eq!(p.size(), 4);
        assert_eq!(p.identity(), 0);
        let diag = p.restrict(&[0, 3]).unwrap();
        assert!(diag.is_isomorphic(&a).unwrap());
        assert!(p.restrict(&[1]).is_err());
    }
}
