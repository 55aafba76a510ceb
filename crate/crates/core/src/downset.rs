//! Monoids of downsets of a finite ordered monoid.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::limits::Limits;
use crate::monoid::OrderedMonoid;

/// `below[x]` is the bitmask of elements `y <= x`.
fn below_masks(m: &OrderedMonoid) -> Vec<u32> {
    (0..m.size())
        .map(|x| {
            (0..m.size())
                .filter(|&y| m.leq(y, x))
                .fold(0u32, |acc, y| acc | (1 << y))
        })
        .collect()
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask & (1 << i) != 0)
}

fn check_base(m: &OrderedMonoid) -> Result<()> {
    let cap = Limits::global().downset_base_cap.min(31);
    if m.size() > cap {
        return Err(Error::DownsetCap {
            size: m.size(),
            cap,
        });
    }
    Ok(())
}

/// Smallest downset containing `set`, as a sorted element list.
pub fn downclose(m: &OrderedMonoid, set: &[usize]) -> Vec<usize> {
    let mut member = vec![false; m.size()];
    for &x in set {
        for (y, flag) in member.iter_mut().enumerate() {
            if m.leq(y, x) {
                *flag = true;
            }
        }
    }
    (0..m.size()).filter(|&y| member[y]).collect()
}

pub fn is_downset(m: &OrderedMonoid, set: &[usize]) -> bool {
    downclose(m, set).len() == {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len()
    }
}

/// A downset monoid together with the downset behind each element.
#[derive(Debug, Clone)]
pub struct DownsetMonoid {
    monoid: OrderedMonoid,
    downsets: Vec<u32>,
    include_empty: bool,
}

impl DownsetMonoid {
    pub fn monoid(&self) -> &OrderedMonoid {
        &self.monoid
    }

    pub fn into_monoid(self) -> OrderedMonoid {
        self.monoid
    }

    pub fn includes_empty(&self) -> bool {
        self.include_empty
    }

    /// Elements of the base monoid in downset `i`, sorted.
    pub fn members(&self, i: usize) -> Vec<usize> {
        bits(self.downsets[i]).collect()
    }

    pub fn mask(&self, i: usize) -> u32 {
        self.downsets[i]
    }

    pub fn index_of(&self, members: &[usize]) -> Option<usize> {
        let mask = members.iter().fold(0u32, |acc, &x| acc | (1 << x));
        self.downsets.iter().position(|&d| d == mask)
    }
}

/// All downsets of `m` (only nonempty ones unless `include_empty`), ordered by
/// bitmask with `∅` first, under the product `XY = ↓{xy}` and inclusion.
pub fn downset_monoid(m: &OrderedMonoid, include_empty: bool) -> Result<DownsetMonoid> {
    downset_monoid_with(m, include_empty, Exec::default())
}

pub fn downset_monoid_with(
    m: &OrderedMonoid,
    include_empty: bool,
    exec: Exec,
) -> Result<DownsetMonoid> {
    check_base(m)?;
    let n = m.size();
    let below = below_masks(m);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let cap = Limits::global().downset_element_cap;
    let mut downsets = Vec::new();
    let start = u32::from(!include_empty);
    for mask in start..=full {
        if bits(mask).all(|x| below[x] & !mask == 0) {
            if downsets.len() == cap {
                return Err(Error::DownsetCap { size: n, cap });
            }
            downsets.push(mask);
        }
    }
    let index: HashMap<u32, usize> = downsets.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let k = downsets.len();
    let members: Vec<Vec<usize>> = downsets.iter().map(|&d| bits(d).collect()).collect();
    let rows: Vec<Vec<u32>> = exec.map(k, |i| {
        (0..k)
            .map(|j| {
                let mut prod = 0u32;
                for &x in &members[i] {
                    for &y in &members[j] {
                        prod |= below[m.mul(x, y)];
                    }
                }
                index[&prod] as u32
            })
            .collect()
    });
    let leq = (0..k * k)
        .map(|p| downsets[p / k] & !downsets[p % k] == 0)
        .collect();
    let names = members
        .iter()
        .map(|set| {
            if set.is_empty() {
                "∅".to_string()
            } else {
                let parts: Vec<&str> = set.iter().map(|&x| m.name(x)).collect();
                format!("{{{}}}", parts.join(","))
            }
        })
        .collect();
    let identity = index[&below[m.identity()]];
    Ok(DownsetMonoid {
        monoid: OrderedMonoid::from_raw(k, rows.concat(), identity, leq, names),
        downsets,
        include_empty,
    })
}

/// The two-element monoid `{1, 0}` with `0` a zero and `0 < 1`.
/// Element 0 is the identity `1`, element 1 is the zero `0`.
pub fn u1_down() -> OrderedMonoid {
    OrderedMonoid::from_raw(
        2,
        vec![0, 1, 1, 1],
        0,
        vec![true, false, true, true],
        vec!["1".into(), "0".into()],
    )
}

/// Checks that `(X, 1) -> X`, `(X, 0) -> ∅` is a surjective, order-preserving
/// monoid morphism from `P↓(M) × U₁↓` onto `P₀↓(M)`.
pub fn quotient_check(m: &OrderedMonoid) -> Result<bool> {
    let nonempty = downset_monoid(m, false)?;
    let with_empty = downset_monoid(m, true)?;
    let u1 = u1_down();
    let domain = nonempty.monoid().direct_product(&u1);
    let target = with_empty.monoid();
    let empty = with_empty.index_of(&[]).expect("∅ is present");
    let map: Vec<usize> = (0..domain.size())
        .map(|i| {
            let (x, u) = (i / 2, i % 2);
            if u == 0 {
                with_empty
                    .index_of(&nonempty.members(x))
                    .expect("nonempty downsets embed")
            } else {
                empty
            }
        })
        .collect();
    let mut hit = vec![false; target.size()];
    for &y in &map {
        hit[y] = true;
    }
    let surjective = hit.iter().all(|&h| h);
    let d = domain.size();
    let morphism = map[domain.identity()] == target.identity()
        && (0..d).all(|a| (0..d).all(|b| map[domain.mul(a, b)] == target.mul(map[a], map[b])));
    let monotone =
        (0..d).all(|a| (0..d).all(|b| !domain.leq(a, b) || target.leq(map[a], map[b])));
    Ok(surjective && morphism && monotone)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `{0..3}` under `min(x+y, 3)`, with `2 < 3` the only strict pair.
    fn chain_monoid() -> OrderedMonoid {
        let n = 4;
        let mult = (0..n).map(|x| (0..n).map(|y| (x + y).min(3)).collect()).collect();
        let leq = (0..n)
            .map(|x| (0..n).map(|y| x == y || (x >= 2 && y >= x)).collect())
            .collect();
        OrderedMonoid::from_parts(mult, 0, Some(leq), None).unwrap()
    }

    #[test]
    fn downclose_basics() {
        let m = chain_monoid();
        assert_eq!(downclose(&m, &[3]), vec![2, 3]);
        assert_eq!(downclose(&m, &[]), Vec::<usize>::new());
        assert!(is_downset(&m, &[2]));
        assert!(!is_downset(&m, &[3]));
    }

    #[test]
    fn trivial_monoid_downsets() {
        let t = OrderedMonoid::trivial();
        let p = downset_monoid(&t, false).unwrap();
        assert_eq!(p.monoid().size(), 1);
        let p0 = downset_monoid(&t, true).unwrap();
        assert_eq!(p0.monoid().size(), 2);
        assert!(p0.monoid().is_isomorphic(&u1_down()).unwrap());
    }

    #[test]
    fn u1_is_valid() {
        let u = u1_down();
        u.validate_with(Exec::Sequential).unwrap();
        assert!(u.leq(1, 0) && !u.leq(0, 1));
    }

    #[test]
    fn empty_set_is_a_zero_and_first() {
        let m = chain_monoid();
        let p0 = downset_monoid(&m, true).unwrap();
        assert_eq!(p0.members(0), Vec::<usize>::new());
        let mm = p0.monoid();
        mm.validate_with(Exec::Sequential).unwrap();
        assert!((0..mm.size()).all(|x| mm.mul(0, x) == 0 && mm.mul(x, 0) == 0));
        assert_eq!(p0.members(mm.identity()), vec![0]);
        assert!(quotient_check(&m).unwrap());
    }

    #[test]
    fn parallel_and_sequential_tables_agree() {
        let m = chain_monoid();
        let a = downset_monoid_with(&m, true, Exec::Sequential).unwrap();
        let b = downset_monoid_with(&m, true, Exec::Parallel).unwrap();
        assert_eq!(a.monoid(), b.monoid());
    }

    #[test]
    fn base_cap_is_enforced() {
        let n = 17;
        let mult = (0..n).map(|x| (0..n).map(|y| (x + y).min(n - 1)).collect()).collect();
        let m = OrderedMonoid::from_parts(mult, 0, None, None).unwrap();
        assert!(matches!(downset_monoid(&m, false), Err(Error::DownsetCap { .. })));
    }
}
