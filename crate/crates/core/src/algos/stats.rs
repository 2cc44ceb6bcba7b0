//! Element-level invariants: order statistics, conjugacy classes, centres.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::table::ElementTable;

/// Number of elements of each order.
pub fn order_histogram(g: &PermGroup) -> Result<BTreeMap<u64, usize>> {
    let table = g.element_table()?;
    let mut hist = BTreeMap::new();
    for e in table.elements() {
        *hist.entry(e.order()).or_insert(0) += 1;
    }
    Ok(hist)
}

/// True when every order occurs in `big` at least as often as in `small`.
/// A necessary condition for `small` to embed in `big`.
pub fn histogram_dominated(small: &BTreeMap<u64, usize>, big: &BTreeMap<u64, usize>) -> bool {
    small
        .iter()
        .all(|(o, &c)| big.get(o).is_some_and(|&d| d >= c))
}

pub fn exponent(g: &PermGroup) -> Result<u64> {
    Ok(order_histogram(g)?
        .keys()
        .fold(1, |acc, &o| crate::perm::lcm(acc, o)))
}

/// Conjugacy class id of every table index, classes numbered by smallest member.
pub fn conjugacy_class_ids(g: &PermGroup, table: &ElementTable) -> Vec<u32> {
    let maps: Vec<Vec<u32>> = g
        .generators()
        .iter()
        .map(|c| table.conjugation_map(c))
        .collect();
    let n = table.len();
    let mut ids = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut stack = Vec::new();
    for start in 0..n {
        if ids[start] != u32::MAX {
            continue;
        }
        ids[start] = next;
        stack.push(start as u32);
        while let Some(e) = stack.pop() {
            for m in &maps {
                let f = m[e as usize] as usize;
                if ids[f] == u32::MAX {
                    ids[f] = next;
                    stack.push(f as u32);
                }
            }
        }
        next += 1;
    }
    ids
}

/// Size of the conjugacy class of every table index.
pub fn class_sizes(ids: &[u32]) -> Vec<u32> {
    let classes = ids.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut count = vec![0u32; classes];
    for &i in ids {
        count[i as usize] += 1;
    }
    ids.iter().map(|&i| count[i as usize]).collect()
}

pub fn center(g: &PermGroup) -> Result<PermGroup> {
    let table = g.element_table()?;
    let gens: Vec<Perm> = table
        .elements()
        .iter()
        .filter(|e| g.generators().iter().all(|x| x.compose(e) == e.compose(x)))
        .copied()
        .collect();
    PermGroup::new(g.degree(), gens)
}

/// Elements of `g` commuting with every element of `h`.
pub fn centralizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let table = g.element_table()?;
    let gens: Vec<Perm> = table
        .elements()
        .iter()
        .filter(|e| h.generators().iter().all(|x| x.compose(e) == e.compose(x)))
        .copied()
        .collect();
    PermGroup::new(g.degree(), gens)
}

/// Normalizer of `h` in `g`, by testing every element of `g`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let gens: Vec<Perm> = g
        .elements()
        .filter(|c| h.generators().iter().all(|x| h.contains(&x.conjugate_by(c))))
        .collect();
    let gens = reduce_generators(g.degree(), gens);
    PermGroup::new(g.degree(), gens)
}

/// Order of the normalizer of `h` in `g` without building it; streams the
/// elements of `g`, so it works for ambient groups too large to tabulate.
pub fn normalizer_order(g: &PermGroup, h: &PermGroup) -> u128 {
    g.elements()
        .filter(|c| h.generators().iter().all(|x| h.contains(&x.conjugate_by(c))))
        .count() as u128
}

/// A Sylow p-subgroup, grown one p-element of the normalizer at a time.
pub fn sylow_subgroup(g: &PermGroup, p: u64) -> PermGroup {
    let mut target: u128 = 1;
    let mut rest = g.order();
    while rest % p as u128 == 0 {
        rest /= p as u128;
        target *= p as u128;
    }
    let mut sylow = PermGroup::trivial(g.degree());
    while sylow.order() < target {
        let mut grown = false;
        for x in g.elements() {
            if sylow.contains(&x) || !is_p_power(x.order(), p) {
                continue;
            }
            let normalizes = sylow
                .generators()
                .iter()
                .all(|h| sylow.contains(&h.conjugate_by(&x)));
            if !normalizes {
                continue;
            }
            let mut gens = sylow.generators().to_vec();
            gens.push(x);
            let bigger = PermGroup::new(g.degree(), gens).expect("degree");
            if is_p_power_u128(bigger.order(), p) {
                sylow = bigger;
                grown = true;
                break;
            }
        }
        assert!(grown, "a p-subgroup of non-maximal order has a larger normalizing p-element");
    }
    sylow
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn is_p_power_u128(mut n: u128, p: u64) -> bool {
    while n % p as u128 == 0 {
        n /= p as u128;
    }
    n == 1
}

/// Drops generators already contained in the group generated by the earlier ones.
pub fn reduce_generators(degree: usize, gens: Vec<Perm>) -> Vec<Perm> {
    let mut kept: Vec<Perm> = Vec::new();
    let mut current = PermGroup::trivial(degree);
    for g in gens {
        if current.contains(&g) {
            continue;
        }
        kept.push(g);
        current = PermGroup::new(degree, kept.clone()).expect("degree");
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_classes() {
        let s4 = PermGroup::symmetric(4);
        let t = s4.element_table().unwrap();
        let ids = conjugacy_class_ids(&s4, &t);
        let mut sizes: Vec<u32> = class_sizes(&ids);
        sizes.sort_unstable();
        sizes.dedup();
        assert_eq!(sizes, vec![1, 3, 6, 8]);
        assert_eq!(ids.iter().max(), Some(&4));
        assert_eq!(center(&s4).unwrap().order(), 1);
        let hist = order_histogram(&s4).unwrap();
        assert_eq!(hist.get(&2), Some(&9));
        assert_eq!(exponent(&s4).unwrap(), 12);
    }

    #[test]
    fn sylow_orders() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(sylow_subgroup(&s4, 2).order(), 8);
        assert_eq!(sylow_subgroup(&s4, 3).order(), 3);
        assert_eq!(sylow_subgroup(&s4, 5).order(), 1);
        let s6 = PermGroup::symmetric(6);
        assert_eq!(sylow_subgroup(&s6, 3).order(), 9);
    }

    #[test]
    fn normalizer_of_sylow() {
        let s4 = PermGroup::symmetric(4);
        let c3 = PermGroup::new(4, vec![Perm::parse(4, "(1,2,3)").unwrap()]).unwrap();
        assert_eq!(normalizer(&s4, &c3).unwrap().order(), 6);
        assert_eq!(normalizer_order(&s4, &c3), 6);
        assert_eq!(centralizer(&s4, &c3).unwrap().order(), 3);
    }
}
