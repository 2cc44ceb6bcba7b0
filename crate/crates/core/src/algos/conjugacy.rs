//! Conjugacy of subgroups and point bijections intertwining generator tuples.

use crate::algos::stats::{conjugacy_class_ids, reduce_generators};
use crate::error::{Error, Result};
use crate::group::{PermGroup, ELEMENT_TABLE_LIMIT};
use crate::perm::Perm;

/// Orders above which the conjugacy search refuses to enumerate elements.
pub const CONJUGACY_ORDER_BOUND: u128 = 2_000_000;

/// Calls `visit` with every σ such that σ·xs[i]·σ⁻¹ = ys[i] for all i.
/// Returns early when `visit` returns true.
pub fn intertwiners(degree: usize, xs: &[Perm], ys: &[Perm], visit: &mut dyn FnMut(&Perm) -> bool) {
    let mut sigma = vec![usize::MAX; degree];
    let mut used = vec![false; degree];
    let orbit_len = |gens: &[Perm], p: usize| {
        let mut seen = vec![false; degree];
        seen[p] = true;
        let mut stack = vec![p];
        let mut n = 1;
        while let Some(a) = stack.pop() {
            for g in gens {
                let b = g.image0(a);
                if !seen[b] {
                    seen[b] = true;
                    n += 1;
                    stack.push(b);
                }
            }
        }
        n
    };
    let xlen: Vec<usize> = (0..degree).map(|p| orbit_len(xs, p)).collect();
    let ylen: Vec<usize> = (0..degree).map(|p| orbit_len(ys, p)).collect();
    fn go(
        xs: &[Perm],
        ys: &[Perm],
        xlen: &[usize],
        ylen: &[usize],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&Perm) -> bool,
    ) -> bool {
        let Some(p) = sigma.iter().position(|&s| s == usize::MAX) else {
            let imgs: Vec<u8> = sigma.iter().map(|&s| s as u8).collect();
            return visit(&Perm::from_images0(&imgs));
        };
        for q in 0..sigma.len() {
            if used[q] || xlen[p] != ylen[q] {
                continue;
            }
            let mut assigned = vec![p];
            sigma[p] = q;
            used[q] = true;
            let mut ok = true;
            let mut head = 0;
            'prop: while head < assigned.len() {
                let a = assigned[head];
                head += 1;
                for (x, y) in xs.iter().zip(ys) {
                    let a2 = x.image0(a);
                    let b2 = y.image0(sigma[a]);
                    if sigma[a2] == usize::MAX {
                        if used[b2] {
                            ok = false;
                            break 'prop;
                        }
                        sigma[a2] = b2;
                        used[b2] = true;
                        assigned.push(a2);
                    } else if sigma[a2] != b2 {
                        ok = false;
                        break 'prop;
                    }
                }
            }
            if ok && go(xs, ys, xlen, ylen, sigma, used, visit) {
                return true;
            }
            for a in assigned {
                used[sigma[a]] = false;
                sigma[a] = usize::MAX;
            }
        }
        false
    }
    go(xs, ys, &xlen, &ylen, &mut sigma, &mut used, visit);
}

fn orbit_profile(g: &PermGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.orbits().iter().map(Vec::len).collect();
    v.sort_unstable();
    v
}

/// A conjugator c ∈ `ambient` with c·h1·c⁻¹ = h2, or `None`.
///
/// The generators of h1 are sent to tuples in h2 (the first one only up to
/// h2-conjugacy) and each tuple is tested for a point bijection realizing it.
pub fn are_conjugate(ambient: &PermGroup, h1: &PermGroup, h2: &PermGroup) -> Result<Option<Perm>> {
    if !h1.is_subgroup_of(ambient) || !h2.is_subgroup_of(ambient) {
        return Err(Error::NotSubgroup);
    }
    if h1.order() != h2.order() || orbit_profile(h1) != orbit_profile(h2) {
        return Ok(None);
    }
    if h1.same_elements(h2) {
        return Ok(Some(ambient.identity()));
    }
    if h2.order() > CONJUGACY_ORDER_BOUND {
        return Err(Error::OrderBound {
            order: h2.order(),
            bound: CONJUGACY_ORDER_BOUND,
        });
    }
    let degree = ambient.degree();
    let xs = reduce_generators(degree, h1.generators().to_vec());
    let full_symmetric = ambient.order() == (1..=degree as u128).product::<u128>();

    let elements: Vec<Perm> = h2.elements().collect();
    let first_candidates: Vec<Perm> = if h2.order() <= ELEMENT_TABLE_LIMIT {
        let table = h2.element_table()?;
        let ids = conjugacy_class_ids(h2, &table);
        let mut seen = rustc_hash::FxHashSet::default();
        table
            .elements()
            .iter()
            .zip(&ids)
            .filter(|(_, id)| seen.insert(**id))
            .map(|(e, _)| *e)
            .collect()
    } else {
        elements.clone()
    };
    let ctype: Vec<Vec<usize>> = xs.iter().map(Perm::cycle_type).collect();
    let per_position: Vec<Vec<Perm>> = xs
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let pool = if i == 0 { &first_candidates } else { &elements };
            pool.iter().filter(|y| y.cycle_type() == ctype[i]).copied().collect()
        })
        .collect();

    let mut result = None;
    let mut ys = Vec::with_capacity(xs.len());
    fn tuples(
        i: usize,
        per_position: &[Vec<Perm>],
        ys: &mut Vec<Perm>,
        xs: &[Perm],
        f: &mut dyn FnMut(&[Perm]) -> bool,
    ) -> bool {
        if i == per_position.len() {
            return f(ys);
        }
        'next: for y in &per_position[i] {
            for j in 0..i {
                let a = xs[j].compose(&xs[i]);
                let b = ys[j].compose(y);
                if a.cycle_type() != b.cycle_type() {
                    continue 'next;
                }
            }
            ys.push(*y);
            if tuples(i + 1, per_position, ys, xs, f) {
                return true;
            }
            ys.pop();
        }
        false
    }
    tuples(0, &per_position, &mut ys, &xs, &mut |ys| {
        let mut hit = None;
        intertwiners(degree, &xs, ys, &mut |s| {
            if full_symmetric || ambient.contains(s) {
                hit = Some(*s);
                true
            } else {
                false
            }
        });
        if let Some(c) = hit {
            result = Some(c);
            true
        } else {
            false
        }
    });
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| Perm::parse(n, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn identical_subgroups() {
        let s4 = PermGroup::symmetric(4);
        let h = grp(4, &["(1,2,3)"]);
        assert!(are_conjugate(&s4, &h, &h).unwrap().unwrap().is_identity());
    }

    #[test]
    fn point_stabilizers_are_conjugate() {
        let d8 = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let s1 = d8.point_stabilizer(1).unwrap();
        let s2 = d8.point_stabilizer(2).unwrap();
        let c = are_conjugate(&d8, &s1, &s2).unwrap().unwrap();
        assert!(d8.contains(&c));
        assert!(s1.conjugate(&c).same_elements(&s2));
    }

    #[test]
    fn different_orders() {
        let s3 = PermGroup::symmetric(3);
        let a = grp(3, &["(1,2)"]);
        let b = grp(3, &["(1,2,3)"]);
        assert!(are_conjugate(&s3, &a, &b).unwrap().is_none());
    }

    #[test]
    fn klein_groups_in_s4() {
        let s4 = PermGroup::symmetric(4);
        let normal = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let other = grp(4, &["(1,2)", "(3,4)"]);
        assert!(are_conjugate(&s4, &normal, &other).unwrap().is_none());
        let other2 = grp(4, &["(1,3)", "(2,4)"]);
        let c = are_conjugate(&s4, &other, &other2).unwrap().unwrap();
        assert!(other.conjugate(&c).same_elements(&other2));
        // inside the normal Klein group nothing moves (1,2) to (1,3)
        let a = grp(4, &["(1,2)"]);
        let b = grp(4, &["(1,3)"]);
        let d8 = grp(4, &["(1,2,3,4)", "(1,3)"]);
        assert!(are_conjugate(&d8, &grp(4, &["(1,3)"]), &grp(4, &["(2,4)"])).unwrap().is_some());
        assert!(are_conjugate(&s4, &a, &b).unwrap().is_some());
    }

    #[test]
    fn not_a_subgroup() {
        let c3 = grp(3, &["(1,2,3)"]);
        let t = grp(3, &["(1,2)"]);
        assert!(matches!(are_conjugate(&c3, &t, &t), Err(Error::NotSubgroup)));
    }
}
