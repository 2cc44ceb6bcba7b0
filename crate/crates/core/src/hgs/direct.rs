//! Direct enumeration of regular subgroups of S_g normalized by G, for
//! cross-checking at small degree.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashSet;

use super::{ExtensionContext, HgsRecord};
use crate::algos::find_isomorphism;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::zoo::GroupType;

pub const DIRECT_DEFAULT_CAP: usize = 6;
pub const DIRECT_MAX_CAP: usize = 8;

/// Every non-identity power moves every point.
fn semiregular(x: &Perm) -> bool {
    let ct = x.cycle_type();
    ct.windows(2).all(|w| w[0] == w[1]) && ct.iter().sum::<usize>() == x.degree()
}

/// Closure of a sorted element list with one more element; None when the
/// result is not semiregular or exceeds `limit` elements.
fn extend(base: &[Perm], y: &Perm, limit: usize) -> Option<Vec<Perm>> {
    let mut elems: Vec<Perm> = base.to_vec();
    let mut set: FxHashSet<Perm> = base.iter().copied().collect();
    let gens: Vec<Perm> = {
        let mut g = vec![*y];
        g.extend(base.iter().filter(|p| !p.is_identity()).copied());
        g
    };
    let mut head = 0;
    if set.insert(*y) {
        elems.push(*y);
    }
    while head < elems.len() {
        let a = elems[head];
        head += 1;
        for x in &gens {
            let b = x.compose(&a);
            if set.insert(b) {
                if b.fixes(0) && !b.is_identity() {
                    return None;
                }
                elems.push(b);
                if elems.len() > limit {
                    return None;
                }
            }
        }
    }
    if elems.iter().any(|e| !e.is_identity() && !e.is_fixed_point_free()) {
        return None;
    }
    elems.sort_unstable();
    Some(elems)
}

/// Regular subgroups of S_g, computed once per degree.
fn regular_subgroups(g: usize) -> Arc<Vec<Vec<Perm>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Vec<Perm>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().expect("lock").get(&g) {
        return Arc::clone(r);
    }
    let r = Arc::new(regular_subgroups_uncached(g));
    cache.lock().expect("lock").insert(g, Arc::clone(&r));
    r
}

/// Regular subgroups of S_g of order g, as sorted element lists.
fn regular_subgroups_uncached(g: usize) -> Vec<Vec<Perm>> {
    let id = Perm::identity(g);
    let cyclic: Vec<Vec<Perm>> = {
        let mut seen = FxHashSet::default();
        let mut out = Vec::new();
        for x in PermGroup::symmetric(g).elements() {
            if x.is_identity() || !semiregular(&x) || g % x.order() as usize != 0 {
                continue;
            }
            let mut c: Vec<Perm> = (0..x.order()).map(|k| x.pow(k as i64)).collect();
            c.sort_unstable();
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        out
    };
    let mut all: FxHashSet<Vec<Perm>> = FxHashSet::default();
    all.insert(vec![id]);
    let mut layer: Vec<Vec<Perm>> = vec![vec![id]];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for k in &layer {
            for c in &cyclic {
                let y = c.iter().find(|p| !p.is_identity()).expect("non-trivial");
                let gen = c.iter().find(|p| p.order() as usize == c.len()).unwrap_or(y);
                if k.binary_search(gen).is_ok() {
                    continue;
                }
                if let Some(e) = extend(k, gen, g) {
                    if g % e.len() == 0 && all.insert(e.clone()) {
                        next.push(e);
                    }
                }
            }
        }
        layer = next;
    }
    let mut regular: Vec<Vec<Perm>> = all.into_iter().filter(|e| e.len() == g).collect();
    regular.sort_unstable();
    regular
}

/// Same contract as `find_hgs`, restricted to degree `cap` or below.
pub fn direct_hgs_capped(ctx: &ExtensionContext, ty: &GroupType, cap: usize) -> Result<Vec<HgsRecord>> {
    let g = ctx.degree();
    let cap = cap.min(DIRECT_MAX_CAP);
    if g > cap {
        return Err(Error::DegreeCap { degree: g, cap });
    }
    if ty.order != g {
        return Err(Error::TypeOrderMismatch {
            type_order: ty.order,
            degree: g,
        });
    }
    let mut out = Vec::new();
    for elems in regular_subgroups(g).iter() {
        let set: FxHashSet<Perm> = elems.iter().copied().collect();
        let normalized = ctx
            .group()
            .generators()
            .iter()
            .all(|x| elems.iter().all(|n| set.contains(&n.conjugate_by(x))));
        if !normalized {
            continue;
        }
        let n = PermGroup::new(g, elems.iter().filter(|p| !p.is_identity()).copied().collect())?;
        if find_isomorphism(ty.abstract_group(), &n)?.is_some() {
            let gens = crate::algos::stats::reduce_generators(g, n.generators().to_vec());
            out.push(HgsRecord::new(ctx, PermGroup::new(g, gens)?, &ty.label));
        }
    }
    super::sort_records(&mut out);
    Ok(out)
}

pub fn direct_hgs(ctx: &ExtensionContext, ty: &GroupType) -> Result<Vec<HgsRecord>> {
    direct_hgs_capped(ctx, ty, DIRECT_DEFAULT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_subgroup_counts() {
        // C2 ×1, C3 ×1, order 4: 3 cyclic + 1 Klein
        assert_eq!(regular_subgroups(2).len(), 1);
        assert_eq!(regular_subgroups(3).len(), 1);
        assert_eq!(regular_subgroups(4).len(), 4);
        // 6!/|N(C6)| = 720/12 plus 720/36 copies of S3
        assert_eq!(regular_subgroups(6).len(), 60 + 20);
    }

    #[test]
    #[ignore = "slow"]
    fn regular_subgroups_of_s8() {
        let t = std::time::Instant::now();
        let n = regular_subgroups(8).len();
        eprintln!("{n} in {:?}", t.elapsed());
    }

    #[test]
    fn cap_enforced() {
        let c7 = crate::zoo::groups_of_order(7).unwrap().remove(0);
        let ctx = ExtensionContext::galois(c7.abstract_group()).unwrap();
        assert!(matches!(direct_hgs(&ctx, &c7), Err(Error::DegreeCap { .. })));
    }
}
