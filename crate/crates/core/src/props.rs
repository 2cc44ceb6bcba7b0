//! Classification of Hopf Galois structures: almost classical structures,
//! bijectivity of the Galois correspondence and isomorphism classes of the
//! Hopf algebras (G-isomorphism classes of the regular groups).

use std::collections::BTreeMap;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::algos::iso::all_isomorphisms;
use crate::algos::lattice::all_subgroups;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hgs::{ExtensionContext, HgsRecord};
use crate::holomorph::opposite;
use crate::perm::Perm;

/// True when the centralizer of N in S_g lies inside G, i.e. N comes from a
/// normal complement of G' in G.
pub fn is_almost_classical(rec: &HgsRecord, ctx: &ExtensionContext) -> Result<bool> {
    let opp = opposite(&rec.n_image)?;
    Ok(opp.is_subgroup_of(ctx.group()))
}

/// Subgroups of N mapped to themselves by conjugation with every generator of G.
pub fn stable_subgroup_count(n: &PermGroup, g: &PermGroup) -> Result<usize> {
    Ok(all_subgroups(n)?
        .iter()
        .filter(|p| g.normalizes(p))
        .count())
}

/// Subgroups W with G' ≤ W ≤ G, found by adjoining coset representatives.
/// Each W is determined by the orbit of point 1.
pub fn intermediate_subgroup_count(ctx: &ExtensionContext) -> usize {
    let g = ctx.degree();
    let orbit_mask = |w: &PermGroup| -> u64 {
        w.orbit(1)
            .expect("point 1")
            .iter()
            .fold(0u64, |m, &p| m | 1 << (p - 1))
    };
    let reps: Vec<Perm> = (1..=g).map(|j| *ctx.coset_rep(j)).collect();
    let mut seen: FxHashSet<u64> = FxHashSet::default();
    let start = ctx.stabilizer().clone();
    seen.insert(orbit_mask(&start));
    let mut queue = vec![start];
    while let Some(w) = queue.pop() {
        let mask = orbit_mask(&w);
        for (j, t) in reps.iter().enumerate() {
            if mask & (1 << j) != 0 {
                continue;
            }
            let mut gens = w.generators().to_vec();
            gens.push(*t);
            let bigger = PermGroup::new(g, gens).expect("degree");
            if seen.insert(orbit_mask(&bigger)) {
                queue.push(bigger);
            }
        }
    }
    seen.len()
}

/// Stable subgroups of N and intermediate fields are equinumerous.
pub fn has_bijective_correspondence(rec: &HgsRecord, ctx: &ExtensionContext) -> Result<bool> {
    Ok(stable_subgroup_count(&rec.n_image, ctx.group())? == intermediate_subgroup_count(ctx))
}

/// Multiset of (element order, size of the orbit under conjugation by G).
fn orbit_signature(n: &PermGroup, g: &PermGroup) -> Vec<(u64, usize)> {
    let elems: Vec<Perm> = n.elements().collect();
    let mut orbit_of: FxHashMap<Perm, usize> = FxHashMap::default();
    let mut sig = Vec::with_capacity(elems.len());
    for e in &elems {
        if let Some(&s) = orbit_of.get(e) {
            sig.push((e.order(), s));
            continue;
        }
        let mut orbit = vec![*e];
        let mut head = 0;
        let mut set: FxHashSet<Perm> = FxHashSet::default();
        set.insert(*e);
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for c in g.generators() {
                let y = x.conjugate_by(c);
                if set.insert(y) {
                    orbit.push(y);
                }
            }
        }
        for x in &orbit {
            orbit_of.insert(*x, orbit.len());
        }
        sig.push((e.order(), orbit.len()));
    }
    sig.sort_unstable();
    sig
}

/// An isomorphism N1 → N2 commuting with conjugation by every generator of G.
pub fn g_isomorphic(n1: &PermGroup, n2: &PermGroup, g: &PermGroup) -> Result<bool> {
    if n1.order() != n2.order() {
        return Ok(false);
    }
    for theta in all_isomorphisms(n1, n2, None)? {
        let equivariant = g.generators().iter().all(|x| {
            n1.generators().iter().all(|n| {
                let lhs = theta.apply(&n.conjugate_by(x)).expect("member");
                let rhs = theta.apply(n).expect("member").conjugate_by(x);
                lhs == rhs
            })
        });
        if equivariant {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Class id per record. Almost classical records get their own class; the
/// others are grouped by G-isomorphism. Ids are assigned in record order.
pub fn g_iso_classes(recs: &[HgsRecord], ctx: &ExtensionContext) -> Result<Vec<usize>> {
    if recs.iter().any(|r| !r.belongs_to(ctx)) {
        return Err(Error::MixedContexts);
    }
    let g = ctx.group();
    let mut ids = vec![usize::MAX; recs.len()];
    // class reps bucketed by (label, signature)
    let mut buckets: BTreeMap<(String, Vec<(u64, usize)>), Vec<(usize, usize)>> = BTreeMap::new();
    let mut next = 0;
    for (i, r) in recs.iter().enumerate() {
        if is_almost_classical(r, ctx)? {
            ids[i] = next;
            next += 1;
            continue;
        }
        let key = (r.type_label.clone(), orbit_signature(&r.n_image, g));
        let bucket = buckets.entry(key).or_default();
        let mut hit = None;
        for &(rep, id) in bucket.iter() {
            if g_isomorphic(&recs[rep].n_image, &r.n_image, g)? {
                hit = Some(id);
                break;
            }
        }
        ids[i] = match hit {
            Some(id) => id,
            None => {
                bucket.push((i, next));
                next += 1;
                next - 1
            }
        };
    }
    Ok(ids)
}

/// Fills the flags and class ids of every record of one context.
pub fn classify(recs: &mut [HgsRecord], ctx: &ExtensionContext) -> Result<()> {
    let ids = g_iso_classes(recs, ctx)?;
    let inter = intermediate_subgroup_count(ctx);
    for (r, id) in recs.iter_mut().zip(ids) {
        r.almost_classical = is_almost_classical(r, ctx)?;
        r.bijective_corr = stable_subgroup_count(&r.n_image, ctx.group())? == inter;
        r.class_id = Some(id);
    }
    Ok(())
}
