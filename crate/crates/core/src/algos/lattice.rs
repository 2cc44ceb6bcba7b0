//! Subgroup classes by the cyclic extension method.
//!
//! Classes are found layer by layer in increasing order. For a solvable
//! ambient group every subgroup K has a normal subgroup H of prime index, so
//! K = ⟨H, x⟩ with x in the normalizer of H and x^p ∈ H. Otherwise K is
//! reached as ⟨H, x⟩ for a maximal subgroup H of K and any x outside it.
//! Every conjugate of a new class is registered by a 128-bit hash of its
//! element bitset.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::Hasher;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::algos::stats::histogram_dominated;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{is_prime, Perm};
use crate::table::ElementTable;

/// Default bound on the ambient order for a full subgroup listing.
pub const SUBGROUP_ORDER_BOUND: u128 = 2000;

#[derive(Clone, Debug, Default)]
pub struct LatticeOptions {
    /// Keep only subgroups whose order divides this number.
    pub order_divides: Option<u128>,
    /// Keep only subgroups whose element-order histogram is dominated by this one.
    pub dominated_by: Option<BTreeMap<u64, usize>>,
    /// Ambient order bound; `None` means no bound beyond the element table limit.
    pub bound: Option<u128>,
}

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: PermGroup,
    pub order: u128,
    pub class_size: usize,
    bits: FixedBitSet,
}

/// Conjugacy classes of subgroups of an ambient group, ordered by
/// (order, sorted element list of the representative).
pub struct SubgroupLattice {
    ambient: PermGroup,
    table: Arc<ElementTable>,
    conj: Vec<Vec<u32>>,
    gen_idx: Vec<u32>,
    classes: Vec<SubgroupClass>,
}

fn hash128(bits: &FixedBitSet) -> u128 {
    let mut a = DefaultHasher::new();
    let mut b = DefaultHasher::new();
    b.write_u8(0x5a);
    for &w in bits.as_slice() {
        a.write_usize(w);
        b.write_usize(w);
    }
    ((a.finish() as u128) << 64) | b.finish() as u128
}

fn less_by_elements(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    a.ones().lt(b.ones())
}

struct Builder<'a> {
    table: &'a ElementTable,
    n: usize,
    orders: Vec<u64>,
    conj: Vec<Vec<u32>>,
    gen_idx: Vec<u32>,
    // elements generating the same cyclic subgroup share an id
    cyclic_id: Vec<u32>,
    cyclic_members: Vec<Vec<u32>>,
    registry: FxHashSet<u128>,
    rejected: FxHashSet<u128>,
    opts: &'a LatticeOptions,
}

struct Found {
    bits: FixedBitSet,
    gens: Vec<u32>,
    size: usize,
}

impl Builder<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table.mul(a, b)
    }

    fn conjugate_bits(&self, bits: &FixedBitSet, map: &[u32]) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n);
        for e in bits.ones() {
            out.insert(map[e] as usize);
        }
        out
    }

    fn accepted(&self, bits: &FixedBitSet) -> bool {
        let order = bits.count_ones(..) as u128;
        if let Some(m) = self.opts.order_divides {
            if m % order != 0 {
                return false;
            }
        }
        if let Some(big) = &self.opts.dominated_by {
            let mut hist = BTreeMap::new();
            for e in bits.ones() {
                *hist.entry(self.orders[e]).or_insert(0usize) += 1;
            }
            if !histogram_dominated(&hist, big) {
                return false;
            }
        }
        true
    }

    /// Registers the whole conjugacy class of `bits`; returns the canonical
    /// member with generators, or `None` if the class was already known.
    fn register(&mut self, bits: FixedBitSet, gens: Vec<u32>) -> Option<Found> {
        let h = hash128(&bits);
        if self.registry.contains(&h) || self.rejected.contains(&h) {
            return None;
        }
        if !self.accepted(&bits) {
            self.rejected.insert(h);
            return None;
        }
        self.registry.insert(h);
        // conjugators are tracked as table indices
        let mut queue: Vec<(u32, FixedBitSet)> = vec![(0, bits)];
        let mut best = 0usize;
        let mut best_bits = queue[0].1.clone();
        let mut head = 0;
        let mut size = 1;
        while head < queue.len() {
            let c = queue[head].0;
            let cur = std::mem::take(&mut queue[head].1);
            head += 1;
            for (s, map) in self.conj.iter().enumerate() {
                let next = self.conjugate_bits(&cur, map);
                let hn = hash128(&next);
                if self.registry.insert(hn) {
                    size += 1;
                    let c2 = self.mul(self.gen_idx[s], c);
                    if less_by_elements(&next, &best_bits) {
                        best_bits = next.clone();
                        best = queue.len();
                    }
                    queue.push((c2, next));
                }
            }
        }
        let c = *self.table.get(queue[best].0);
        let gens = gens
            .iter()
            .map(|&g| {
                self.table
                    .index_of(&self.table.get(g).conjugate_by(&c))
                    .expect("closed")
            })
            .collect();
        Some(Found {
            bits: best_bits,
            gens,
            size,
        })
    }

    fn normalizer_bits(&self, h: &FixedBitSet, gens: &[u32]) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n);
        for x in 0..self.n {
            let p = self.table.get(x as u32);
            if gens.iter().all(|&g| {
                let c = self.table.get(g).conjugate_by(p);
                h.contains(self.table.index_of(&c).expect("closed") as usize)
            }) {
                out.insert(x);
            }
        }
        out
    }

    /// Extensions ⟨H, x⟩ with H normal of prime index.
    fn solvable_step(&self, h: &FixedBitSet, gens: &[u32]) -> Vec<(FixedBitSet, Vec<u32>)> {
        let norm = self.normalizer_bits(h, gens);
        let mut done = h.clone();
        let mut out = Vec::new();
        let members: Vec<u32> = h.ones().map(|e| e as u32).collect();
        for x in norm.ones() {
            if done.contains(x) {
                continue;
            }
            let x = x as u32;
            let mut y = x;
            let mut k = 1u64;
            while !h.contains(y as usize) {
                y = self.mul(y, x);
                k += 1;
            }
            if !is_prime(k) {
                continue;
            }
            let mut bits = h.clone();
            let mut xi = x;
            for _ in 1..k {
                for &m in &members {
                    bits.insert(self.mul(m, xi) as usize);
                }
                xi = self.mul(xi, x);
            }
            done.union_with(&bits);
            let mut g = gens.to_vec();
            g.push(x);
            out.push((bits, g));
        }
        out
    }

    /// Extensions ⟨H, x⟩ for x outside H, one x per orbit under left and
    /// right H-multiplication, powers coprime to its order and N(H)-conjugation.
    fn general_step(&self, h: &FixedBitSet, gens: &[u32]) -> Vec<(FixedBitSet, Vec<u32>)> {
        let norm = self.normalizer_bits(h, gens);
        let norm_gens = self.generating_subset(&norm);
        let norm_maps: Vec<Vec<u32>> = norm_gens
            .iter()
            .map(|&c| self.table.conjugation_map(self.table.get(c)))
            .collect();
        // left multiplication is conjugation followed by right multiplication
        let side_maps: Vec<Vec<u32>> = gens
            .iter()
            .map(|&g| (0..self.n as u32).map(|y| self.mul(y, g)).collect())
            .collect();
        let mut done = h.clone();
        let mut out = Vec::new();
        for x in 0..self.n {
            if done.contains(x) {
                continue;
            }
            done.insert(x);
            let mut stack = vec![x as u32];
            while let Some(y) = stack.pop() {
                let same_cyclic = &self.cyclic_members[self.cyclic_id[y as usize] as usize];
                let next = side_maps
                    .iter()
                    .chain(&norm_maps)
                    .map(|m| m[y as usize])
                    .chain(same_cyclic.iter().copied());
                for z in next {
                    if !done.put(z as usize) {
                        stack.push(z);
                    }
                }
            }
            let mut g = gens.to_vec();
            g.push(x as u32);
            let k = PermGroup::new(
                self.table.get(0).degree(),
                g.iter().map(|&i| *self.table.get(i)).collect(),
            )
            .expect("degree");
            let mut bits = FixedBitSet::with_capacity(self.n);
            if k.order() as usize == self.n {
                bits.insert_range(..);
            } else {
                for e in k.elements() {
                    bits.insert(self.table.index_of(&e).expect("member") as usize);
                }
            }
            out.push((bits, g));
        }
        out
    }

    fn index_cyclic_subgroups(&mut self) {
        let mut id = vec![u32::MAX; self.n];
        let mut members = Vec::new();
        for e in 0..self.n as u32 {
            if id[e as usize] != u32::MAX {
                continue;
            }
            let o = self.orders[e as usize];
            let mut class = Vec::new();
            let mut p = e;
            for k in 1..=o {
                if crate::perm::gcd(k, o) == 1 {
                    id[p as usize] = members.len() as u32;
                    class.push(p);
                }
                p = self.mul(p, e);
            }
            members.push(class);
        }
        self.cyclic_id = id;
        self.cyclic_members = members;
    }

    /// A short generating set of the subgroup with the given elements. Members
    /// are tried in a scattered but fixed order, which usually finishes after
    /// two or three picks.
    fn generating_subset(&self, bits: &FixedBitSet) -> Vec<u32> {
        let members: Vec<u32> = bits.ones().map(|e| e as u32).collect();
        let target = members.len() as u128;
        let degree = self.table.get(0).degree();
        let mut gens: Vec<u32> = Vec::new();
        let mut current = PermGroup::trivial(degree);
        let m = members.len();
        let stride = (0..)
            .map(|k| m / 2 + 1 + k)
            .find(|&s| crate::perm::gcd(s as u64, m as u64) == 1)
            .expect("coprime stride");
        let mut pos = 0usize;
        for _ in 0..m {
            if current.order() == target {
                break;
            }
            pos = (pos + stride) % m;
            let x = members[pos];
            let p = *self.table.get(x);
            if current.contains(&p) {
                continue;
            }
            gens.push(x);
            current = PermGroup::new(
                degree,
                gens.iter().map(|&g| *self.table.get(g)).collect(),
            )
            .expect("degree");
        }
        gens
    }
}

impl SubgroupLattice {
    pub fn build(ambient: &PermGroup, opts: &LatticeOptions) -> Result<SubgroupLattice> {
        if let Some(bound) = opts.bound {
            if ambient.order() > bound {
                return Err(Error::OrderBound {
                    order: ambient.order(),
                    bound,
                });
            }
        }
        let table = ambient.element_table()?;
        let n = table.len();
        let gen_idx: Vec<u32> = ambient
            .generators()
            .iter()
            .map(|g| table.index_of(g).expect("generator"))
            .collect();
        let conj: Vec<Vec<u32>> = ambient
            .generators()
            .iter()
            .map(|g| table.conjugation_map(g))
            .collect();
        let solvable = ambient.is_solvable();
        let mut b = Builder {
            table: &table,
            n,
            orders: table.elements().iter().map(Perm::order).collect(),
            conj: conj.clone(),
            gen_idx: gen_idx.clone(),
            cyclic_id: Vec::new(),
            cyclic_members: Vec::new(),
            registry: FxHashSet::default(),
            rejected: FxHashSet::default(),
            opts,
        };
        if !solvable {
            b.index_cyclic_subgroups();
        }
        let mut trivial = FixedBitSet::with_capacity(n);
        trivial.insert(0);
        let first = b.register(trivial, Vec::new()).expect("fresh registry");
        let mut found: Vec<Found> = vec![first];
        // pending classes keyed by (order, discovery index)
        let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
        queue.insert((1, 0));
        while let Some((_, i)) = queue.pop_first() {
            let (bits, gens) = (found[i].bits.clone(), found[i].gens.clone());
            let exts = if solvable {
                b.solvable_step(&bits, &gens)
            } else {
                b.general_step(&bits, &gens)
            };
            for (k, kg) in exts {
                if let Some(f) = b.register(k, kg) {
                    queue.insert((f.bits.count_ones(..), found.len()));
                    found.push(f);
                }
            }
        }
        let mut classes: Vec<SubgroupClass> = found
            .into_iter()
            .map(|f| {
                let gens: Vec<Perm> = f.gens.iter().map(|&g| *table.get(g)).collect();
                let rep = PermGroup::new(ambient.degree(), gens).expect("degree");
                SubgroupClass {
                    order: rep.order(),
                    rep,
                    class_size: f.size,
                    bits: f.bits,
                }
            })
            .collect();
        classes.sort_by(|a, b| {
            a.order
                .cmp(&b.order)
                .then_with(|| a.bits.ones().cmp(b.bits.ones()))
        });
        Ok(SubgroupLattice {
            ambient: ambient.clone(),
            table,
            conj,
            gen_idx,
            classes,
        })
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.class_size).sum()
    }

    /// Every conjugate of class `i`, ordered by sorted element list.
    pub fn conjugates(&self, i: usize) -> Vec<PermGroup> {
        let class = &self.classes[i];
        let mut seen: FxHashMap<u128, ()> = FxHashMap::default();
        seen.insert(hash128(&class.bits), ());
        let mut queue: Vec<(Perm, FixedBitSet)> = vec![(self.table.get(0).to_owned(), class.bits.clone())];
        let mut head = 0;
        while head < queue.len() {
            let (c, cur) = queue[head].clone();
            head += 1;
            for (s, map) in self.conj.iter().enumerate() {
                let mut next = FixedBitSet::with_capacity(self.table.len());
                for e in cur.ones() {
                    next.insert(map[e] as usize);
                }
                if seen.insert(hash128(&next), ()).is_none() {
                    let c2 = self.table.get(self.gen_idx[s]).compose(&c);
                    queue.push((c2, next));
                }
            }
        }
        queue.sort_by(|a, b| a.1.ones().cmp(b.1.ones()));
        queue
            .into_iter()
            .map(|(c, _)| class.rep.conjugate(&c))
            .collect()
    }

    pub fn all_subgroups(&self) -> Vec<PermGroup> {
        (0..self.classes.len()).flat_map(|i| self.conjugates(i)).collect()
    }
}

/// One representative per conjugacy class with its class size.
pub fn subgroup_class_reps(g: &PermGroup) -> Result<Vec<(PermGroup, usize)>> {
    let lattice = SubgroupLattice::build(
        g,
        &LatticeOptions {
            bound: Some(SUBGROUP_ORDER_BOUND),
            ..Default::default()
        },
    )?;
    Ok(lattice
        .classes
        .into_iter()
        .map(|c| (c.rep, c.class_size))
        .collect())
}

/// Every subgroup, one entry each.
pub fn all_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let lattice = SubgroupLattice::build(
        g,
        &LatticeOptions {
            bound: Some(SUBGROUP_ORDER_BOUND),
            ..Default::default()
        },
    )?;
    Ok(lattice.all_subgroups())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| Perm::parse(n, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn cyclic_six() {
        let c6 = grp(6, &["(1,2,3,4,5,6)"]);
        assert_eq!(all_subgroups(&c6).unwrap().len(), 4);
        assert_eq!(subgroup_class_reps(&c6).unwrap().len(), 4);
    }

    #[test]
    fn s3_regular() {
        let s3 = grp(6, &["(1,2)(3,4)(5,6)", "(1,3,5)(2,6,4)"]);
        assert!(s3.is_regular());
        let reps = subgroup_class_reps(&s3).unwrap();
        let sizes: Vec<usize> = reps.iter().map(|r| r.1).collect();
        assert_eq!(sizes, vec![1, 3, 1, 1]);
        assert_eq!(all_subgroups(&s3).unwrap().len(), 6);
    }

    #[test]
    fn prime_cyclic() {
        let c7 = grp(7, &["(1,2,3,4,5,6,7)"]);
        assert_eq!(subgroup_class_reps(&c7).unwrap().len(), 2);
    }

    #[test]
    fn symmetric_groups_general_mode() {
        // S_4: 11 classes, 30 subgroups; S_5: 19 classes, 156 subgroups
        let l4 = SubgroupLattice::build(&PermGroup::symmetric(4), &LatticeOptions::default()).unwrap();
        assert_eq!(l4.classes().len(), 11);
        assert_eq!(l4.total_subgroups(), 30);
        let l5 = SubgroupLattice::build(&PermGroup::symmetric(5), &LatticeOptions::default()).unwrap();
        assert_eq!(l5.classes().len(), 19);
        assert_eq!(l5.total_subgroups(), 156);
    }

    #[test]
    fn order_filter() {
        let opts = LatticeOptions {
            order_divides: Some(6),
            ..Default::default()
        };
        let l = SubgroupLattice::build(&PermGroup::symmetric(4), &opts).unwrap();
        let orders: Vec<u128> = l.classes().iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 2, 2, 3, 6]);
    }

    #[test]
    fn reps_are_subgroups_and_conjugates_distinct() {
        let s4 = PermGroup::symmetric(4);
        let l = SubgroupLattice::build(&s4, &LatticeOptions::default()).unwrap();
        let all = l.all_subgroups();
        for h in &all {
            assert!(h.is_subgroup_of(&s4));
        }
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert!(!all[i].same_elements(&all[j]));
            }
        }
    }
}
