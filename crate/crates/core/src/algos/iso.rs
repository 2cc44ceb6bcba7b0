//! Isomorphism and automorphism search by backtracking over generator images.
//!
//! The source group gets a short generating sequence; each generator's image
//! is chosen among target elements of the same order and conjugacy-class
//! size, pairs are pruned by the orders of their products, and every prefix
//! is checked to extend to a homomorphism on the subgroup it generates.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::algos::stats::{class_sizes, conjugacy_class_ids};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::table::ElementTable;

/// Default bound on the order of groups whose full automorphism list is built.
pub const AUT_ORDER_BOUND: u128 = 10_000;

/// A group with a fixed generator sequence and a spanning tree of its Cayley graph.
pub(crate) struct Frame {
    group: PermGroup,
    table: Arc<ElementTable>,
    // right multiplication by generator s: rmul[s][e] = index of e ∘ gen_s
    rmul: Vec<Vec<u32>>,
    // spanning tree: element e = parent ∘ gen, identity has no parent
    parent: Vec<(u32, u8)>,
    bfs: Vec<u32>,
}

impl Frame {
    pub(crate) fn new(group: PermGroup) -> Result<Frame> {
        let table = group.element_table()?;
        let n = table.len();
        let rmul: Vec<Vec<u32>> = group
            .generators()
            .iter()
            .map(|s| {
                table
                    .elements()
                    .iter()
                    .map(|e| table.index_of(&e.compose(s)).expect("closed"))
                    .collect()
            })
            .collect();
        let mut parent = vec![(u32::MAX, 0u8); n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut bfs = vec![0u32];
        let mut head = 0;
        while head < bfs.len() {
            let e = bfs[head];
            head += 1;
            for (s, row) in rmul.iter().enumerate() {
                let f = row[e as usize] as usize;
                if !seen[f] {
                    seen[f] = true;
                    parent[f] = (e, s as u8);
                    bfs.push(f as u32);
                }
            }
        }
        debug_assert_eq!(bfs.len(), n, "generators generate the group");
        Ok(Frame {
            group,
            table,
            rmul,
            parent,
            bfs,
        })
    }

    /// Images of every element (table order) under `gen_s ↦ images[s]`, or
    /// `None` when the assignment does not extend to a homomorphism.
    pub(crate) fn extend(&self, images: &[Perm]) -> Option<Vec<Perm>> {
        debug_assert_eq!(images.len(), self.rmul.len());
        let n = self.table.len();
        let id = Perm::identity(images.first().map_or(self.group.degree(), |p| p.degree()));
        let mut img: Vec<Option<Perm>> = vec![None; n];
        img[0] = Some(id);
        for &e in &self.bfs {
            let ie = img[e as usize].expect("bfs order");
            for (s, row) in self.rmul.iter().enumerate() {
                let f = row[e as usize] as usize;
                let v = ie.compose(&images[s]);
                match img[f] {
                    None => img[f] = Some(v),
                    Some(w) if w == v => {}
                    Some(_) => return None,
                }
            }
        }
        Some(img.into_iter().map(|x| x.expect("all reached")).collect())
    }

    /// Image of element `idx` under `gen_s ↦ images[s]`, assuming a homomorphism.
    pub(crate) fn eval(&self, images: &[Perm], idx: u32) -> Perm {
        let mut path = Vec::new();
        let mut e = idx;
        while e != 0 {
            let (p, s) = self.parent[e as usize];
            path.push(s);
            e = p;
        }
        let mut acc = Perm::identity(images.first().map_or(self.group.degree(), |p| p.degree()));
        for &s in path.iter().rev() {
            acc = acc.compose(&images[s as usize]);
        }
        acc
    }
}

/// A homomorphism given by the images of the source's generators.
#[derive(Clone)]
pub struct GroupIso {
    source: PermGroup,
    target: PermGroup,
    gen_images: Vec<Perm>,
    frame: Arc<Frame>,
}

impl fmt::Debug for GroupIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupIso")
            .field("source_gens", &self.source.generators())
            .field("gen_images", &self.gen_images)
            .finish()
    }
}

impl GroupIso {
    /// Checks that the images define an isomorphism from `source` onto `target`.
    pub fn new(source: PermGroup, target: PermGroup, gen_images: Vec<Perm>) -> Result<GroupIso> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::Parse("one image per source generator required".into()));
        }
        if !gen_images.iter().all(|g| target.contains(g)) {
            return Err(Error::NotSubgroup);
        }
        let frame = Arc::new(Frame::new(source.clone())?);
        let images = frame
            .extend(&gen_images)
            .ok_or_else(|| Error::Unsupported("images do not define a homomorphism".into()))?;
        let injective = images.iter().skip(1).all(|p| !p.is_identity());
        if !injective || source.order() != target.order() {
            return Err(Error::Unsupported("homomorphism is not bijective".into()));
        }
        Ok(GroupIso {
            source,
            target,
            gen_images,
            frame,
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn gen_images(&self) -> &[Perm] {
        &self.gen_images
    }

    /// Image of an element of the source.
    pub fn apply(&self, x: &Perm) -> Option<Perm> {
        let idx = self.frame.table.index_of(x)?;
        Some(self.frame.eval(&self.gen_images, idx))
    }

    /// Images of all source elements in source table order.
    pub fn element_images(&self) -> Vec<Perm> {
        self.frame.extend(&self.gen_images).expect("verified homomorphism")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupIso) -> GroupIso {
        let gen_images = other
            .gen_images
            .iter()
            .map(|x| self.apply(x).expect("other maps into self's source"))
            .collect();
        GroupIso {
            source: other.source.clone(),
            target: self.target.clone(),
            gen_images,
            frame: Arc::clone(&other.frame),
        }
    }

    pub fn inverse(&self) -> Result<GroupIso> {
        let images = self.element_images();
        let back: FxHashMap<Perm, Perm> = images
            .iter()
            .zip(self.frame.table.elements())
            .map(|(y, x)| (*y, *x))
            .collect();
        let gen_images = self
            .target
            .generators()
            .iter()
            .map(|g| back[g])
            .collect();
        let frame = Arc::new(Frame::new(self.target.clone())?);
        Ok(GroupIso {
            source: self.target.clone(),
            target: self.source.clone(),
            gen_images,
            frame,
        })
    }

    /// Image of a subgroup of the source.
    pub fn map_subgroup(&self, h: &PermGroup) -> PermGroup {
        let gens = h
            .generators()
            .iter()
            .map(|x| self.apply(x).expect("subgroup of source"))
            .collect();
        PermGroup::new(self.target.degree(), gens).expect("degree")
    }

    pub fn is_identity(&self) -> bool {
        self.source.generators().iter().zip(&self.gen_images).all(|(a, b)| a == b)
    }

    /// Same map as `other` (both must share source and target).
    pub fn same_map(&self, other: &GroupIso) -> bool {
        self.source
            .generators()
            .iter()
            .all(|x| self.apply(x) == other.apply(x))
            && other
                .source
                .generators()
                .iter()
                .all(|x| self.apply(x) == other.apply(x))
    }
}

/// The automorphism group as an explicit list of automorphisms.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub base: PermGroup,
    pub autos: Vec<GroupIso>,
    pub order: u128,
}

/// Chooses a short generating sequence starting with `start`, preferring
/// elements whose (order, class size) signature is rare in the group.
fn generating_sequence(
    g: &PermGroup,
    table: &ElementTable,
    class_size: &[u32],
    start: &[Perm],
) -> Vec<Perm> {
    let degree = g.degree();
    let mut signature_count: FxHashMap<(u64, u32), u32> = FxHashMap::default();
    let sigs: Vec<(u64, u32)> = table
        .elements()
        .iter()
        .zip(class_size)
        .map(|(e, &c)| (e.order(), c))
        .collect();
    for s in &sigs {
        *signature_count.entry(*s).or_insert(0) += 1;
    }
    let mut ranked: Vec<u32> = (1..table.len() as u32).collect();
    ranked.sort_by_key(|&i| {
        let s = sigs[i as usize];
        (signature_count[&s], std::cmp::Reverse(s.0), i)
    });
    let mut seq: Vec<Perm> = start.iter().filter(|p| !p.is_identity()).copied().collect();
    let mut current = PermGroup::new(degree, seq.clone()).expect("degree");
    while current.order() < g.order() {
        let mut best: Option<(u128, Perm)> = None;
        for &i in ranked.iter().filter(|&&i| !current.contains(table.get(i))).take(48) {
            let x = *table.get(i);
            let mut gens = seq.clone();
            gens.push(x);
            let o = PermGroup::new(degree, gens).expect("degree").order();
            if best.as_ref().is_none_or(|(bo, _)| o > *bo) {
                best = Some((o, x));
            }
            if o == g.order() {
                break;
            }
        }
        let (_, x) = best.expect("group larger than current subgroup");
        seq.push(x);
        current = PermGroup::new(degree, seq.clone()).expect("degree");
    }
    seq
}

/// Backtracking search for isomorphisms `A → B`, optionally sending a subgroup
/// `A1` onto `B1`.
struct IsoSearch {
    gens: Vec<Perm>,
    frames: Vec<Frame>,
    pair_orders: Vec<Vec<(u64, bool)>>,
    candidates: Vec<Vec<Perm>>,
    source: PermGroup,
    target: PermGroup,
}

impl IsoSearch {
    fn new(
        a: &PermGroup,
        b: &PermGroup,
        subgroups: Option<(&PermGroup, &PermGroup)>,
        first_up_to_conjugacy: bool,
    ) -> Result<Option<IsoSearch>> {
        if a.order() != b.order() {
            return Ok(None);
        }
        if let Some((a1, b1)) = subgroups {
            if a1.order() != b1.order() || !a1.is_subgroup_of(a) || !b1.is_subgroup_of(b) {
                return Ok(None);
            }
        }
        let ta = a.element_table()?;
        let tb = b.element_table()?;
        let ids_a = conjugacy_class_ids(a, &ta);
        let ids_b = conjugacy_class_ids(b, &tb);
        let sizes_a = class_sizes(&ids_a);
        let sizes_b = class_sizes(&ids_b);

        let mut sig_a: Vec<(u64, u32)> = ta
            .elements()
            .iter()
            .zip(&sizes_a)
            .map(|(e, &c)| (e.order(), c))
            .collect();
        let mut sig_b: Vec<(u64, u32)> = tb
            .elements()
            .iter()
            .zip(&sizes_b)
            .map(|(e, &c)| (e.order(), c))
            .collect();
        let by_sig_b: Vec<(u64, u32)> = sig_b.clone();
        sig_a.sort_unstable();
        sig_b.sort_unstable();
        if sig_a != sig_b {
            return Ok(None);
        }

        let (start, m) = match subgroups {
            Some((a1, _)) if !a1.is_trivial() => {
                let t1 = a1.element_table()?;
                let ids1 = conjugacy_class_ids(a1, &t1);
                let seq1 = generating_sequence(a1, &t1, &class_sizes(&ids1), &[]);
                let m = seq1.len();
                (seq1, m)
            }
            _ => (Vec::new(), 0),
        };
        let gens = generating_sequence(a, &ta, &sizes_a, &start);

        let mut frames = Vec::with_capacity(gens.len());
        for i in 0..gens.len() {
            frames.push(Frame::new(
                PermGroup::new(a.degree(), gens[..=i].to_vec()).expect("degree"),
            )?);
        }
        let pair_orders = (0..gens.len())
            .map(|i| {
                (0..i)
                    .map(|j| {
                        let p = gens[j].compose(&gens[i]);
                        (p.order(), p == gens[i].compose(&gens[j]))
                    })
                    .collect()
            })
            .collect();

        let mut candidates = Vec::with_capacity(gens.len());
        for (i, x) in gens.iter().enumerate() {
            let ix = ta.index_of(x).expect("member") as usize;
            let want = (x.order(), sizes_a[ix]);
            let mut seen_class = rustc_hash::FxHashSet::default();
            let mut list = Vec::new();
            for (k, y) in tb.elements().iter().enumerate() {
                if by_sig_b[k] != want {
                    continue;
                }
                if i < m {
                    let (_, b1) = subgroups.expect("m > 0 only with subgroups");
                    if !b1.contains(y) {
                        continue;
                    }
                }
                if i == 0 && first_up_to_conjugacy && subgroups.is_none() && !seen_class.insert(ids_b[k]) {
                    continue;
                }
                list.push(*y);
            }
            candidates.push(list);
        }
        let source = PermGroup::new(a.degree(), gens.clone())?;
        Ok(Some(IsoSearch {
            gens,
            frames,
            pair_orders,
            candidates,
            source,
            target: b.clone(),
        }))
    }

    fn run(&self, visit: &mut dyn FnMut(&[Perm]) -> ControlFlow<()>) {
        let mut chosen = Vec::with_capacity(self.gens.len());
        let _ = self.descend(0, &mut chosen, visit);
    }

    fn descend(
        &self,
        i: usize,
        chosen: &mut Vec<Perm>,
        visit: &mut dyn FnMut(&[Perm]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == self.gens.len() {
            return visit(chosen);
        }
        let last = i + 1 == self.gens.len();
        'cand: for c in &self.candidates[i] {
            for (j, &(ord, commute)) in self.pair_orders[i].iter().enumerate() {
                let p = chosen[j].compose(c);
                if p.order() != ord || (p == c.compose(&chosen[j])) != commute {
                    continue 'cand;
                }
            }
            chosen.push(*c);
            let ok = match self.frames[i].extend(chosen) {
                None => false,
                Some(images) => !last || images.iter().skip(1).all(|p| !p.is_identity()),
            };
            if ok {
                self.descend(i + 1, chosen, visit)?;
            }
            chosen.pop();
        }
        ControlFlow::Continue(())
    }

    fn into_iso(&self, frame: &Arc<Frame>, images: &[Perm]) -> GroupIso {
        GroupIso {
            source: self.source.clone(),
            target: self.target.clone(),
            gen_images: images.to_vec(),
            frame: Arc::clone(frame),
        }
    }

    fn full_frame(&self) -> Result<Arc<Frame>> {
        Ok(Arc::new(Frame::new(self.source.clone())?))
    }
}

/// Some isomorphism `a → b`, or `None`. Deterministic for fixed inputs.
pub fn find_isomorphism(a: &PermGroup, b: &PermGroup) -> Result<Option<GroupIso>> {
    find_with(a, b, None)
}

/// An isomorphism `a → b` sending `a1` onto `b1`, if one exists.
pub fn find_isomorphism_mapping(
    a: &PermGroup,
    a1: &PermGroup,
    b: &PermGroup,
    b1: &PermGroup,
) -> Result<Option<GroupIso>> {
    find_with(a, b, Some((a1, b1)))
}

fn find_with(
    a: &PermGroup,
    b: &PermGroup,
    subgroups: Option<(&PermGroup, &PermGroup)>,
) -> Result<Option<GroupIso>> {
    if a.order() == 1 && b.order() == 1 {
        let iso = GroupIso::new(a.clone(), b.clone(), vec![b.identity(); a.generators().len()])?;
        return Ok(Some(iso));
    }
    let Some(search) = IsoSearch::new(a, b, subgroups, true)? else {
        return Ok(None);
    };
    let mut found = None;
    search.run(&mut |imgs| {
        found = Some(imgs.to_vec());
        ControlFlow::Break(())
    });
    match found {
        None => Ok(None),
        Some(images) => {
            let frame = search.full_frame()?;
            Ok(Some(search.into_iso(&frame, &images)))
        }
    }
}

/// Every isomorphism `a → b` sending `a1` onto `b1` (all isomorphisms when `None`).
pub fn all_isomorphisms(
    a: &PermGroup,
    b: &PermGroup,
    subgroups: Option<(&PermGroup, &PermGroup)>,
) -> Result<Vec<GroupIso>> {
    if a.order() == 1 && b.order() == 1 {
        return Ok(find_with(a, b, None)?.into_iter().collect());
    }
    let Some(search) = IsoSearch::new(a, b, subgroups, false)? else {
        return Ok(Vec::new());
    };
    let frame = search.full_frame()?;
    let mut out = Vec::new();
    search.run(&mut |imgs| {
        out.push(search.into_iso(&frame, imgs));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// All automorphisms of `g`.
pub fn automorphism_group(g: &PermGroup) -> Result<AutGroup> {
    automorphism_group_bounded(g, AUT_ORDER_BOUND)
}

pub fn automorphism_group_bounded(g: &PermGroup, bound: u128) -> Result<AutGroup> {
    if g.order() > bound {
        return Err(Error::OrderBound {
            order: g.order(),
            bound,
        });
    }
    let autos = all_isomorphisms(g, g, None)?;
    let order = autos.len() as u128;
    Ok(AutGroup {
        base: g.clone(),
        autos,
        order,
    })
}

/// Automorphisms of `g` mapping the subgroup `g1` onto itself.
pub fn aut_stabilizing(g: &PermGroup, g1: &PermGroup) -> Result<Vec<GroupIso>> {
    if !g1.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if g.order() > AUT_ORDER_BOUND {
        return Err(Error::OrderBound {
            order: g.order(),
            bound: AUT_ORDER_BOUND,
        });
    }
    all_isomorphisms(g, g, Some((g1, g1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| Perm::parse(n, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn cyclic_twelve_with_different_generators() {
        let a = grp(12, &["(1,2,3,4,5,6,7,8,9,10,11,12)"]);
        let b = grp(7, &["(1,2,3,4)", "(5,6,7)"]);
        let iso = find_isomorphism(&a, &b).unwrap().expect("C12 ≅ C4×C3");
        for x in a.elements() {
            assert_eq!(iso.apply(&x).unwrap().order(), x.order());
        }
    }

    #[test]
    fn c4_is_not_klein() {
        let c4 = grp(4, &["(1,2,3,4)"]);
        let v4 = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert!(find_isomorphism(&c4, &v4).unwrap().is_none());
        assert!(find_isomorphism(&v4, &c4).unwrap().is_none());
    }

    #[test]
    fn aut_s3_is_s3() {
        let s3 = grp(3, &["(1,2)", "(1,2,3)"]);
        let aut = automorphism_group(&s3).unwrap();
        assert_eq!(aut.order, 6);
    }

    #[test]
    fn aut_stabilizing_transposition() {
        let s3 = grp(3, &["(1,2)", "(1,2,3)"]);
        let c2 = grp(3, &["(1,2)"]);
        let stab = aut_stabilizing(&s3, &c2).unwrap();
        // brute force over the six automorphisms
        let all = automorphism_group(&s3).unwrap();
        let brute = all
            .autos
            .iter()
            .filter(|a| a.map_subgroup(&c2).same_elements(&c2))
            .count();
        assert_eq!(brute, 2);
        assert_eq!(stab.len(), 2);
        assert_eq!(aut_stabilizing(&s3, &PermGroup::trivial(3)).unwrap().len(), 6);
        assert_eq!(aut_stabilizing(&s3, &s3).unwrap().len(), 6);
    }

    #[test]
    fn isomorphism_composition_and_inverse() {
        let d8a = grp(4, &["(1,2,3,4)", "(1,3)"]);
        let d8b = grp(8, &["(1,2,3,4)(5,6,7,8)", "(1,5)(2,8)(3,7)(4,6)"]);
        let f = find_isomorphism(&d8a, &d8b).unwrap().unwrap();
        let g = f.inverse().unwrap();
        let id = g.compose(&f);
        for x in d8a.elements() {
            assert_eq!(id.apply(&x).unwrap(), x);
        }
    }

    #[test]
    fn mapping_constraint_respected() {
        let s4 = PermGroup::symmetric(4);
        let stab1 = s4.point_stabilizer(1).unwrap();
        let stab4 = s4.point_stabilizer(4).unwrap();
        let iso = find_isomorphism_mapping(&s4, &stab1, &s4, &stab4).unwrap().unwrap();
        assert!(iso.map_subgroup(&stab1).same_elements(&stab4));
        // a transitive subgroup cannot go to a point stabilizer
        let c4 = grp(4, &["(1,2,3,4)"]);
        let v4 = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let d8 = grp(4, &["(1,2,3,4)", "(1,3)"]);
        assert!(find_isomorphism_mapping(&d8, &c4, &d8, &v4).unwrap().is_none());
    }
}
