//! Regular representations, holomorphs and opposite groups.
//!
//! A group N of order m acts on its own element list. Elements are listed in
//! element-table order, so the identity is element 1, and element j sits at
//! point j: the left translation by e_j sends point 1 to point j.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::algos::iso::{automorphism_group_bounded, AutGroup, GroupIso, AUT_ORDER_BOUND};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Perm, DEFAULT_DEGREE_CAP, MAX_DEGREE};
use crate::table::ElementTable;

/// A group together with its image under a regular action on its own elements.
#[derive(Clone, Debug)]
pub struct RegularRep {
    source: PermGroup,
    image: PermGroup,
    table: Arc<ElementTable>,
    // image of every table element, same order
    images: Vec<Perm>,
    index: FxHashMap<Perm, u32>,
}

impl RegularRep {
    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Source element sitting at point `j` (1-based).
    pub fn element(&self, j: usize) -> &Perm {
        self.table.get(j as u32 - 1)
    }

    /// Point (1-based) of a source element.
    pub fn point_of(&self, x: &Perm) -> Option<usize> {
        self.table.index_of(x).map(|i| i as usize + 1)
    }

    /// Image of a source element.
    pub fn map(&self, x: &Perm) -> Option<Perm> {
        self.table.index_of(x).map(|i| self.images[i as usize])
    }

    /// Source element of an image permutation.
    pub fn unmap(&self, y: &Perm) -> Option<&Perm> {
        self.index.get(y).map(|&i| self.table.get(i))
    }

    /// Isomorphism from the source onto the image.
    pub fn iso(&self) -> GroupIso {
        let gen_images = self
            .source
            .generators()
            .iter()
            .map(|g| self.map(g).expect("member"))
            .collect();
        GroupIso::new(self.source.clone(), self.image.clone(), gen_images)
            .expect("regular representation is faithful")
    }

    /// Permutation of the points induced by an automorphism of the source.
    pub fn automorphism_perm(&self, a: &GroupIso) -> Perm {
        let imgs: Vec<u8> = a
            .element_images()
            .iter()
            .map(|y| self.table.index_of(y).expect("automorphism") as u8)
            .collect();
        // element_images follows the source table of `a`, which is this table
        Perm::from_images0(&imgs)
    }
}

fn check_cap(order: u128, cap: usize) -> Result<usize> {
    let cap = cap.min(MAX_DEGREE);
    if order > cap as u128 {
        return Err(Error::DegreeCap {
            degree: usize::try_from(order).unwrap_or(usize::MAX),
            cap,
        });
    }
    Ok(order as usize)
}

fn regular(n: &PermGroup, cap: usize, left: bool) -> Result<RegularRep> {
    let m = check_cap(n.order(), cap)?;
    let table = n.element_table()?;
    let images: Vec<Perm> = table
        .elements()
        .iter()
        .map(|x| {
            let inv = x.inverse();
            let imgs: Vec<u8> = table
                .elements()
                .iter()
                .map(|e| {
                    let y = if left { x.compose(e) } else { e.compose(&inv) };
                    table.index_of(&y).expect("closed") as u8
                })
                .collect();
            Perm::from_images0(&imgs)
        })
        .collect();
    let gens = n
        .generators()
        .iter()
        .map(|g| images[table.index_of(g).expect("generator") as usize])
        .collect();
    let image = PermGroup::new(m, gens)?;
    let index = images
        .iter()
        .enumerate()
        .map(|(i, p)| (*p, i as u32))
        .collect();
    Ok(RegularRep {
        source: n.clone(),
        image,
        table,
        images,
        index,
    })
}

/// λ(N): left translation, point j ↦ point of e_x · e_j.
pub fn left_regular(n: &PermGroup) -> Result<RegularRep> {
    regular(n, DEFAULT_DEGREE_CAP, true)
}

pub fn left_regular_capped(n: &PermGroup, cap: usize) -> Result<RegularRep> {
    regular(n, cap, true)
}

/// ρ(N): right translation, point j ↦ point of e_j · e_x⁻¹.
pub fn right_regular(n: &PermGroup) -> Result<RegularRep> {
    regular(n, DEFAULT_DEGREE_CAP, false)
}

pub fn right_regular_capped(n: &PermGroup, cap: usize) -> Result<RegularRep> {
    regular(n, cap, false)
}

/// Hol(N) = λ(N)·Aut(N) on the points of the left regular representation.
#[derive(Clone, Debug)]
pub struct Holomorph {
    rep: RegularRep,
    aut: AutGroup,
    group: PermGroup,
}

impl Holomorph {
    pub fn new(n: &PermGroup) -> Result<Holomorph> {
        Holomorph::with_cap(n, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(n: &PermGroup, cap: usize) -> Result<Holomorph> {
        let rep = left_regular_capped(n, cap)?;
        let aut = automorphism_group_bounded(n, AUT_ORDER_BOUND.max(n.order()))?;
        let target = n.order() * aut.order;
        let mut gens: Vec<Perm> = rep.image().generators().to_vec();
        let mut group = PermGroup::new(rep.degree(), gens.clone())?;
        for a in &aut.autos {
            if group.order() == target {
                break;
            }
            let p = rep.automorphism_perm(a);
            if !group.contains(&p) {
                gens.push(p);
                group = PermGroup::new(rep.degree(), gens.clone())?;
            }
        }
        debug_assert_eq!(group.order(), target);
        Ok(Holomorph { rep, aut, group })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn regular(&self) -> &RegularRep {
        &self.rep
    }

    /// λ(N) inside Hol(N).
    pub fn lambda(&self) -> &PermGroup {
        self.rep.image()
    }

    pub fn automorphisms(&self) -> &AutGroup {
        &self.aut
    }

    /// The element (n, φ): point of m ↦ point of n·φ(m).
    pub fn element(&self, n: &Perm, phi: &GroupIso) -> Result<Perm> {
        let ln = self.rep.map(n).ok_or(Error::NotSubgroup)?;
        Ok(ln.compose(&self.rep.automorphism_perm(phi)))
    }

    /// Stabilizer of point 1, the copy of Aut(N).
    pub fn aut_part(&self) -> Result<PermGroup> {
        self.group.point_stabilizer(1)
    }
}

/// Convenience wrapper returning only the permutation group Hol(N).
pub fn holomorph(n: &PermGroup) -> Result<PermGroup> {
    Ok(Holomorph::new(n)?.group)
}

/// Centralizer in the full symmetric group of a regular group R: the maps
/// p ↦ m_p(x(1)) for x ∈ R, where m_p is the element of R sending 1 to p.
pub fn opposite(r: &PermGroup) -> Result<PermGroup> {
    if !r.is_regular() {
        return Err(Error::NotRegular);
    }
    let m = r.degree();
    let mut by_point: Vec<Option<Perm>> = vec![None; m];
    for e in r.elements() {
        by_point[e.image0(0)] = Some(e);
    }
    let by_point: Vec<Perm> = by_point.into_iter().map(|p| p.expect("regular")).collect();
    let gens = r
        .generators()
        .iter()
        .map(|x| {
            let x1 = x.image0(0);
            let imgs: Vec<u8> = (0..m).map(|p| by_point[p].image0(x1) as u8).collect();
            Perm::from_images0(&imgs)
        })
        .collect();
    PermGroup::new(m, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algos::stats::center;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| Perm::parse(n, s).unwrap()).collect()).unwrap()
    }

    fn commute_elementwise(a: &PermGroup, b: &PermGroup) -> bool {
        a.generators()
            .iter()
            .all(|x| b.generators().iter().all(|y| x * y == y * x))
    }

    #[test]
    fn abelian_left_equals_right() {
        let c5 = grp(5, &["(1,2,3,4,5)"]);
        let l = left_regular(&c5).unwrap();
        let r = right_regular(&c5).unwrap();
        assert!(l.image().same_elements(r.image()));
        assert!(l.image().is_regular());
    }

    #[test]
    fn s3_left_and_right() {
        let s3 = grp(3, &["(1,2)", "(1,2,3)"]);
        let l = left_regular(&s3).unwrap();
        let r = right_regular(&s3).unwrap();
        assert!(!l.image().same_elements(r.image()));
        assert!(commute_elementwise(l.image(), r.image()));
        for j in 1..=6 {
            let e = l.element(j);
            assert_eq!(l.map(e).unwrap().apply(1).unwrap(), j);
        }
        assert!(l.element(1).is_identity());
        assert!(opposite(l.image()).unwrap().same_elements(r.image()));
    }

    #[test]
    fn cyclic_six_self_opposite() {
        let c6 = left_regular(&grp(6, &["(1,2,3,4,5,6)"])).unwrap();
        assert!(opposite(c6.image()).unwrap().same_elements(c6.image()));
    }

    #[test]
    fn holomorph_orders() {
        let c6 = grp(6, &["(1,2,3,4,5,6)"]);
        let h = Holomorph::new(&c6).unwrap();
        assert_eq!(h.group().order(), 12);
        let stab = h.aut_part().unwrap();
        assert_eq!(stab.order(), 2);
        // exact factorization
        let l = h.lambda();
        assert!(stab.elements().filter(|x| l.contains(x)).count() == 1);
        let s3 = grp(3, &["(1,2)", "(1,2,3)"]);
        assert_eq!(holomorph(&s3).unwrap().order(), 36);
    }

    #[test]
    fn d18_regular_reps() {
        let d18 = grp(9, &["(1,2,3,4,5,6,7,8,9)", "(2,9)(3,8)(4,7)(5,6)"]);
        let l = left_regular(&d18).unwrap();
        let r = right_regular(&d18).unwrap();
        assert_eq!(l.degree(), 18);
        let common = l.image().elements().filter(|x| r.image().contains(x)).count();
        assert_eq!(common as u128, center(&d18).unwrap().order());
        assert_eq!(common, 1);
        let opp = opposite(r.image()).unwrap();
        assert!(opp.same_elements(l.image()));
        assert_eq!(opp.order(), 18);
        assert_eq!(holomorph(&d18).unwrap().order(), 972);
    }

    #[test]
    fn cap_enforced() {
        let c40 = grp(40, &["(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29,30,31,32,33,34,35,36,37,38,39,40)"]);
        assert!(matches!(left_regular(&c40), Err(Error::DegreeCap { .. })));
        assert!(left_regular_capped(&c40, 40).is_ok());
        assert!(matches!(opposite(&grp(4, &["(1,2)"])), Err(Error::NotRegular)));
    }
}
