//! Permutation groups backed by a deterministic Schreier–Sims stabilizer chain.
//!
//! Base points are the smallest points moved by the element that forces a new
//! level, taken in increasing order, so a chain is a pure function of the
//! generator list. Transversals are stored as explicit permutations.

use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::table::ElementTable;

/// Above this order the element table is never materialized.
pub const ELEMENT_TABLE_LIMIT: u128 = 500_000;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    // transversal[x] maps the base point to x
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal[self.base] = Some(Perm::identity(degree));
        self.orbit.clear();
        self.orbit.push(self.base);
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            let ux = self.transversal[x].expect("orbit point has a transversal");
            for g in &self.gens {
                let y = g.image0(x);
                if self.transversal[y].is_none() {
                    self.transversal[y] = Some(g.compose(&ux));
                    self.orbit.push(y);
                }
            }
        }
    }
}

/// Stabilizer chain of a permutation group.
#[derive(Clone, Debug, Default)]
struct Chain {
    levels: Vec<Level>,
}

impl Chain {
    fn build(degree: usize, gens: &[Perm], base_prefix: &[usize]) -> Chain {
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).copied().collect();
        let mut base: Vec<usize> = base_prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.fixes(b)) {
                base.push(g.first_moved0().expect("non-identity"));
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
        for (i, level) in levels.iter_mut().enumerate() {
            level.gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&b| g.fixes(b)))
                .copied()
                .collect();
            level.rebuild_orbit();
        }
        let mut chain = Chain { levels };
        chain.complete(degree);
        // Trailing prefix levels with trivial stabilizers carry no information.
        while chain
            .levels
            .last()
            .is_some_and(|l| l.orbit.len() == 1 && l.gens.is_empty())
        {
            chain.levels.pop();
        }
        chain
    }

    fn complete(&mut self, degree: usize) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &beta in &orbit {
                let u_beta = self.levels[lvl].transversal[beta].expect("orbit");
                for x in &gens {
                    let xb = x.image0(beta);
                    let u_xb = self.levels[lvl].transversal[xb].expect("orbit closed");
                    let xu = x.compose(&u_beta);
                    if xu == u_xb {
                        continue;
                    }
                    let schreier = u_xb.inverse().compose(&xu);
                    let (h, j) = self.strip(&schreier, lvl + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        if j == self.levels.len() {
                            let b = h.first_moved0().expect("non-identity residue");
                            self.levels.push(Level::new(b, degree));
                        }
                        for l in lvl + 1..=j {
                            self.levels[l].gens.push(h);
                            self.levels[l].rebuild_orbit();
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` through the levels starting at `from`. Returns the residue and
    /// the index of the level where sifting stopped (`levels.len()` if it passed).
    fn strip(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = *g;
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image0(level.base);
            match &level.transversal[beta] {
                Some(u) => h = u.inverse().compose(&h),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: Arc<Chain>,
    table: OnceLock<Arc<ElementTable>>,
}

impl PermGroup {
    /// Builds the group generated by `gens`. An empty list gives the trivial group.
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        PermGroup::with_base_prefix(degree, gens, &[])
    }

    /// Builds a chain whose base starts with the given 1-based points.
    pub fn with_base_prefix(degree: usize, gens: Vec<Perm>, prefix: &[usize]) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut prefix0 = Vec::with_capacity(prefix.len());
        for &p in prefix {
            if p == 0 || p > degree {
                return Err(Error::PointOutOfRange { point: p, degree });
            }
            if !prefix0.contains(&(p - 1)) {
                prefix0.push(p - 1);
            }
        }
        let chain = Chain::build(degree, &gens, &prefix0);
        Ok(PermGroup {
            degree,
            gens,
            chain: Arc::new(chain),
            table: OnceLock::new(),
        })
    }

    /// Generator list must be non-empty; the degree is taken from it.
    pub fn from_generators(gens: Vec<Perm>) -> Result<PermGroup> {
        let degree = gens
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::Parse("empty generator list needs an explicit degree".into()))?;
        PermGroup::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn symmetric(degree: usize) -> PermGroup {
        let mut gens = Vec::new();
        if degree >= 2 {
            let cycle: Vec<usize> = (1..=degree).collect();
            gens.push(Perm::from_cycles(degree, &[cycle]).expect("n-cycle"));
            gens.push(Perm::from_cycles(degree, &[vec![1, 2]]).expect("transposition"));
        }
        PermGroup::new(degree, gens).expect("symmetric group")
    }

    pub fn alternating(degree: usize) -> PermGroup {
        let gens = (3..=degree)
            .map(|k| Perm::from_cycles(degree, &[vec![1, 2, k]]).expect("3-cycle"))
            .collect();
        PermGroup::new(degree, gens).expect("alternating group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.levels.is_empty()
    }

    /// Base points, 1-based.
    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base + 1).collect()
    }

    /// Strong generators at the top level of the chain.
    pub fn strong_generators(&self) -> Vec<Perm> {
        self.chain
            .levels
            .first()
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.chain.strip(g, 0);
        j == self.chain.levels.len() && h.is_identity()
    }

    /// Orbit of a 1-based point under the generators, sorted.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        self.check_point(point)?;
        let mut orbit = self.orbit0(point - 1);
        orbit.sort_unstable();
        Ok(orbit.into_iter().map(|x| x + 1).collect())
    }

    pub(crate) fn orbit0(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for g in &self.gens {
                let z = g.image0(y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
        }
        orbit
    }

    /// All orbits with 1-based points, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if seen[x] {
                continue;
            }
            let mut orb = self.orbit0(x);
            orb.iter().for_each(|&y| seen[y] = true);
            orb.sort_unstable();
            out.push(orb.into_iter().map(|y| y + 1).collect());
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit0(0).len() == self.degree
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree as u128
    }

    /// Full stabilizer of a 1-based point.
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.check_point(point)?;
        let chain = if self.chain.levels.first().is_some_and(|l| l.base == point - 1) {
            Arc::clone(&self.chain)
        } else {
            Arc::new(Chain::build(
                self.degree,
                &self.strong_generators_or_gens(),
                &[point - 1],
            ))
        };
        let gens = match chain.levels.first() {
            Some(l) if l.base == point - 1 => chain
                .levels
                .get(1)
                .map(|l1| l1.gens.clone())
                .unwrap_or_default(),
            // The point is fixed by every generator: the chain dropped the level.
            _ => {
                if self.orbit0(point - 1).len() == 1 {
                    self.gens.clone()
                } else {
                    unreachable!("base prefix keeps moved points")
                }
            }
        };
        PermGroup::new(self.degree, gens)
    }

    fn strong_generators_or_gens(&self) -> Vec<Perm> {
        let sg = self.strong_generators();
        if sg.is_empty() {
            self.gens.clone()
        } else {
            sg
        }
    }

    /// Iterates over all elements as products of transversal elements.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter::new(self)
    }

    /// Sorted element table, built once and cached.
    pub fn element_table(&self) -> Result<Arc<ElementTable>> {
        if let Some(t) = self.table.get() {
            return Ok(Arc::clone(t));
        }
        let order = self.order();
        if order > ELEMENT_TABLE_LIMIT {
            return Err(Error::OrderBound {
                order,
                bound: ELEMENT_TABLE_LIMIT,
            });
        }
        let table = Arc::new(ElementTable::new(self.elements().collect()));
        let _ = self.table.set(Arc::clone(&table));
        Ok(Arc::clone(self.table.get().unwrap_or(&table)))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = self.identity();
        for level in &self.chain.levels {
            let x = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.compose(&level.transversal[x].expect("orbit"));
        }
        g
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// Equality as sets of permutations.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// True when conjugation by every generator of `self` maps `other` to itself.
    pub fn normalizes(&self, other: &PermGroup) -> bool {
        self.gens
            .iter()
            .all(|g| other.gens.iter().all(|h| other.contains(&h.conjugate_by(g))))
    }

    /// `c · self · c⁻¹`.
    pub fn conjugate(&self, c: &Perm) -> PermGroup {
        let gens = self.gens.iter().map(|g| g.conjugate_by(c)).collect();
        PermGroup::new(self.degree, gens).expect("conjugate keeps degree")
    }

    /// Same group with a different generator list.
    pub fn regenerated(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        let g = PermGroup::new(self.degree, gens)?;
        debug_assert!(g.same_elements(self));
        Ok(g)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[..i].iter().all(|b| a * b == b * a))
    }

    /// Normal closure of `gens` in this group.
    pub fn normal_closure(&self, gens: &[Perm]) -> PermGroup {
        let mut current = PermGroup::new(self.degree, gens.to_vec()).expect("degree");
        loop {
            let mut extra = Vec::new();
            for g in &self.gens {
                for h in current.generators() {
                    let c = h.conjugate_by(g);
                    if !current.contains(&c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return current;
            }
            let mut all = current.gens.clone();
            all.extend(extra);
            current = PermGroup::new(self.degree, all).expect("degree");
        }
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[..i] {
                let c = a.inverse() * b.inverse() * *a * *b;
                if !c.is_identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_solvable(&self) -> bool {
        let mut g = self.clone();
        loop {
            if g.is_trivial() {
                return true;
            }
            let d = g.derived_subgroup();
            if d.order() == g.order() {
                return false;
            }
            g = d;
        }
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point == 0 || point > self.degree {
            Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            })
        } else {
            Ok(())
        }
    }
}

/// Mixed-radix walk over the transversals of a chain.
pub struct ElementIter<'a> {
    group: &'a PermGroup,
    digits: Vec<usize>,
    // prefix[i] = product of the chosen transversal elements of levels < i
    prefix: Vec<Perm>,
    done: bool,
}

impl<'a> ElementIter<'a> {
    fn new(group: &'a PermGroup) -> Self {
        let levels = &group.chain.levels;
        let mut prefix = vec![group.identity()];
        for level in levels {
            let last = *prefix.last().expect("nonempty");
            prefix.push(last.compose(&level.transversal[level.orbit[0]].expect("orbit")));
        }
        ElementIter {
            group,
            digits: vec![0; levels.len()],
            prefix,
            done: false,
        }
    }
}

impl Iterator for ElementIter<'_> {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        let levels = &self.group.chain.levels;
        let g = *self.prefix.last().expect("nonempty");
        // advance, last level fastest
        let mut i = levels.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < levels[i].orbit.len() {
                break;
            }
            self.digits[i] = 0;
        }
        if !self.done {
            for j in i..levels.len() {
                let t = levels[j].transversal[levels[j].orbit[self.digits[j]]].expect("orbit");
                self.prefix[j + 1] = self.prefix[j].compose(&t);
            }
        }
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (0, usize::try_from(self.group.order()).ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(n, s).unwrap()
    }

    #[test]
    fn symmetric_four_has_order_24() {
        let g = PermGroup::new(4, vec![p(4, "(1,2)"), p(4, "(1,2,3,4)")]).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.elements().count(), 24);
    }

    #[test]
    fn seven_cycle_is_regular() {
        let g = PermGroup::new(7, vec![p(7, "(1,2,3,4,5,6,7)")]).unwrap();
        assert_eq!(g.order(), 7);
        assert!(g.is_regular());
        assert_eq!(g.orbit(1).unwrap(), (1..=7).collect::<Vec<_>>());
    }

    #[test]
    fn stabilizer_in_s4() {
        let g = PermGroup::symmetric(4);
        let s = g.point_stabilizer(1).unwrap();
        assert_eq!(s.order(), 6);
        assert!(s.generators().iter().all(|x| x.apply(1).unwrap() == 1));
        let s3 = g.point_stabilizer(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.elements().all(|x| x.apply(3).unwrap() == 3));
        assert!(g.point_stabilizer(5).is_err());
    }

    #[test]
    fn stabilizer_of_fixed_point_is_whole_group() {
        let g = PermGroup::new(5, vec![p(5, "(1,2,3)")]).unwrap();
        assert_eq!(g.point_stabilizer(5).unwrap().order(), 3);
        assert_eq!(g.point_stabilizer(2).unwrap().order(), 1);
    }

    #[test]
    fn degree_mismatch_rejected() {
        assert!(matches!(
            PermGroup::new(4, vec![p(5, "(1,2)")]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(3, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Perm::identity(3)));
        assert_eq!(g.elements().count(), 1);
        assert!(!g.is_transitive());
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        for n in 1..=9u128 {
            let fact: u128 = (1..=n).product();
            assert_eq!(PermGroup::symmetric(n as usize).order(), fact);
            if n >= 2 {
                assert_eq!(PermGroup::alternating(n as usize).order(), fact / 2);
            }
        }
        assert_eq!(PermGroup::symmetric(20).order(), 2_432_902_008_176_640_000);
    }

    #[test]
    fn membership_distinguishes_parity() {
        let a5 = PermGroup::alternating(5);
        assert!(a5.contains(&p(5, "(1,2,3,4,5)")));
        assert!(!a5.contains(&p(5, "(1,2)")));
        assert!(!a5.contains(&p(6, "(1,2,3)")));
    }

    #[test]
    fn random_elements_are_members() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let g = PermGroup::new(8, vec![p(8, "(1,2,3,4)(5,6)"), p(8, "(2,7)(3,8)")]).unwrap();
        for _ in 0..100 {
            assert!(g.contains(&g.random_element(&mut rng)));
        }
    }

    #[test]
    fn solvability() {
        assert!(PermGroup::symmetric(4).is_solvable());
        assert!(!PermGroup::alternating(5).is_solvable());
        assert_eq!(PermGroup::symmetric(4).derived_subgroup().order(), 12);
    }
}
