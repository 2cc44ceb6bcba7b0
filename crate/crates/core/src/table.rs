//! Explicit element lists for small groups.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::perm::Perm;

/// Elements of a group sorted lexicographically by image list, so index 0 is
/// the identity and comparing sorted index lists compares element lists.
#[derive(Debug)]
pub struct ElementTable {
    elems: Vec<Perm>,
    index: FxHashMap<Perm, u32>,
}

impl ElementTable {
    pub fn new(mut elems: Vec<Perm>) -> ElementTable {
        elems.sort_unstable();
        elems.dedup();
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, i as u32))
            .collect();
        ElementTable { elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elems
    }

    #[inline]
    pub fn get(&self, i: u32) -> &Perm {
        &self.elems[i as usize]
    }

    #[inline]
    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.index_of(&self.elems[a as usize].compose(&self.elems[b as usize]))
            .expect("closed under multiplication")
    }

    /// Index permutation induced by conjugation with `c` (which must normalize the group).
    pub fn conjugation_map(&self, c: &Perm) -> Vec<u32> {
        self.elems
            .iter()
            .map(|e| {
                self.index_of(&e.conjugate_by(c))
                    .expect("conjugating element normalizes the group")
            })
            .collect()
    }

    /// Bitset of the elements of a subgroup given as a list of members.
    pub fn bitset<'a>(&self, members: impl IntoIterator<Item = &'a Perm>) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for m in members {
            bits.insert(self.index_of(m).expect("member of table") as usize);
        }
        bits
    }

    /// Closure of `gens` under multiplication, as a bitset of indices.
    pub fn closure(&self, start: &FixedBitSet, gens: &[u32]) -> FixedBitSet {
        let mut bits = start.clone();
        bits.insert(0);
        let mut queue: Vec<u32> = bits.ones().map(|i| i as u32).collect();
        for &g in gens {
            if !bits.put(g as usize) {
                queue.push(g);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for &g in gens {
                let f = self.mul(e, g);
                if !bits.put(f as usize) {
                    queue.push(f);
                }
            }
        }
        bits
    }
}
