//! Hopf Galois structures on a separable extension, encoded as regular
//! subgroups of S_g normalized by the Galois group acting on cosets.

mod direct;
mod engine;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

pub use direct::{direct_hgs, direct_hgs_capped, DIRECT_DEFAULT_CAP, DIRECT_MAX_CAP};
pub use engine::{find_hgs, HgsEngine, HgsOutput};

use crate::algos::{aut_stabilizing, GroupIso};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::holomorph::{left_regular, left_regular_capped};
use crate::perm::Perm;

static NEXT_CONTEXT: AtomicU64 = AtomicU64::new(1);

/// A transitive group G of degree g with G' the stabilizer of point 1.
#[derive(Clone, Debug)]
pub struct ExtensionContext {
    id: u64,
    g: PermGroup,
    gp: PermGroup,
    coset_reps: Arc<Vec<Perm>>,
    aut: Arc<OnceLock<Vec<GroupIso>>>,
}

impl ExtensionContext {
    pub fn new(g: PermGroup) -> Result<ExtensionContext> {
        if !g.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let gp = g.point_stabilizer(1)?;
        let degree = g.degree();
        let mut reps: Vec<Option<Perm>> = vec![None; degree];
        reps[0] = Some(g.identity());
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            let ta = reps[a].expect("visited");
            for x in g.generators() {
                let b = x.image0(a);
                if reps[b].is_none() {
                    reps[b] = Some(x.compose(&ta));
                    queue.push(b);
                }
            }
        }
        let coset_reps = reps.into_iter().map(|r| r.expect("transitive")).collect();
        Ok(ExtensionContext {
            id: NEXT_CONTEXT.fetch_add(1, Ordering::Relaxed),
            g,
            gp,
            coset_reps: Arc::new(coset_reps),
            aut: Arc::new(OnceLock::new()),
        })
    }

    /// The Galois case: λ(G) acting on G itself, G' trivial.
    pub fn galois(group: &PermGroup) -> Result<ExtensionContext> {
        ExtensionContext::new(left_regular(group)?.image().clone())
    }

    /// Galois case for groups larger than the default degree cap.
    pub fn galois_capped(group: &PermGroup, cap: usize) -> Result<ExtensionContext> {
        ExtensionContext::new(left_regular_capped(group, cap)?.image().clone())
    }

    pub fn group(&self) -> &PermGroup {
        &self.g
    }

    pub fn stabilizer(&self) -> &PermGroup {
        &self.gp
    }

    pub fn degree(&self) -> usize {
        self.g.degree()
    }

    pub fn is_galois(&self) -> bool {
        self.gp.is_trivial()
    }

    /// t_j with t_j(1) = j, for j = 1..=g.
    pub fn coset_rep(&self, j: usize) -> &Perm {
        &self.coset_reps[j - 1]
    }

    pub(crate) fn coset_reps(&self) -> &[Perm] {
        &self.coset_reps
    }

    /// Aut(G, G'): automorphisms of G mapping G' onto itself. Computed once.
    pub fn aut_pair(&self) -> Result<&[GroupIso]> {
        if let Some(a) = self.aut.get() {
            return Ok(a);
        }
        let autos = aut_stabilizing(&self.g, &self.gp)?;
        let _ = self.aut.set(autos);
        Ok(self.aut.get().expect("just set"))
    }

    pub(crate) fn id(&self) -> u64 {
        self.id
    }
}

/// One Hopf Galois structure.
#[derive(Clone, Debug)]
pub struct HgsRecord {
    pub n_image: PermGroup,
    pub type_label: String,
    pub almost_classical: bool,
    pub bijective_corr: bool,
    /// G-isomorphism class, assigned by the classification step.
    pub class_id: Option<usize>,
    ctx_id: u64,
    key: Vec<Perm>,
}

impl HgsRecord {
    pub(crate) fn new(ctx: &ExtensionContext, n_image: PermGroup, label: &str) -> HgsRecord {
        let mut key: Vec<Perm> = n_image.elements().collect();
        key.sort_unstable();
        HgsRecord {
            n_image,
            type_label: label.to_string(),
            almost_classical: false,
            bijective_corr: false,
            class_id: None,
            ctx_id: ctx.id(),
            key,
        }
    }

    /// Sorted element list of N.
    pub fn key(&self) -> &[Perm] {
        &self.key
    }

    pub fn belongs_to(&self, ctx: &ExtensionContext) -> bool {
        self.ctx_id == ctx.id()
    }
}

impl PartialEq for HgsRecord {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for HgsRecord {}

/// Sorts records by element list, the canonical order used in reports.
pub fn sort_records(recs: &mut [HgsRecord]) {
    recs.sort_by(|a, b| a.type_label.cmp(&b.type_label).then_with(|| a.key.cmp(&b.key)));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_reps_send_one_to_j() {
        let d8 = PermGroup::new(
            4,
            vec![Perm::parse(4, "(1,2,3,4)").unwrap(), Perm::parse(4, "(2,4)").unwrap()],
        )
        .unwrap();
        let ctx = ExtensionContext::new(d8).unwrap();
        for j in 1..=4 {
            assert_eq!(ctx.coset_rep(j).apply(1).unwrap(), j);
            assert!(ctx.group().contains(ctx.coset_rep(j)));
        }
        assert_eq!(ctx.stabilizer().order(), 2);
        assert_eq!(ctx.aut_pair().unwrap().len(), 2);
        assert!(!ctx.is_galois());
    }

    #[test]
    fn intransitive_rejected() {
        let g = PermGroup::new(4, vec![Perm::parse(4, "(1,2)").unwrap()]).unwrap();
        assert!(matches!(ExtensionContext::new(g), Err(Error::NotTransitive)));
    }
}
