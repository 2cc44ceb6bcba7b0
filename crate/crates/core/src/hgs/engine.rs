//! Enumeration through embeddings of G into Hol(N).
//!
//! Transitive subgroups G* ≤ Hol(N) isomorphic to G, with Stab_{G*}(1) ≅ G'
//! under the same isomorphism, give structures of type N. An embedding
//! β: G → G* yields φ(j) = β(t_j)(1) and the regular group φ⁻¹λ(N)φ.
//! Replacing G* by a conjugate under Hol(N) gives back the same set of
//! structures, so one representative per conjugacy class is enough; two
//! embeddings give the same structure exactly when they differ by an element
//! of Aut(N) normalizing G*.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rustc_hash::FxHashSet;

use super::{ExtensionContext, HgsRecord};
use crate::algos::stats::{histogram_dominated, order_histogram};
use crate::algos::{find_isomorphism_mapping, LatticeOptions, SubgroupLattice};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::holomorph::Holomorph;
use crate::perm::{Perm, MAX_DEGREE};
use crate::zoo::GroupType;

/// A transitive subgroup class of Hol(N) of a given order.
#[derive(Debug)]
struct StarClass {
    group: PermGroup,
    stab: PermGroup,
    /// |N_{Aut(N)}(G*)|, with Aut(N) = Stab_{Hol(N)}(1).
    aut_normalizer: u128,
}

type Hist = BTreeMap<u64, usize>;

struct TypeData {
    hol: Holomorph,
    hist: Hist,
    aut_part: Vec<Perm>,
    by_order: Mutex<HashMap<(u128, Vec<(u64, usize)>), Arc<Vec<StarClass>>>>,
}

/// Caches holomorphs and their transitive subgroup classes across contexts.
pub struct HgsEngine {
    types: Mutex<HashMap<(usize, String), Arc<TypeData>>>,
    deadline: Option<Instant>,
    started: Instant,
    budget: Option<f64>,
}

/// Result of one (context, type) run.
#[derive(Clone, Debug)]
pub struct HgsOutput {
    pub records: Vec<HgsRecord>,
    /// Embeddings β tried before deduplication.
    pub beta_count: usize,
    /// Conjugacy classes of transitive G* ≤ Hol(N) that matched (G, G').
    pub star_classes: usize,
}

impl Default for HgsEngine {
    fn default() -> Self {
        HgsEngine::new(None)
    }
}

impl HgsEngine {
    /// `budget` is a wall-clock limit in seconds for all work done through this engine.
    pub fn new(budget: Option<f64>) -> HgsEngine {
        let started = Instant::now();
        HgsEngine {
            types: Mutex::new(HashMap::new()),
            deadline: budget.map(|s| started + std::time::Duration::from_secs_f64(s)),
            started,
            budget,
        }
    }

    pub fn check_budget(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::TimeBudget(self.budget.unwrap_or(0.0))),
            _ => Ok(()),
        }
    }

    pub fn elapsed(&self) -> f64 {
        self.started.elapsed().as_secs_f64()
    }

    fn type_data(&self, ty: &GroupType) -> Result<Arc<TypeData>> {
        let key = (ty.order, ty.label.clone());
        if let Some(t) = self.types.lock().expect("lock").get(&key) {
            return Ok(Arc::clone(t));
        }
        let hol = Holomorph::with_cap(ty.abstract_group(), MAX_DEGREE)?;
        let hist = order_histogram(hol.group())?;
        let aut_part = hol.aut_part()?.elements().collect();
        let data = Arc::new(TypeData {
            hol,
            hist,
            aut_part,
            by_order: Mutex::new(HashMap::new()),
        });
        self.types
            .lock()
            .expect("lock")
            .insert(key, Arc::clone(&data));
        Ok(data)
    }

    /// |Hol(N)| for a type.
    pub fn holomorph_order(&self, ty: &GroupType) -> Result<u128> {
        Ok(self.type_data(ty)?.hol.group().order())
    }

    fn star_classes(&self, data: &TypeData, order: u128, hist: &Hist) -> Result<Arc<Vec<StarClass>>> {
        let key = (order, hist.iter().map(|(a, b)| (*a, *b)).collect::<Vec<_>>());
        if let Some(c) = data.by_order.lock().expect("lock").get(&key) {
            return Ok(Arc::clone(c));
        }
        let hol = data.hol.group();
        let reps: Vec<PermGroup> = if order == hol.order() {
            vec![hol.clone()]
        } else if hol.order() % order != 0 || !histogram_dominated(hist, &data.hist) {
            Vec::new()
        } else {
            let opts = LatticeOptions {
                order_divides: Some(order),
                dominated_by: Some(hist.clone()),
                bound: None,
            };
            let lattice = SubgroupLattice::build(hol, &opts)?;
            lattice
                .classes()
                .iter()
                .filter(|c| c.order == order && c.rep.is_transitive())
                .map(|c| c.rep.clone())
                .collect()
        };
        let mut out = Vec::with_capacity(reps.len());
        for group in reps {
            self.check_budget()?;
            if order_histogram(&group)? != *hist {
                continue;
            }
            let stab = group.point_stabilizer(1)?;
            let aut_normalizer = data
                .aut_part
                .iter()
                .filter(|d| {
                    group
                        .generators()
                        .iter()
                        .all(|x| group.contains(&x.conjugate_by(d)))
                })
                .count() as u128;
            out.push(StarClass {
                group,
                stab,
                aut_normalizer,
            });
        }
        let out = Arc::new(out);
        data.by_order
            .lock()
            .expect("lock")
            .insert(key, Arc::clone(&out));
        Ok(out)
    }

    /// All structures of type `ty` on the context, with diagnostics.
    pub fn run(&self, ctx: &ExtensionContext, ty: &GroupType) -> Result<HgsOutput> {
        let g = ctx.degree();
        if ty.order != g {
            return Err(Error::TypeOrderMismatch {
                type_order: ty.order,
                degree: g,
            });
        }
        let mut out = HgsOutput {
            records: Vec::new(),
            beta_count: 0,
            star_classes: 0,
        };
        let data = self.type_data(ty)?;
        let order = ctx.group().order();
        if order > data.hol.group().order() {
            return Ok(out);
        }
        let hist = order_histogram(ctx.group())?;
        let classes = self.star_classes(&data, order, &hist)?;
        let lambda_gens: Vec<Perm> = data.hol.lambda().generators().to_vec();
        let mut seen: FxHashSet<Vec<Perm>> = FxHashSet::default();
        for class in classes.iter() {
            self.check_budget()?;
            let Some(h) = find_isomorphism_mapping(&class.group, &class.stab, ctx.group(), ctx.stabilizer())?
            else {
                continue;
            };
            out.star_classes += 1;
            let beta0 = h.inverse()?;
            let autos = ctx.aut_pair()?;
            let expected = autos.len() as u128 / class.aut_normalizer;
            let mut found = 0u128;
            for (k, a) in autos.iter().enumerate() {
                if found == expected {
                    break;
                }
                if k % 256 == 255 {
                    self.check_budget()?;
                }
                out.beta_count += 1;
                let beta = beta0.compose(a);
                let phi_imgs: Vec<u8> = ctx
                    .coset_reps()
                    .iter()
                    .map(|t| beta.apply(t).expect("member of G").image0(0) as u8)
                    .collect();
                let phi = Perm::from_images0(&phi_imgs);
                let phi_inv = phi.inverse();
                let gens: Vec<Perm> = lambda_gens.iter().map(|x| x.conjugate_by(&phi_inv)).collect();
                let n = PermGroup::new(g, gens)?;
                let rec = HgsRecord::new(ctx, n, &ty.label);
                if seen.insert(rec.key.clone()) {
                    found += 1;
                    out.records.push(rec);
                }
            }
            debug_assert_eq!(found, expected);
        }
        super::sort_records(&mut out.records);
        Ok(out)
    }
}

fn default_engine() -> &'static HgsEngine {
    static ENGINE: OnceLock<HgsEngine> = OnceLock::new();
    ENGINE.get_or_init(HgsEngine::default)
}

/// All regular subgroups of S_g of type `ty` normalized by the context group,
/// using a shared process-wide cache.
pub fn find_hgs(ctx: &ExtensionContext, ty: &GroupType) -> Result<Vec<HgsRecord>> {
    Ok(default_engine().run(ctx, ty)?.records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holomorph::{opposite, right_regular};
    use crate::zoo::groups_of_order;

    fn total(ctx: &ExtensionContext) -> usize {
        groups_of_order(ctx.degree())
            .unwrap()
            .iter()
            .map(|t| find_hgs(ctx, t).unwrap().len())
            .sum()
    }

    #[test]
    fn galois_c4() {
        let c4 = groups_of_order(4).unwrap()[0].abstract_group().clone();
        let ctx = ExtensionContext::galois(&c4).unwrap();
        let per_type: Vec<usize> = groups_of_order(4)
            .unwrap()
            .iter()
            .map(|t| find_hgs(&ctx, t).unwrap().len())
            .collect();
        assert_eq!(per_type, vec![1, 1]);
    }

    #[test]
    fn galois_s3_contains_classical() {
        let s3 = groups_of_order(6).unwrap()[1].abstract_group().clone();
        let ctx = ExtensionContext::galois(&s3).unwrap();
        let d6 = &groups_of_order(6).unwrap()[1];
        let recs = find_hgs(&ctx, d6).unwrap();
        let rho = opposite(ctx.group()).unwrap();
        assert!(recs.iter().any(|r| r.n_image.same_elements(&rho)));
        assert!(recs.iter().any(|r| r.n_image.same_elements(ctx.group())));
        assert_eq!(rho.order(), right_regular(&s3).unwrap().image().order());
        for r in &recs {
            assert!(r.n_image.is_regular());
            assert!(ctx.group().normalizes(&r.n_image));
        }
        assert_eq!(total(&ctx), 5);
    }

    #[test]
    fn type_order_checked() {
        let ctx = ExtensionContext::galois(groups_of_order(4).unwrap()[0].abstract_group()).unwrap();
        let t = &groups_of_order(6).unwrap()[0];
        assert!(matches!(find_hgs(&ctx, t), Err(Error::TypeOrderMismatch { .. })));
    }
}
