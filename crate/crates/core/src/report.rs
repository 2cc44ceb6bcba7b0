//! Per-degree aggregation of structures, in the column order of the usual
//! summary table.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{candidates, enumerate_transitive, Catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::hgs::{direct_hgs_capped, sort_records, ExtensionContext, HgsEngine, HgsRecord, DIRECT_MAX_CAP};
use crate::props::classify;
use crate::zoo::{group_type, groups_of_order, GroupType};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub transitive_total: usize,
    pub max_candidates: usize,
    pub types_count: usize,
    pub hgs_total: usize,
    pub hgs_ac: usize,
    pub bc_total: usize,
    pub bc_not_ac: usize,
    pub giso_total: usize,
    pub giso_galois: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

impl DegreeSummary {
    pub const CSV_HEADER: &'static str =
        "degree,total,max,types,hgs,ac,bc,bc_not_ac,giso,giso_galois";

    /// The nine table columns after the degree.
    pub fn row(&self) -> [usize; 9] {
        [
            self.transitive_total,
            self.max_candidates,
            self.types_count,
            self.hgs_total,
            self.hgs_ac,
            self.bc_total,
            self.bc_not_ac,
            self.giso_total,
            self.giso_galois,
        ]
    }

    pub fn csv_row(&self) -> String {
        let cols: Vec<String> = self.row().iter().map(ToString::to_string).collect();
        format!("{},{}", self.degree, cols.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCounts {
    pub label: String,
    pub hgs: usize,
    pub ac: usize,
    pub bc: usize,
    pub bc_not_ac: usize,
    pub giso: usize,
}

/// Results for one catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDetail {
    pub id: String,
    pub index: usize,
    pub order: u128,
    pub name: Option<String>,
    pub galois: bool,
    pub types: Vec<TypeCounts>,
    pub giso: usize,
}

impl GroupDetail {
    pub fn hgs(&self) -> usize {
        self.types.iter().map(|t| t.hgs).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub summary: DegreeSummary,
    pub groups: Vec<GroupDetail>,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub jobs: usize,
    pub time_budget: Option<f64>,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            jobs: 1,
            time_budget: None,
            timing: false,
        }
    }
}

/// All structures on one catalog entry, classified, one list per type.
pub fn analyze_entry(
    engine: &HgsEngine,
    entry: &CatalogEntry,
    types: &[GroupType],
) -> Result<(GroupDetail, Vec<HgsRecord>)> {
    let ctx = ExtensionContext::new(entry.group()?)?;
    let mut recs: Vec<HgsRecord> = Vec::new();
    for t in types {
        engine.check_budget()?;
        recs.extend(engine.run(&ctx, t)?.records);
    }
    classify(&mut recs, &ctx)?;
    let counts = types
        .iter()
        .map(|t| {
            let of: Vec<&HgsRecord> = recs.iter().filter(|r| r.type_label == t.label).collect();
            let mut classes: Vec<usize> = of.iter().filter_map(|r| r.class_id).collect();
            classes.sort_unstable();
            classes.dedup();
            TypeCounts {
                label: t.label.clone(),
                hgs: of.len(),
                ac: of.iter().filter(|r| r.almost_classical).count(),
                bc: of.iter().filter(|r| r.bijective_corr).count(),
                bc_not_ac: of
                    .iter()
                    .filter(|r| r.bijective_corr && !r.almost_classical)
                    .count(),
                giso: classes.len(),
            }
        })
        .collect::<Vec<_>>();
    let giso = counts.iter().map(|c| c.giso).sum();
    let detail = GroupDetail {
        id: entry.id(),
        index: entry.index,
        order: entry.order,
        name: entry.name.clone(),
        galois: ctx.is_galois(),
        types: counts,
        giso,
    };
    Ok((detail, recs))
}

/// Runs every candidate entry of a catalog against every type of order g.
pub fn run_degree(g: usize, catalog: &Catalog, opts: &RunOptions) -> Result<DegreeReport> {
    if catalog.degree != g {
        return Err(Error::MissingCatalog(g));
    }
    let start = Instant::now();
    let types = groups_of_order(g)?;
    let cand = candidates(g, catalog)?;
    let engine = HgsEngine::new(opts.time_budget);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let groups: Vec<GroupDetail> = pool.install(|| {
        cand.filtered
            .par_iter()
            .map(|e| analyze_entry(&engine, e, &types).map(|(d, _)| d))
            .collect::<Result<Vec<_>>>()
    })?;
    let sum = |f: &dyn Fn(&TypeCounts) -> usize| -> usize {
        groups.iter().flat_map(|d| &d.types).map(f).sum()
    };
    let summary = DegreeSummary {
        degree: g,
        transitive_total: cand.total,
        max_candidates: cand.max_count,
        types_count: types.len(),
        hgs_total: sum(&|t| t.hgs),
        hgs_ac: sum(&|t| t.ac),
        bc_total: sum(&|t| t.bc),
        bc_not_ac: sum(&|t| t.bc_not_ac),
        giso_total: groups.iter().map(|d| d.giso).sum(),
        giso_galois: groups.iter().filter(|d| d.galois).map(|d| d.giso).sum(),
        wall_time_seconds: opts.timing.then(|| start.elapsed().as_secs_f64()),
    };
    Ok(DegreeReport { summary, groups })
}

/// One structure in a listing: the regular subgroup N by its generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureRow {
    pub group: String,
    pub type_label: String,
    pub generators: Vec<String>,
    pub almost_classical: bool,
    pub bijective_corr: bool,
    pub class_id: Option<usize>,
}

impl StructureRow {
    pub const CSV_HEADER: &'static str = "group,type,ac,bc,class,generators";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},\"{}\"",
            self.group,
            self.type_label,
            self.almost_classical,
            self.bijective_corr,
            self.class_id.map_or(String::new(), |c| c.to_string()),
            self.generators.join(" ")
        )
    }
}

/// Lists structures for the candidate entries of a catalog, optionally
/// restricted to one entry index and one type label.
pub fn list_structures(
    g: usize,
    catalog: &Catalog,
    group: Option<usize>,
    label: Option<&str>,
    opts: &RunOptions,
) -> Result<Vec<StructureRow>> {
    if catalog.degree != g {
        return Err(Error::MissingCatalog(g));
    }
    let types = match label {
        Some(l) => vec![group_type(g, l)?],
        None => groups_of_order(g)?,
    };
    let entries: Vec<CatalogEntry> = match group {
        Some(k) => vec![catalog
            .entries
            .iter()
            .find(|e| e.index == k)
            .cloned()
            .ok_or_else(|| Error::Unsupported(format!("no entry {g}T{k}")))?],
        None => candidates(g, catalog)?.filtered,
    };
    let engine = HgsEngine::new(opts.time_budget);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let per_entry: Vec<Vec<StructureRow>> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| {
                let (detail, mut recs) = analyze_entry(&engine, e, &types)?;
                sort_records(&mut recs);
                Ok(recs
                    .iter()
                    .map(|r| StructureRow {
                        group: detail.id.clone(),
                        type_label: r.type_label.clone(),
                        generators: r.n_image.generators().iter().map(ToString::to_string).collect(),
                        almost_classical: r.almost_classical,
                        bijective_corr: r.bijective_corr,
                        class_id: r.class_id,
                    })
                    .collect())
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(per_entry.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub degree: usize,
    pub groups: usize,
    pub pairs: usize,
    pub structures: usize,
    pub differences: Vec<String>,
}

/// Compares the holomorph search with direct enumeration of regular
/// subgroups on every transitive group of degree g.
pub fn oracle_degree(g: usize) -> Result<OracleReport> {
    if g > DIRECT_MAX_CAP {
        return Err(Error::DegreeCap {
            degree: g,
            cap: DIRECT_MAX_CAP,
        });
    }
    let cat = enumerate_transitive(g)?;
    let types = groups_of_order(g)?;
    let engine = HgsEngine::new(None);
    let keys = |v: &[HgsRecord]| {
        let mut k: Vec<Vec<crate::perm::Perm>> = v.iter().map(|r| r.key().to_vec()).collect();
        k.sort();
        k
    };
    let mut report = OracleReport {
        degree: g,
        groups: cat.entries.len(),
        pairs: 0,
        structures: 0,
        differences: Vec::new(),
    };
    for e in &cat.entries {
        let ctx = ExtensionContext::new(e.group()?)?;
        for t in &types {
            let fast = engine.run(&ctx, t)?.records;
            let slow = direct_hgs_capped(&ctx, t, DIRECT_MAX_CAP)?;
            report.pairs += 1;
            report.structures += slow.len();
            let (kf, ks) = (keys(&fast), keys(&slow));
            if kf != ks {
                let missing = ks.iter().filter(|k| !kf.contains(k)).count();
                let extra = kf.iter().filter(|k| !ks.contains(k)).count();
                report.differences.push(format!(
                    "{} type {}: {} from search, {} direct, {missing} missing, {extra} extra",
                    e.id(),
                    t.label,
                    kf.len(),
                    ks.len()
                ));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::enumerate_transitive;

    #[test]
    fn degree_4() {
        let cat = enumerate_transitive(4).unwrap();
        let r = run_degree(4, &cat, &RunOptions::default()).unwrap();
        let s = &r.summary;
        assert_eq!((s.transitive_total, s.types_count), (5, 2));
        assert!(s.hgs_ac <= s.hgs_total && s.bc_not_ac <= s.bc_total && s.bc_total <= s.hgs_total);
        assert!(s.giso_galois <= s.giso_total && s.giso_total <= s.hgs_total);
        assert_eq!(r.groups.len(), s.max_candidates);
        let json = serde_json::to_string(&r).unwrap();
        let back: DegreeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(s.csv_row().split(',').count(), DegreeSummary::CSV_HEADER.split(',').count());
    }

    #[test]
    fn oracle_degree_4_and_listing() {
        let r = oracle_degree(4).unwrap();
        assert!(r.differences.is_empty());
        assert_eq!((r.groups, r.pairs), (5, 10));
        let cat = enumerate_transitive(4).unwrap();
        let rows = list_structures(4, &cat, None, Some("C4"), &RunOptions::default()).unwrap();
        assert!(rows.iter().all(|r| r.type_label == "C4"));
        assert!(!rows.is_empty());
        assert!(list_structures(4, &cat, Some(99), None, &RunOptions::default()).is_err());
    }
}
