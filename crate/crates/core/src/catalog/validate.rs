//! Pairwise non-conjugacy checks and the validation cache.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::format::write_catalog;
use super::Catalog;
use crate::algos::conjugacy::{are_conjugate, CONJUGACY_ORDER_BOUND};
use crate::error::{Error, Result};
use crate::group::PermGroup;

/// Above this order the cycle-type census is skipped.
const CENSUS_BOUND: u128 = 200_000;

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub degree: usize,
    pub entries: usize,
    pub orders_ok: bool,
    pub transitive_ok: bool,
    /// Pairs separated by invariants alone.
    pub pairs_by_invariant: usize,
    /// Pairs decided by an explicit conjugacy search.
    pub pairs_searched: usize,
    /// Pairs too large to decide; listed by index.
    pub unresolved: Vec<(usize, usize)>,
    pub cached: bool,
    pub digest: String,
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Invariant {
    order: u128,
    suborbits: Vec<usize>,
    derived: u128,
    census: Option<BTreeMap<Vec<usize>, usize>>,
}

fn invariant(g: &PermGroup) -> Result<Invariant> {
    let stab = g.point_stabilizer(1)?;
    let mut suborbits: Vec<usize> = stab.orbits().iter().map(Vec::len).collect();
    suborbits.sort_unstable();
    let census = (g.order() <= CENSUS_BOUND).then(|| {
        let mut m = BTreeMap::new();
        for e in g.elements() {
            *m.entry(e.cycle_type()).or_insert(0) += 1;
        }
        m
    });
    Ok(Invariant {
        order: g.order(),
        suborbits,
        derived: g.derived_subgroup().order(),
        census,
    })
}

pub fn digest(cat: &Catalog) -> String {
    let text = write_catalog(cat, &[]);
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Checks orders, transitivity and pairwise non-conjugacy in S_g.
/// With `full` false, conjugacy searches are skipped for degrees above 12.
pub fn validate_catalog(cat: &Catalog, full: bool) -> Result<ValidationReport> {
    let g = cat.degree;
    let factorial: u128 = (1..=g as u128).product();
    let mut report = ValidationReport {
        degree: g,
        entries: cat.entries.len(),
        orders_ok: true,
        transitive_ok: true,
        digest: digest(cat),
        ..Default::default()
    };
    let mut groups = Vec::with_capacity(cat.entries.len());
    for e in &cat.entries {
        let grp = e.group()?;
        if grp.order() != e.order || factorial % e.order != 0 {
            report.orders_ok = false;
        }
        if !grp.is_transitive() {
            return Err(Error::NonTransitiveEntry { degree: g, index: e.index });
        }
        groups.push(grp);
    }
    let invariants = groups.iter().map(invariant).collect::<Result<Vec<_>>>()?;
    let symmetric = PermGroup::symmetric(g);
    let search = full || g <= 12;
    let n = groups.len();
    for i in 0..n {
        for j in i + 1..n {
            if invariants[i] != invariants[j] {
                report.pairs_by_invariant += 1;
                continue;
            }
            let (a, b) = (cat.entries[i].index, cat.entries[j].index);
            if !search || groups[i].order() > CONJUGACY_ORDER_BOUND {
                report.unresolved.push((a, b));
                continue;
            }
            report.pairs_searched += 1;
            if are_conjugate(&symmetric, &groups[i], &groups[j])?.is_some() {
                return Err(Error::DuplicateEntry {
                    degree: g,
                    first: a,
                    second: b,
                });
            }
        }
    }
    Ok(report)
}

/// Like `validate_catalog`, but skips the work when the cache file already
/// lists the catalog's digest. Successful validations are appended.
pub fn validate_cached(cat: &Catalog, full: bool, cache: &Path) -> Result<ValidationReport> {
    let d = digest(cat);
    let mode = if full { "full" } else { "quick" };
    if let Ok(text) = fs::read_to_string(cache) {
        let hit = text.lines().any(|l| {
            let w: Vec<&str> = l.split_whitespace().collect();
            w.len() >= 2 && w[0] == d && (w[1] == mode || w[1] == "full")
        });
        if hit {
            return Ok(ValidationReport {
                degree: cat.degree,
                entries: cat.entries.len(),
                orders_ok: true,
                transitive_ok: true,
                cached: true,
                digest: d,
                ..Default::default()
            });
        }
    }
    let report = validate_catalog(cat, full)?;
    if report.orders_ok && report.unresolved.is_empty() {
        if let Some(dir) = cache.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut f = fs::OpenOptions::new().create(true).append(true).open(cache)?;
        writeln!(f, "{d} {mode} degree {} entries {}", cat.degree, cat.entries.len())?;
    }
    Ok(report)
}
