//! Transitive permutation groups of a given degree up to conjugacy.
//!
//! Degrees up to 8 are enumerated from the subgroup lattice of S_g. Larger
//! degrees come from catalog files; degrees 9 to 15 and 17 are bundled.

mod format;
mod gap;
mod validate;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

pub use format::{load_catalog, parse_catalog, write_catalog};
pub use gap::import_gap;
pub use validate::{digest, validate_cached, validate_catalog, ValidationReport};

use crate::algos::stats::reduce_generators;
use crate::algos::{LatticeOptions, SubgroupLattice};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::holomorph::Holomorph;
use crate::perm::Perm;
use crate::zoo::groups_of_order;

/// Largest degree enumerated from scratch.
pub const MAX_ENUMERATED_DEGREE: usize = 8;

/// Environment variable naming a directory of `trans<g>.cat` files.
pub const CATALOG_DIR_ENV: &str = "HOPFGAL_CATALOG_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub degree: usize,
    /// Position in the catalog, starting at 1.
    pub index: usize,
    #[serde(serialize_with = "perms_as_text")]
    pub generators: Vec<Perm>,
    pub order: u128,
    pub name: Option<String>,
}

fn perms_as_text<S: serde::Serializer>(ps: &[Perm], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(ToString::to_string))
}

impl CatalogEntry {
    pub fn group(&self) -> Result<PermGroup> {
        PermGroup::new(self.degree, self.generators.clone())
    }

    /// `gTk` identifier.
    pub fn id(&self) -> String {
        format!("{}T{}", self.degree, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub degree: usize,
    pub entries: Vec<CatalogEntry>,
    /// True when indices were assigned here rather than read from a file.
    pub local: bool,
}

fn enumerate_uncached(g: usize) -> Result<Catalog> {
    let sym = PermGroup::symmetric(g);
    let lattice = SubgroupLattice::build(&sym, &LatticeOptions::default())?;
    let entries = lattice
        .classes()
        .iter()
        .filter(|c| c.rep.is_transitive())
        .enumerate()
        .map(|(k, c)| {
            let mut gens = reduce_generators(g, c.rep.generators().to_vec());
            if gens.is_empty() {
                gens.push(Perm::identity(g));
            }
            CatalogEntry {
                degree: g,
                index: k + 1,
                generators: gens,
                order: c.order,
                name: None,
            }
        })
        .collect();
    Ok(Catalog {
        degree: g,
        entries,
        local: true,
    })
}

/// All transitive subgroups of S_g up to conjugacy, g ≤ 8, ordered by
/// order and then by the sorted element list of a canonical conjugate.
pub fn enumerate_transitive(g: usize) -> Result<Catalog> {
    if g == 0 || g > MAX_ENUMERATED_DEGREE {
        return Err(Error::Unsupported(format!(
            "self-enumeration covers degrees 1..={MAX_ENUMERATED_DEGREE}, not {g}"
        )));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Catalog>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("cache lock").get(&g) {
        return Ok(c.clone());
    }
    let cat = enumerate_uncached(g)?;
    cache.lock().expect("cache lock").insert(g, cat.clone());
    Ok(cat)
}

/// Bundled catalog text for degree g, converted from the GAP library.
pub fn builtin_catalog_text(g: usize) -> Option<&'static str> {
    Some(match g {
        9 => include_str!("../../data/catalogs/trans9.cat"),
        10 => include_str!("../../data/catalogs/trans10.cat"),
        11 => include_str!("../../data/catalogs/trans11.cat"),
        12 => include_str!("../../data/catalogs/trans12.cat"),
        13 => include_str!("../../data/catalogs/trans13.cat"),
        14 => include_str!("../../data/catalogs/trans14.cat"),
        15 => include_str!("../../data/catalogs/trans15.cat"),
        17 => include_str!("../../data/catalogs/trans17.cat"),
        _ => return None,
    })
}

pub fn builtin_catalog(g: usize) -> Result<Catalog> {
    parse_catalog(builtin_catalog_text(g).ok_or(Error::MissingCatalog(g))?)
}

fn file_in(dir: &Path, g: usize) -> PathBuf {
    dir.join(format!("trans{g}.cat"))
}

/// Resolves the catalog for degree g: an explicit file or directory first,
/// then `$HOPFGAL_CATALOG_DIR`, then enumeration (g ≤ 8), then the bundled files.
pub fn catalog_for_degree(g: usize, explicit: Option<&Path>) -> Result<Catalog> {
    if let Some(p) = explicit {
        let path = if p.is_dir() { file_in(p, g) } else { p.to_path_buf() };
        let cat = load_catalog(&path)?;
        if cat.degree != g {
            return Err(Error::Catalog {
                line: 1,
                msg: format!("catalog is for degree {}, not {g}", cat.degree),
            });
        }
        return Ok(cat);
    }
    if let Some(dir) = std::env::var_os(CATALOG_DIR_ENV) {
        let path = file_in(Path::new(&dir), g);
        if path.is_file() {
            return load_catalog(&path);
        }
    }
    if g <= MAX_ENUMERATED_DEGREE {
        return enumerate_transitive(g);
    }
    builtin_catalog(g)
}

/// The entries that can carry a Hopf Galois structure by the order bound
/// |G| ≤ |Hol(N)| for some type N of order g.
#[derive(Clone, Debug)]
pub struct Candidates {
    pub total: usize,
    pub max_count: usize,
    pub filtered: Vec<CatalogEntry>,
    /// |Hol(N)| per type label.
    pub hol_orders: Vec<(String, u128)>,
}

pub fn candidates(g: usize, cat: &Catalog) -> Result<Candidates> {
    let hol_orders = groups_of_order(g)?
        .iter()
        .map(|t| Ok((t.label.clone(), Holomorph::with_cap(t.abstract_group(), g)?.group().order())))
        .collect::<Result<Vec<_>>>()?;
    let bound = hol_orders.iter().map(|(_, o)| *o).max().unwrap_or(0);
    let filtered: Vec<CatalogEntry> = cat
        .entries
        .iter()
        .filter(|e| e.order <= bound)
        .cloned()
        .collect();
    Ok(Candidates {
        total: cat.entries.len(),
        max_count: filtered.len(),
        filtered,
        hol_orders,
    })
}
