//! Machine checks for extensions of degree 2pⁿ: the congruence lemma, the
//! cyclic and dihedral constructions inside holomorphs, the order-2p²
//! embeddings and the table of possible type sets at p = 3.

use std::collections::BTreeSet;
use std::fmt::Display;

use serde::{Deserialize, Serialize};

use crate::algos::stats::{normalizer_order, sylow_subgroup};
use crate::algos::iso::{automorphism_group_bounded, find_isomorphism, GroupIso};
use crate::algos::lattice::{LatticeOptions, SubgroupLattice};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hgs::{ExtensionContext, HgsEngine};
use crate::holomorph::Holomorph;
use crate::perm::{is_prime, Perm, MAX_DEGREE};
use crate::zoo::{groups_of_order, type_2p2, GroupType, TwoP2Kind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn check(name: impl Into<String>, expected: impl Display, actual: impl Display) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check {
        name: name.into(),
        pass: expected == actual,
        expected,
        actual,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    /// Parts not run, with the reason.
    pub skipped: Vec<String>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>, skipped: Vec<String>) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            pass: checks.iter().all(|c| c.pass),
            checks,
            skipped,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(())
}

fn mod_pow(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Multiplicative order by repeated multiplication.
fn mult_order(x: u128, m: u128) -> u128 {
    let mut y = x % m;
    let mut k = 1;
    while y != 1 % m {
        y = y * x % m;
        k += 1;
    }
    k
}

/// (p+1)^{p^{n-2}} ≡ 1 + p^{n-1} and p+1 has order p^{n-1} modulo pⁿ.
pub fn check_lemma_orders(p: u64, n: u32) -> Result<Vec<Check>> {
    odd_prime(p)?;
    if n == 0 || n > 20 {
        return Err(Error::Unsupported(format!("n = {n}")));
    }
    let (p, m) = (p as u128, (p as u128).pow(n));
    let tag = format!("p={p} n={n}");
    let mut out = Vec::new();
    if n >= 2 {
        out.push(check(
            format!("{tag}: (p+1)^(p^(n-2)) mod p^n"),
            (1 + p.pow(n - 1)) % m,
            mod_pow(p + 1, p.pow(n - 2), m),
        ));
        out.push(check(
            format!("{tag}: (p+1)^(p^(n-1)) mod p^n"),
            1,
            mod_pow(p + 1, p.pow(n - 1), m),
        ));
    }
    out.push(check(
        format!("{tag}: order of p+1 mod p^n"),
        p.pow(n - 1),
        mult_order(p + 1, m),
    ));
    Ok(out)
}

pub fn lemma_suite(p: u64, ns: &[u32]) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for &n in ns {
        checks.extend(check_lemma_orders(p, n)?);
    }
    Ok(SuiteReport::new("lemma", checks, Vec::new()))
}

/// D_{2pⁿ} with generators named r, s.
fn dihedral_type(p: u64, n: u32) -> Result<GroupType> {
    match n {
        1 => Ok(groups_of_order(2 * p as usize)?.remove(1)),
        2 => type_2p2(p as usize, TwoP2Kind::Dihedral),
        _ => Err(Error::Unsupported(format!("2·{p}^{n} exceeds the degree limit"))),
    }
}

fn cyclic_type(p: u64, n: u32) -> Result<GroupType> {
    Ok(groups_of_order(2 * (p as usize).pow(n))?.remove(0))
}

fn holomorph(t: &GroupType) -> Result<Holomorph> {
    Holomorph::with_cap(t.abstract_group(), MAX_DEGREE)
}

fn iso_from(n: &PermGroup, images: Vec<Perm>) -> Result<GroupIso> {
    GroupIso::new(n.clone(), n.clone(), images)
}

/// The element sφ of Hol(D_{2pⁿ}), φ(r) = r, φ(s) = rs, generates a regular
/// cyclic group whose normalizer in Hol(D_{2pⁿ}) is as large as Hol(C_{2pⁿ}).
pub fn verify_cyclic_implies_dihedral(p: u64, n: u32) -> Result<Vec<Check>> {
    odd_prime(p)?;
    let d = dihedral_type(p, n)?;
    let g = 2 * p.pow(n) as u128;
    let hol = holomorph(&d)?;
    let dg = d.abstract_group();
    let (r, s) = (dg.generators()[0], dg.generators()[1]);
    let phi = iso_from(dg, vec![r, r * s])?;
    let s_phi = hol.element(&s, &phi)?;
    let cyc = PermGroup::new(hol.group().degree(), vec![s_phi])?;
    let tag = format!("p={p} n={n}");
    let p128 = p as u128;
    let expected_norm = 2 * p128.pow(2 * n - 1) * (p128 - 1);
    let hol_c = holomorph(&cyclic_type(p, n)?)?;
    Ok(vec![
        check(format!("{tag}: order of s·phi"), g, s_phi.order()),
        check(format!("{tag}: <s·phi> regular"), true, cyc.is_regular()),
        check(
            format!("{tag}: orbit of 1 under <s·phi>"),
            g,
            cyc.orbit(1)?.len(),
        ),
        check(
            format!("{tag}: |N_Hol(D)(<s·phi>)|"),
            expected_norm,
            normalizer_order(hol.group(), &cyc),
        ),
        check(
            format!("{tag}: |Hol(C_2p^n)|"),
            expected_norm,
            hol_c.group().order(),
        ),
    ])
}

/// Elements of order below pⁿ in a Sylow p-subgroup of Hol(D_{2pⁿ}) form a
/// subgroup F of order p^{3n-3} that is not transitive; the small-exponent
/// types have no element of order pⁿ in their holomorphs; every transitive
/// subgroup of Hol(D_{2pⁿ}) has an element of order pⁿ.
pub fn verify_dihedral_exclusion(p: u64, n: u32) -> Result<Vec<Check>> {
    odd_prime(p)?;
    if n != 2 {
        return Err(Error::Unsupported(format!("exclusion checks need n = 2, got {n}")));
    }
    let pn = p.pow(n);
    let p128 = p as u128;
    let d = dihedral_type(p, n)?;
    let hol = holomorph(&d)?;
    let syl = sylow_subgroup(hol.group(), p);
    let small: Vec<Perm> = syl.elements().filter(|x| pn % x.order() == 0 && x.order() < pn).collect();
    let f = PermGroup::new(hol.group().degree(), small.clone())?;
    let tag = format!("p={p} n={n}");
    let mut out = vec![
        check(
            format!("{tag}: |Syl_p(Hol(D))|"),
            p128.pow(3 * n - 1),
            syl.order(),
        ),
        check(
            format!("{tag}: elements of order < p^n in Syl_p"),
            p128.pow(3 * n - 3),
            small.len(),
        ),
        check(format!("{tag}: F closed under products"), small.len(), f.order()),
        check(
            format!("{tag}: [F : F ∩ Stab(1)]"),
            p128.pow(n - 1),
            f.orbit(1)?.len(),
        ),
    ];
    for t in groups_of_order(2 * pn as usize)? {
        let has_pn = t.abstract_group().elements().any(|x| x.order() % pn == 0);
        if has_pn {
            continue;
        }
        let h = holomorph(&t)?;
        let found = h.group().elements().any(|x| x.order() % pn == 0);
        out.push(check(
            format!("{tag}: Hol({}) has an element of order p^n", t.label),
            false,
            found,
        ));
    }
    let lattice = SubgroupLattice::build(hol.group(), &LatticeOptions::default())?;
    let transitive: Vec<&PermGroup> = lattice
        .classes()
        .iter()
        .map(|c| &c.rep)
        .filter(|g| g.is_transitive())
        .collect();
    let without = transitive
        .iter()
        .filter(|g| !g.elements().any(|x| x.order() % pn == 0))
        .count();
    out.push(check(
        format!(
            "{tag}: transitive subgroup classes of Hol(D) lacking an element of order p^n (of {})",
            transitive.len()
        ),
        0,
        without,
    ));
    Ok(out)
}

pub fn twopn_suite(p: u64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for n in [1, 2] {
        checks.extend(verify_cyclic_implies_dihedral(p, n)?);
    }
    checks.extend(verify_dihedral_exclusion(p, 2)?);
    Ok(SuiteReport::new("2pn", checks, Vec::new()))
}

/// |Aut| of the five types of order 2p², paired with the closed formulas.
pub fn aut_orders_2p2(p: u64) -> Result<Vec<(String, u128, u128)>> {
    odd_prime(p)?;
    let q = p as u128;
    let formula = |k: TwoP2Kind| match k {
        TwoP2Kind::Cyclic => q * (q - 1),
        TwoP2Kind::CpxC2p => (q * q - 1) * (q * q - q),
        TwoP2Kind::DpxCp => q * (q - 1) * (q - 1),
        TwoP2Kind::CpxCpC2 => q.pow(3) * (q + 1) * (q - 1) * (q - 1),
        TwoP2Kind::Dihedral => q.pow(3) * (q - 1),
    };
    TwoP2Kind::ALL
        .into_iter()
        .map(|k| {
            let t = type_2p2(p as usize, k)?;
            let aut = automorphism_group_bounded(t.abstract_group(), t.abstract_group().order())?;
            Ok((t.label, formula(k), aut.order))
        })
        .collect()
}

/// F_1 and F_2 inside Hol((C_p×C_p)⋊C_2): regular copies of C_p×C_{2p} and
/// C_p×D_{2p} whose normalizers are the full holomorphs of those types.
pub fn verify_2p2_implication(p: u64) -> Result<Vec<Check>> {
    odd_prime(p)?;
    let x = type_2p2(p as usize, TwoP2Kind::CpxCpC2)?;
    let hol = holomorph(&x)?;
    let xg = x.abstract_group();
    let (a, b, c) = (xg.generators()[0], xg.generators()[1], xg.generators()[2]);
    let id = iso_from(xg, vec![a, b, c])?;
    let phi1 = iso_from(xg, vec![a.inverse(), b.inverse(), c])?;
    let phi2 = iso_from(xg, vec![a, b.inverse(), c])?;
    let q = p as u128;
    let g = 2 * q * q;
    let mut out = Vec::new();
    let cases = [
        ("F_1", &phi1, TwoP2Kind::CpxC2p, 2 * q * q * (q * q - 1) * (q * q - q)),
        ("F_2", &phi2, TwoP2Kind::DpxCp, 2 * q.pow(3) * (q - 1) * (q - 1)),
    ];
    for (name, phi, kind, expected_norm) in cases {
        let gens = vec![hol.element(&a, &id)?, hol.element(&b, &id)?, hol.element(&c, phi)?];
        let f = PermGroup::new(hol.group().degree(), gens)?;
        let t = type_2p2(p as usize, kind)?;
        let tag = format!("p={p} {name}");
        out.push(check(format!("{tag}: order"), g, f.order()));
        out.push(check(
            format!("{tag}: isomorphic to {}", t.label),
            true,
            find_isomorphism(t.abstract_group(), &f)?.is_some(),
        ));
        out.push(check(format!("{tag}: regular"), true, f.is_regular()));
        out.push(check(format!("{tag}: orbit of 1"), g, f.orbit(1)?.len()));
        out.push(check(
            format!("{tag}: |N_Hol(F)|"),
            expected_norm,
            normalizer_order(hol.group(), &f),
        ));
        out.push(check(
            format!("{tag}: |Hol({})|", t.label),
            expected_norm,
            holomorph(&t)?.group().order(),
        ));
    }
    for (label, formula, computed) in aut_orders_2p2(p)? {
        out.push(check(format!("p={p}: |Aut({label})|"), formula, computed));
    }
    Ok(out)
}

pub fn twop2_suite(primes: &[u64]) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for &p in primes {
        checks.extend(verify_2p2_implication(p)?);
    }
    Ok(SuiteReport::new("2p2", checks, Vec::new()))
}

/// Rows of the type table, in order.
pub const COROLLARY_ROWS: [&str; 6] = [
    "Hol(D2p2)",
    "Hol(CpxCp:C2)",
    "C2p2",
    "Hol(CpxC2p)",
    "Hol(D2pxCp)",
    "CpxC2p",
];

/// Column order of the type table.
pub const COROLLARY_COLUMNS: [TwoP2Kind; 5] = [
    TwoP2Kind::Cyclic,
    TwoP2Kind::Dihedral,
    TwoP2Kind::CpxC2p,
    TwoP2Kind::DpxCp,
    TwoP2Kind::CpxCpC2,
];

/// Expected Yes/No pattern, including the two cells settled by the
/// Sylow-subgroup and explicit-embedding arguments.
pub const COROLLARY_EXPECTED: [&str; 6] = ["NYNNN", "NNNNY", "YYNNN", "NNYNY", "NNNYY", "NNYYY"];

fn allowed_sets() -> Vec<BTreeSet<TwoP2Kind>> {
    use TwoP2Kind::*;
    [
        vec![Dihedral],
        vec![CpxCpC2],
        vec![Dihedral, Cyclic],
        vec![CpxCpC2, CpxC2p],
        vec![CpxCpC2, DpxCp],
        vec![CpxCpC2, CpxC2p, DpxCp],
        vec![],
    ]
    .into_iter()
    .map(|v| v.into_iter().collect())
    .collect()
}

fn row_context(p: u64, row: usize) -> Result<ExtensionContext> {
    use TwoP2Kind::*;
    let hol_of = |k| -> Result<ExtensionContext> {
        let t = type_2p2(p as usize, k)?;
        ExtensionContext::new(holomorph(&t)?.group().clone())
    };
    let galois = |k| ExtensionContext::galois_capped(type_2p2(p as usize, k)?.abstract_group(), MAX_DEGREE);
    match row {
        0 => hol_of(Dihedral),
        1 => hol_of(CpxCpC2),
        2 => galois(Cyclic),
        3 => hol_of(CpxC2p),
        4 => hol_of(DpxCp),
        5 => galois(CpxC2p),
        _ => Err(Error::Unsupported(format!("row {row}"))),
    }
}

/// Set of types with at least one structure on the context.
pub fn type_set(engine: &HgsEngine, p: u64, ctx: &ExtensionContext) -> Result<BTreeSet<TwoP2Kind>> {
    let mut out = BTreeSet::new();
    for k in TwoP2Kind::ALL {
        let t = type_2p2(p as usize, k)?;
        if !engine.run(ctx, &t)?.records.is_empty() {
            out.insert(k);
        }
    }
    Ok(out)
}

/// The Yes/No table at p, row by row. Rows listed in `skip_rows` are
/// reported as skipped.
pub fn verify_corollary_table(p: u64, skip_rows: &[usize], budget: Option<f64>) -> Result<SuiteReport> {
    odd_prime(p)?;
    if 2 * p * p > MAX_DEGREE as u64 {
        return Err(Error::DegreeCap {
            degree: 2 * (p * p) as usize,
            cap: MAX_DEGREE,
        });
    }
    let engine = HgsEngine::new(budget);
    let allowed = allowed_sets();
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    for (row, name) in COROLLARY_ROWS.iter().enumerate() {
        if skip_rows.contains(&row) {
            skipped.push(format!("{name}: skipped on request"));
            continue;
        }
        let ctx = row_context(p, row)?;
        let set = match type_set(&engine, p, &ctx) {
            Ok(s) => s,
            Err(e) if e.is_resource_cap() => {
                skipped.push(format!("{name}: {e}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let pattern: String = COROLLARY_COLUMNS
            .iter()
            .map(|k| if set.contains(k) { 'Y' } else { 'N' })
            .collect();
        checks.push(check(format!("row G = {name}"), COROLLARY_EXPECTED[row], pattern));
        checks.push(check(
            format!("row G = {name}: type set is one of the allowed sets"),
            true,
            allowed.contains(&set),
        ));
        let cyc = set.contains(&TwoP2Kind::Cyclic);
        let dih = set.contains(&TwoP2Kind::Dihedral);
        checks.push(check(format!("row G = {name}: cyclic implies dihedral"), true, !cyc || dih));
        let small = set.contains(&TwoP2Kind::CpxC2p) || set.contains(&TwoP2Kind::DpxCp) || set.contains(&TwoP2Kind::CpxCpC2);
        checks.push(check(format!("row G = {name}: dihedral excludes small exponent"), true, !dih || !small));
    }
    // Galois contexts of every type
    for k in TwoP2Kind::ALL {
        let t = type_2p2(p as usize, k)?;
        let ctx = ExtensionContext::galois_capped(t.abstract_group(), MAX_DEGREE)?;
        let set = match type_set(&engine, p, &ctx) {
            Ok(s) => s,
            Err(e) if e.is_resource_cap() => {
                skipped.push(format!("Galois {}: {e}", t.label));
                continue;
            }
            Err(e) => return Err(e),
        };
        checks.push(check(
            format!("Galois {}: type set is one of the allowed sets", t.label),
            true,
            allowed.contains(&set),
        ));
    }
    checks.extend(sylow_structure_checks(p)?);
    Ok(SuiteReport::new("corollary", checks, skipped))
}

/// Syl_p(Hol(C_p×C_{2p})) is the Heisenberg group of order p³ and
/// Syl_p(Hol(C_p×D_{2p})) is elementary abelian.
pub fn sylow_structure_checks(p: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (k, abelian) in [(TwoP2Kind::CpxC2p, false), (TwoP2Kind::DpxCp, true)] {
        let t = type_2p2(p as usize, k)?;
        let syl = sylow_subgroup(holomorph(&t)?.group(), p);
        let exponent_p = syl.elements().all(|x| x.order() == 1 || x.order() == p);
        let tag = format!("Syl_p(Hol({}))", t.label);
        out.push(check(format!("{tag}: order"), (p as u128).pow(3), syl.order()));
        out.push(check(format!("{tag}: exponent p"), true, exponent_p));
        out.push(check(format!("{tag}: abelian"), abelian, syl.is_abelian()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_examples() {
        let c = check_lemma_orders(3, 3).unwrap();
        assert!(c.iter().all(|c| c.pass));
        assert_eq!(c[0].actual, "10");
        assert_eq!(mult_order(4, 9), 3);
        assert_eq!(mult_order(6, 25), 5);
        assert!(check_lemma_orders(3, 1).unwrap().iter().all(|c| c.pass));
        assert!(matches!(check_lemma_orders(4, 2), Err(Error::InvalidPrime(4))));
    }

    #[test]
    fn small_cyclic_construction() {
        let c = verify_cyclic_implies_dihedral(3, 1).unwrap();
        assert!(c.iter().all(|c| c.pass), "{c:?}");
        assert_eq!(c[3].actual, "12");
    }

    #[test]
    fn aut_orders_p3() {
        let got: Vec<u128> = aut_orders_2p2(3).unwrap().iter().map(|x| x.2).collect();
        assert_eq!(got, vec![6, 48, 12, 432, 54]);
    }
}
