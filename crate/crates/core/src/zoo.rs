//! Isomorphism types of small order as regular permutation groups.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::holomorph::left_regular_capped;
use crate::perm::{is_prime, Perm, MAX_DEGREE};

/// One isomorphism type: a label and a small faithful representation with
/// named generators. `regular()` gives the image on its own elements.
#[derive(Clone, Debug)]
pub struct GroupType {
    pub order: usize,
    pub label: String,
    names: Vec<String>,
    abstract_group: PermGroup,
}

impl GroupType {
    fn new(label: impl Into<String>, named: Vec<(&str, Perm)>) -> GroupType {
        let degree = named.first().map_or(1, |(_, p)| p.degree());
        let names = named.iter().map(|(n, _)| n.to_string()).collect();
        let gens = named.into_iter().map(|(_, p)| p).collect();
        let g = PermGroup::new(degree, gens).expect("consistent degrees");
        GroupType {
            order: g.order() as usize,
            label: label.into(),
            names,
            abstract_group: g,
        }
    }

    /// Small-degree faithful representation.
    pub fn abstract_group(&self) -> &PermGroup {
        &self.abstract_group
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    /// Regular image of degree `order`, generators in the named order.
    pub fn regular(&self) -> Result<PermGroup> {
        Ok(left_regular_capped(&self.abstract_group, MAX_DEGREE)?
            .image()
            .clone())
    }

    /// Named generators of the regular image.
    pub fn named_generators(&self) -> Result<Vec<(String, Perm)>> {
        let r = self.regular()?;
        Ok(self.names.iter().cloned().zip(r.generators().iter().copied()).collect())
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn cycle(degree: usize, from: usize, len: usize) -> Perm {
    let c: Vec<usize> = (from..from + len).collect();
    Perm::from_cycles(degree, &[c]).expect("valid cycle")
}

/// x ↦ -x on the block from..from+len, fixing `from`.
fn reflection(degree: usize, from: usize, len: usize) -> Perm {
    let pairs: Vec<[usize; 2]> = (1..len)
        .filter(|&k| k < len - k)
        .map(|k| [from + k, from + len - k])
        .collect();
    Perm::from_cycles(degree, &pairs).expect("valid reflection")
}

fn cyclic(n: usize) -> GroupType {
    if n == 1 {
        return GroupType::new("C1", vec![("a", Perm::identity(1))]);
    }
    GroupType::new(format!("C{n}"), vec![("a", cycle(n, 1, n))])
}

/// Direct product of cyclic groups on disjoint blocks.
fn abelian(label: String, factors: &[usize]) -> GroupType {
    const NAMES: [&str; 3] = ["a", "b", "c"];
    let degree: usize = factors.iter().sum();
    let mut start = 1;
    let mut named = Vec::new();
    for (i, &f) in factors.iter().enumerate() {
        named.push((NAMES[i], cycle(degree, start, f)));
        start += f;
    }
    GroupType::new(label, named)
}

fn dihedral(n: usize) -> GroupType {
    GroupType::new(
        format!("D{}", 2 * n),
        vec![("r", cycle(n, 1, n)), ("s", reflection(n, 1, n))],
    )
}

fn parse(degree: usize, s: &str) -> Perm {
    Perm::parse(degree, s).expect("literal")
}

/// The five types of order 2p².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwoP2Kind {
    /// C_{2p²} = ⟨a⟩.
    Cyclic,
    /// C_p × C_{2p} = ⟨a⟩ × ⟨b⟩ × ⟨c⟩.
    CpxC2p,
    /// D_{2p} × C_p = ⟨r, s⟩ × ⟨c⟩.
    DpxCp,
    /// (C_p × C_p) ⋊ C_2, c inverting a and b.
    CpxCpC2,
    /// D_{2p²} = ⟨r, s⟩.
    Dihedral,
}

impl TwoP2Kind {
    pub const ALL: [TwoP2Kind; 5] = [
        TwoP2Kind::Cyclic,
        TwoP2Kind::CpxC2p,
        TwoP2Kind::DpxCp,
        TwoP2Kind::CpxCpC2,
        TwoP2Kind::Dihedral,
    ];

    pub fn label(self, p: usize) -> String {
        match self {
            TwoP2Kind::Cyclic => format!("C{}", 2 * p * p),
            TwoP2Kind::CpxC2p => format!("C{p}xC{}", 2 * p),
            TwoP2Kind::DpxCp => format!("D{}xC{p}", 2 * p),
            TwoP2Kind::CpxCpC2 => format!("C{p}xC{p}:C2"),
            TwoP2Kind::Dihedral => format!("D{}", 2 * p * p),
        }
    }

    /// Parameter-free name, e.g. "CpxC2p".
    pub fn generic_label(self) -> &'static str {
        match self {
            TwoP2Kind::Cyclic => "C2p2",
            TwoP2Kind::CpxC2p => "CpxC2p",
            TwoP2Kind::DpxCp => "D2pxCp",
            TwoP2Kind::CpxCpC2 => "CpxCp:C2",
            TwoP2Kind::Dihedral => "D2p2",
        }
    }

    /// Accepts either the concrete label for `p` or the generic one.
    pub fn from_label(p: usize, label: &str) -> Option<TwoP2Kind> {
        TwoP2Kind::ALL
            .into_iter()
            .find(|k| k.label(p) == label || k.generic_label() == label)
    }
}

fn check_odd_prime(p: usize) -> Result<()> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::InvalidPrime(p as u64));
    }
    Ok(())
}

/// Small representation of a type of order 2p² with the generator names
/// used in its presentation.
pub fn type_2p2(p: usize, kind: TwoP2Kind) -> Result<GroupType> {
    check_odd_prime(p)?;
    let label = kind.label(p);
    let q = p * p;
    let t = match kind {
        TwoP2Kind::Cyclic => {
            let d = q + 2;
            let a = cycle(d, 1, q).compose(&cycle(d, q + 1, 2));
            GroupType::new(label, vec![("a", a)])
        }
        TwoP2Kind::CpxC2p => {
            let d = 2 * p + 2;
            GroupType::new(
                label,
                vec![
                    ("a", cycle(d, 1, p)),
                    ("b", cycle(d, p + 1, p)),
                    ("c", cycle(d, 2 * p + 1, 2)),
                ],
            )
        }
        TwoP2Kind::DpxCp => {
            let d = 2 * p;
            GroupType::new(
                label,
                vec![
                    ("r", cycle(d, 1, p)),
                    ("s", reflection(d, 1, p)),
                    ("c", cycle(d, p + 1, p)),
                ],
            )
        }
        TwoP2Kind::CpxCpC2 => {
            let d = 2 * p;
            let c = reflection(d, 1, p).compose(&reflection(d, p + 1, p));
            GroupType::new(
                label,
                vec![("a", cycle(d, 1, p)), ("b", cycle(d, p + 1, p)), ("c", c)],
            )
        }
        TwoP2Kind::Dihedral => GroupType::new(
            label,
            vec![("r", cycle(q, 1, q)), ("s", reflection(q, 1, q))],
        ),
    };
    Ok(t)
}

/// Regular image of degree 2p² of one of the five types.
pub fn make_2p2(p: usize, kind: TwoP2Kind) -> Result<PermGroup> {
    check_odd_prime(p)?;
    if 2 * p * p > MAX_DEGREE {
        return Err(Error::DegreeCap {
            degree: 2 * p * p,
            cap: MAX_DEGREE,
        });
    }
    type_2p2(p, kind)?.regular()
}

/// Some(p) when g = 2p² for an odd prime p.
pub fn as_2p2(g: usize) -> Option<usize> {
    if g % 2 != 0 {
        return None;
    }
    let q = g / 2;
    let p = (q as f64).sqrt().round() as usize;
    (p * p == q && p >= 3 && is_prime(p as u64)).then_some(p)
}

/// All isomorphism types of order g, in a fixed order.
///
/// Supported: g ≤ 15, primes and 2p up to the degree limit, and 2p².
pub fn groups_of_order(g: usize) -> Result<Vec<GroupType>> {
    let types = match g {
        0 => return Err(Error::UnsupportedOrder(0)),
        4 => vec![cyclic(4), abelian("C2xC2".into(), &[2, 2])],
        6 => vec![cyclic(6), dihedral(3)],
        8 => vec![
            cyclic(8),
            abelian("C4xC2".into(), &[4, 2]),
            abelian("C2xC2xC2".into(), &[2, 2, 2]),
            dihedral(4),
            GroupType::new(
                "Q8",
                vec![
                    ("i", parse(8, "(1,2,4,7)(3,6,8,5)")),
                    ("j", parse(8, "(1,3,4,8)(2,5,7,6)")),
                ],
            ),
        ],
        9 => vec![cyclic(9), abelian("C3xC3".into(), &[3, 3])],
        12 => vec![
            cyclic(12),
            abelian("C6xC2".into(), &[6, 2]),
            dihedral(6),
            GroupType::new(
                "Dic3",
                vec![("a", parse(7, "(1,2,3)")), ("x", parse(7, "(2,3)(4,5,6,7)"))],
            ),
            GroupType::new(
                "A4",
                vec![("a", parse(4, "(1,2,3)")), ("x", parse(4, "(1,2)(3,4)"))],
            ),
        ],
        15 => vec![cyclic(15)],
        g if g <= MAX_DEGREE && is_prime(g as u64) => vec![cyclic(g)],
        g if g <= MAX_DEGREE && g >= 6 && g % 2 == 0 && is_prime(g as u64 / 2) => {
            vec![cyclic(g), dihedral(g / 2)]
        }
        g if g <= MAX_DEGREE && as_2p2(g).is_some() => {
            let p = as_2p2(g).expect("checked");
            TwoP2Kind::ALL
                .into_iter()
                .map(|k| type_2p2(p, k))
                .collect::<Result<_>>()?
        }
        1 => vec![cyclic(1)],
        _ => return Err(Error::UnsupportedOrder(g)),
    };
    Ok(types)
}

/// Looks up a type of order g by label.
pub fn group_type(g: usize, label: &str) -> Result<GroupType> {
    let mut all = groups_of_order(g)?;
    if let Some(p) = as_2p2(g) {
        if let Some(k) = TwoP2Kind::from_label(p, label) {
            return type_2p2(p, k);
        }
    }
    match all.iter().position(|t| t.label == label) {
        Some(i) => Ok(all.swap_remove(i)),
        None => Err(Error::UnknownType {
            order: g,
            label: label.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algos::find_isomorphism;
    use crate::algos::stats::{center, exponent};

    #[test]
    fn counts() {
        let expect = [
            (1, 1),
            (2, 1),
            (4, 2),
            (6, 2),
            (8, 5),
            (9, 2),
            (10, 2),
            (12, 5),
            (13, 1),
            (14, 2),
            (15, 1),
            (18, 5),
            (22, 2),
            (31, 1),
        ];
        for (g, n) in expect {
            let ts = groups_of_order(g).unwrap();
            assert_eq!(ts.len(), n, "order {g}");
            for t in &ts {
                assert_eq!(t.order, g, "{}", t.label);
                let r = t.regular().unwrap();
                assert_eq!(r.degree(), g);
                assert!(r.is_regular() || g == 1, "{}", t.label);
            }
        }
        assert!(matches!(groups_of_order(16), Err(Error::UnsupportedOrder(16))));
        assert!(matches!(groups_of_order(20), Err(Error::UnsupportedOrder(20))));
    }

    #[test]
    fn pairwise_non_isomorphic() {
        for g in [8, 12, 18] {
            let ts = groups_of_order(g).unwrap();
            for i in 0..ts.len() {
                for j in i + 1..ts.len() {
                    let a = ts[i].abstract_group();
                    let b = ts[j].abstract_group();
                    assert!(find_isomorphism(a, b).unwrap().is_none(), "{} {}", ts[i], ts[j]);
                }
            }
        }
    }

    #[test]
    fn regular_image_isomorphic_to_abstract() {
        for t in groups_of_order(12).unwrap() {
            let r = t.regular().unwrap();
            assert!(find_isomorphism(t.abstract_group(), &r).unwrap().is_some());
        }
    }

    #[test]
    fn centres_of_order_18() {
        let z = |k| center(&make_2p2(3, k).unwrap()).unwrap().order();
        assert_eq!(z(TwoP2Kind::Dihedral), 1);
        assert_eq!(z(TwoP2Kind::DpxCp), 3);
        assert_eq!(z(TwoP2Kind::CpxCpC2), 1);
        assert_eq!(z(TwoP2Kind::CpxC2p), 18);
    }

    #[test]
    fn presentations_hold() {
        let p = 3;
        let t = type_2p2(p, TwoP2Kind::Dihedral).unwrap();
        let g = t.named_generators().unwrap();
        let (r, s) = (g[0].1, g[1].1);
        assert_eq!(r.order(), 9);
        assert_eq!(s.order(), 2);
        assert_eq!(s * r * s, r.inverse());
        let t = type_2p2(p, TwoP2Kind::CpxCpC2).unwrap();
        let g = t.named_generators().unwrap();
        let (a, b, c) = (g[0].1, g[1].1, g[2].1);
        assert_eq!(a * b, b * a);
        assert_eq!(c * a * c, a.inverse());
        assert_eq!(c * b * c, b.inverse());
        let t = type_2p2(p, TwoP2Kind::DpxCp).unwrap();
        let g = t.named_generators().unwrap();
        let (r, s, c) = (g[0].1, g[1].1, g[2].1);
        assert_eq!(s * r * s, r.inverse());
        assert_eq!(c * r, r * c);
        assert_eq!(c * s, s * c);
        assert_eq!(c.order(), 3);
    }

    #[test]
    fn exponent_classification() {
        for t in groups_of_order(18).unwrap() {
            let has_p2 = t
                .abstract_group()
                .elements()
                .any(|x| x.order() % 9 == 0);
            let cyc_or_dih = t.label == "C18" || t.label == "D18";
            assert_eq!(has_p2, cyc_or_dih, "{}", t.label);
            let has_18 = t.abstract_group().elements().any(|x| x.order() == 18);
            assert_eq!(has_18, t.label == "C18");
            assert_eq!(exponent(t.abstract_group()).unwrap() % 9 == 0, cyc_or_dih);
        }
    }

    #[test]
    fn labels_and_lookup() {
        assert_eq!(as_2p2(18), Some(3));
        assert_eq!(as_2p2(50), Some(5));
        assert_eq!(as_2p2(8), None);
        assert_eq!(group_type(18, "CpxC2p").unwrap().label, "C3xC6");
        assert_eq!(group_type(12, "Dic3").unwrap().order, 12);
        assert!(group_type(12, "Q8").is_err());
        assert!(matches!(make_2p2(4, TwoP2Kind::Cyclic), Err(Error::InvalidPrime(4))));
        assert!(matches!(make_2p2(7, TwoP2Kind::Cyclic), Err(Error::DegreeCap { .. })));
        assert_eq!(make_2p2(5, TwoP2Kind::CpxCpC2).unwrap().order(), 50);
    }
}
