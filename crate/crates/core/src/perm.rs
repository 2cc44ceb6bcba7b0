//! Permutations of `{1..n}`.
//!
//! Points are 1-based at every public boundary (parsing, printing, `apply`).
//! Internally images are stored 0-based in a fixed inline array so that a
//! `Perm` is `Copy` and hashes without allocation.
//!
//! Products follow function composition: `p * q` is `p ∘ q`, so `q` acts first.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest degree any permutation may have.
pub const MAX_DEGREE: usize = 64;

/// Default cap on the degree of the ambient symmetric group.
pub const DEFAULT_DEGREE_CAP: usize = 31;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Perm {
    degree: u8,
    // Entries at positions >= degree are always zero.
    img: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(degree <= MAX_DEGREE, "degree {degree} above {MAX_DEGREE}");
        let mut img = [0u8; MAX_DEGREE];
        for (i, slot) in img.iter_mut().enumerate().take(degree) {
            *slot = i as u8;
        }
        Perm {
            degree: degree as u8,
            img,
        }
    }

    /// Builds a permutation from 1-based images: `images[i-1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeCap {
                degree: n,
                cap: MAX_DEGREE,
            });
        }
        let mut seen = [false; MAX_DEGREE];
        let mut img = [0u8; MAX_DEGREE];
        for (i, &x) in images.iter().enumerate() {
            if x == 0 || x > n {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: n,
                });
            }
            if seen[x - 1] {
                return Err(Error::NotABijection(n));
            }
            seen[x - 1] = true;
            img[i] = (x - 1) as u8;
        }
        Ok(Perm {
            degree: n as u8,
            img,
        })
    }

    /// 0-based variant of [`Perm::from_images`]; the caller guarantees a bijection.
    pub(crate) fn from_images0(images: &[u8]) -> Perm {
        debug_assert!(images.len() <= MAX_DEGREE);
        let mut img = [0u8; MAX_DEGREE];
        img[..images.len()].copy_from_slice(images);
        let p = Perm {
            degree: images.len() as u8,
            img,
        };
        debug_assert!(p.is_valid());
        p
    }

    /// Builds a permutation from disjoint cycles given with 1-based points.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Perm> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeCap {
                degree,
                cap: MAX_DEGREE,
            });
        }
        let mut p = Perm::identity(degree);
        let mut seen = [false; MAX_DEGREE];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &x in cycle {
                if x == 0 || x > degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if seen[x - 1] {
                    return Err(Error::RepeatedPoint(x));
                }
                seen[x - 1] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                p.img[x - 1] = (y - 1) as u8;
            }
        }
        Ok(p)
    }

    /// Parses disjoint cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Perm> {
        let cycles = parse_cycles(text)?;
        Perm::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> Result<usize> {
        if x == 0 || x > self.degree() {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree(),
            });
        }
        Ok(self.img[x - 1] as usize + 1)
    }

    #[inline]
    pub(crate) fn image0(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    #[inline]
    pub(crate) fn images0(&self) -> &[u8] {
        &self.img[..self.degree()]
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images0().iter().map(|&x| x as usize + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    #[inline]
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree, other.degree);
        let mut img = [0u8; MAX_DEGREE];
        for (slot, &x) in img.iter_mut().zip(other.images0()) {
            *slot = self.img[x as usize];
        }
        Perm {
            degree: self.degree,
            img,
        }
    }

    #[inline]
    pub fn inverse(&self) -> Perm {
        let mut img = [0u8; MAX_DEGREE];
        for (i, &x) in self.images0().iter().enumerate() {
            img[x as usize] = i as u8;
        }
        Perm {
            degree: self.degree,
            img,
        }
    }

    /// `c ∘ self ∘ c⁻¹`.
    #[inline]
    pub fn conjugate_by(&self, c: &Perm) -> Perm {
        // (c p c^-1)(c(x)) = c(p(x))
        let mut img = [0u8; MAX_DEGREE];
        for x in 0..self.degree() {
            img[c.img[x] as usize] = c.img[self.img[x] as usize];
        }
        Perm {
            degree: self.degree,
            img,
        }
    }

    pub fn pow(&self, mut e: i64) -> Perm {
        let mut base = if e < 0 {
            e = -e;
            self.inverse()
        } else {
            *self
        };
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.images0().iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Cycle lengths of the permutation, including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = [false; MAX_DEGREE];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.img[x] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    pub fn fixes(&self, x0: usize) -> bool {
        self.img[x0] as usize == x0
    }

    /// True when no point is fixed.
    pub fn is_fixed_point_free(&self) -> bool {
        (0..self.degree()).all(|x| !self.fixes(x))
    }

    /// Smallest moved point, 0-based.
    pub(crate) fn first_moved0(&self) -> Option<usize> {
        (0..self.degree()).find(|&x| !self.fixes(x))
    }

    /// Non-trivial cycles with 1-based points, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.fixes(start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.img[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    fn is_valid(&self) -> bool {
        let mut seen = [false; MAX_DEGREE];
        for &x in self.images0() {
            let x = x as usize;
            if x >= self.degree() || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        self.img[self.degree()..].iter().all(|&x| x == 0)
    }
}

impl Mul for Perm {
    type Output = Perm;
    fn mul(self, rhs: Perm) -> Perm {
        self.compose(&rhs)
    }
}

impl<'a> Mul<&'a Perm> for &'a Perm {
    type Output = Perm;
    fn mul(self, rhs: &'a Perm) -> Perm {
        self.compose(rhs)
    }
}

impl Hash for Perm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let words = (self.degree as usize).div_ceil(8);
        for chunk in self.img[..words * 8].chunks_exact(8) {
            state.write_u64(u64::from_le_bytes(chunk.try_into().expect("8 bytes")));
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree, self)
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Parses cycle notation, taking the degree to be the largest point mentioned.
    fn from_str(s: &str) -> Result<Perm> {
        let cycles = parse_cycles(s)?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(0);
        Perm::from_cycles(degree, &cycles)
    }
}

/// Splits cycle notation into cycles of 1-based points. Whitespace is ignored
/// and both `,` and spaces separate points.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
        let body = &body_start[..close];
        let points = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad point {t:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if points.len() > 1 {
            cycles.push(points);
        } else if let Some(&p) = points.first() {
            if p == 0 {
                return Err(Error::PointOutOfRange { point: 0, degree: 0 });
            }
        }
        rest = body_start[close + 1..].trim_start();
    }
    Ok(cycles)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle_images() {
        let p = Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(p.images(), vec![2, 3, 4, 1]);
    }

    #[test]
    fn empty_cycle_list_is_identity() {
        let p = Perm::from_cycles::<Vec<usize>>(5, &[]).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 5);
        assert_eq!(p.to_string(), "()");
    }

    #[test]
    fn cycle_action() {
        let p = Perm::from_cycles(6, &[vec![1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(p.apply(3).unwrap(), 4);
        assert_eq!(p.apply(6).unwrap(), 6);
        assert!(p.apply(7).is_err());
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(matches!(
            Perm::from_cycles(3, &[vec![1, 4]]),
            Err(Error::PointOutOfRange { point: 4, .. })
        ));
        assert!(matches!(
            Perm::from_cycles(5, &[vec![1, 2], vec![2, 3]]),
            Err(Error::RepeatedPoint(2))
        ));
        assert!(Perm::from_images(&[1, 1, 2]).is_err());
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = Perm::parse(3, "(1,2)").unwrap();
        let b = Perm::parse(3, "(2,3)").unwrap();
        // (a ∘ b)(2) = a(3) = 3
        assert_eq!((a * b).apply(2).unwrap(), 3);
        assert_eq!((a * b).to_string(), "(1,2,3)");
    }

    #[test]
    fn text_round_trip() {
        let p = Perm::parse(7, "(1,5,2)(3,7)").unwrap();
        assert_eq!(p.to_string(), "(1,5,2)(3,7)");
        assert_eq!(Perm::parse(7, &p.to_string()).unwrap(), p);
        assert_eq!(Perm::parse(4, "(1 2)(3 4)").unwrap().order(), 2);
        assert!(Perm::parse(4, "(1,2").is_err());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let p = Perm::parse(5, "(1,2,3)").unwrap();
        let c = Perm::parse(5, "(1,4)(3,5)").unwrap();
        let q = p.conjugate_by(&c);
        assert_eq!(q, c * p * c.inverse());
        assert_eq!(q.to_string(), "(2,5,4)");
    }

    #[test]
    fn order_and_powers() {
        let p = Perm::parse(6, "(1,2)(3,4,5)").unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
    }
}
