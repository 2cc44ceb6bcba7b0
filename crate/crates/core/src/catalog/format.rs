//! Line-oriented catalog files.
//!
//! ```text
//! degree 13
//! group 1 order 13 name C13
//! (1,2,3,4,5,6,7,8,9,10,11,12,13)
//! end
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::{Catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::perm::{Perm, MAX_DEGREE};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Catalog {
        line,
        msg: msg.into(),
    }
}

struct Pending {
    line: usize,
    index: usize,
    order: u128,
    name: Option<String>,
    gens: Vec<Perm>,
}

fn parse_group_header(line: usize, rest: &str) -> Result<Pending> {
    let mut words = rest.splitn(2, char::is_whitespace);
    let index = words
        .next()
        .and_then(|w| w.parse::<usize>().ok())
        .ok_or_else(|| err(line, "expected a group index"))?;
    let rest = words.next().unwrap_or("").trim_start();
    let rest = rest
        .strip_prefix("order")
        .ok_or_else(|| err(line, "expected `order <m>`"))?
        .trim_start();
    let (order_text, rest) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let order = order_text
        .parse::<u128>()
        .map_err(|_| err(line, format!("bad order {order_text:?}")))?;
    let rest = rest.trim();
    let name = if rest.is_empty() {
        None
    } else {
        let n = rest
            .strip_prefix("name")
            .filter(|n| n.is_empty() || n.starts_with(char::is_whitespace))
            .ok_or_else(|| err(line, format!("unexpected text {rest:?}")))?
            .trim();
        (!n.is_empty()).then(|| n.to_string())
    };
    Ok(Pending {
        line,
        index,
        order,
        name,
        gens: Vec::new(),
    })
}

/// Parses catalog text. Orders and transitivity are checked here.
pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let mut degree: Option<usize> = None;
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut current: Option<Pending> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (word, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        match (word, degree, &mut current) {
            ("degree", None, _) => {
                let g = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| err(line, format!("bad degree {:?}", rest.trim())))?;
                if g == 0 || g > MAX_DEGREE {
                    return Err(err(line, format!("degree {g} outside 1..={MAX_DEGREE}")));
                }
                degree = Some(g);
            }
            ("degree", Some(_), _) => return Err(err(line, "repeated degree header")),
            (_, None, _) => return Err(err(line, "missing `degree <g>` header")),
            ("group", Some(_), None) => current = Some(parse_group_header(line, rest.trim())?),
            ("group", Some(_), Some(_)) => return Err(err(line, "`group` before `end`")),
            ("end", Some(g), Some(_)) => {
                let p = current.take().expect("open group");
                entries.push(finish(g, p)?);
            }
            ("end", Some(_), None) => return Err(err(line, "`end` without `group`")),
            (_, Some(g), Some(p)) if t.starts_with('(') => {
                let perm = Perm::parse(g, t).map_err(|e| err(line, e.to_string()))?;
                p.gens.push(perm);
            }
            _ => return Err(err(line, format!("unexpected line {t:?}"))),
        }
    }
    if let Some(p) = current {
        return Err(err(p.line, "group not terminated by `end`"));
    }
    let degree = degree.ok_or_else(|| err(1, "missing `degree <g>` header"))?;
    Ok(Catalog {
        degree,
        entries,
        local: false,
    })
}

fn finish(degree: usize, p: Pending) -> Result<CatalogEntry> {
    let entry = CatalogEntry {
        degree,
        index: p.index,
        generators: p.gens,
        order: p.order,
        name: p.name,
    };
    let group = entry.group()?;
    if group.order() != p.order {
        return Err(err(
            p.line,
            format!("declared order {} but generators give {}", p.order, group.order()),
        ));
    }
    if !group.is_transitive() {
        return Err(Error::NonTransitiveEntry {
            degree,
            index: p.index,
        });
    }
    Ok(entry)
}

pub fn load_catalog(path: &Path) -> Result<Catalog> {
    parse_catalog(&std::fs::read_to_string(path)?)
}

/// Serializes a catalog; `header` lines are written as comments.
pub fn write_catalog(cat: &Catalog, header: &[&str]) -> String {
    let mut out = String::new();
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    let _ = writeln!(out, "degree {}", cat.degree);
    for e in &cat.entries {
        let _ = write!(out, "group {} order {}", e.index, e.order);
        if let Some(n) = &e.name {
            let _ = write!(out, " name {n}");
        }
        out.push('\n');
        for g in &e.generators {
            let _ = writeln!(out, "{g}");
        }
        out.push_str("end\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const C13: &str = "degree 13\ngroup 1 order 13 name C13\n(1,2,3,4,5,6,7,8,9,10,11,12,13)\nend\n";

    #[test]
    fn round_trip() {
        let cat = parse_catalog(C13).unwrap();
        assert_eq!(cat.degree, 13);
        assert_eq!(cat.entries.len(), 1);
        assert_eq!(cat.entries[0].name.as_deref(), Some("C13"));
        assert_eq!(write_catalog(&cat, &[]), C13);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!("# header\n\n{C13}# trailing\n");
        assert_eq!(parse_catalog(&text).unwrap().entries.len(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "degree 4\ngroup 1 order 4\n(1,2,3,4\nend\n";
        assert!(matches!(parse_catalog(bad), Err(Error::Catalog { line: 3, .. })));
        let bad = "degree 4\ngroup 1 order 5\n(1,2,3,4)\nend\n";
        assert!(matches!(parse_catalog(bad), Err(Error::Catalog { line: 2, .. })));
        let bad = "group 1 order 4\n";
        assert!(matches!(parse_catalog(bad), Err(Error::Catalog { line: 1, .. })));
        let bad = "degree 4\ngroup 1 order 4\n(1,2,3,4)\n";
        assert!(matches!(parse_catalog(bad), Err(Error::Catalog { line: 2, .. })));
        let bad = "degree 4\ngroup x order 4\nend\n";
        assert!(matches!(parse_catalog(bad), Err(Error::Catalog { line: 2, .. })));
    }

    #[test]
    fn intransitive_rejected() {
        let bad = "degree 13\ngroup 1 order 12\n(1,2,3,4,5,6,7,8,9,10,11,12)\nend\n";
        let e = parse_catalog(bad).unwrap_err();
        assert!(matches!(e, Error::NonTransitiveEntry { degree: 13, index: 1 }));
        assert!(e.to_string().contains("non-transitive entry"));
    }
}
