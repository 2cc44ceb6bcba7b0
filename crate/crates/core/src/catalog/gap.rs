//! Reader for the transitive-groups library files of the GAP system
//! (`transNN.grp`), which store each group as a generator list plus a name.

use super::{Catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Debug)]
enum Value {
    List(Vec<Value>),
    Int(i128),
    Str(String),
    Perm(Vec<Vec<usize>>),
}

struct Reader<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn line(&self) -> usize {
        1 + self.s[..self.pos].iter().filter(|&&c| c == b'\n').count()
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Catalog {
            line: self.line(),
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() {
            match self.s[self.pos] {
                c if c.is_ascii_whitespace() => self.pos += 1,
                b'#' => {
                    while self.pos < self.s.len() && self.s[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                // GAP line continuation
                b'\\' if self.s.get(self.pos + 1) == Some(&b'\n') => self.pos += 2,
                _ => break,
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&format!("expected {:?}", c as char))
        }
    }

    fn int(&mut self) -> Result<i128> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        loop {
            match (self.s.get(self.pos), self.s.get(self.pos + 1)) {
                (Some(c), _) if c.is_ascii_digit() => self.pos += 1,
                (Some(b'\\'), Some(b'\n')) => self.pos += 2,
                _ => break,
            }
        }
        let text: String = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap_or("")
            .chars()
            .filter(|c| *c != '\\' && !c.is_whitespace())
            .collect();
        match text.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.fail("bad integer"),
        }
    }

    fn value(&mut self) -> Result<Value> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut items = Vec::new();
                if self.peek() == Some(b']') {
                    self.pos += 1;
                    return Ok(Value::List(items));
                }
                loop {
                    items.push(self.value()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b']') => {
                            self.pos += 1;
                            return Ok(Value::List(items));
                        }
                        _ => return self.fail("expected ',' or ']'"),
                    }
                }
            }
            Some(b'"') => {
                self.pos += 1;
                let mut out = Vec::new();
                while let Some(&c) = self.s.get(self.pos) {
                    self.pos += 1;
                    match c {
                        b'"' => return Ok(Value::Str(String::from_utf8_lossy(&out).into_owned())),
                        b'\\' => {
                            if let Some(&d) = self.s.get(self.pos) {
                                self.pos += 1;
                                if d != b'\n' {
                                    out.push(d);
                                }
                            }
                        }
                        _ => out.push(c),
                    }
                }
                self.fail("unterminated string")
            }
            Some(b'(') => {
                let mut cycles = Vec::new();
                while self.peek() == Some(b'(') {
                    self.pos += 1;
                    let mut cycle = Vec::new();
                    if self.peek() != Some(b')') {
                        loop {
                            let v = self.int()?;
                            if v <= 0 {
                                return self.fail("points are positive");
                            }
                            cycle.push(v as usize);
                            match self.peek() {
                                Some(b',') => self.pos += 1,
                                Some(b')') => break,
                                _ => return self.fail("expected ',' or ')'"),
                            }
                        }
                    }
                    self.expect(b')')?;
                    if cycle.len() > 1 {
                        cycles.push(cycle);
                    }
                }
                Ok(Value::Perm(cycles))
            }
            Some(c) if c == b'-' || c.is_ascii_digit() => Ok(Value::Int(self.int()?)),
            _ => self.fail("unexpected character"),
        }
    }
}

fn assignment(text: &str, var: &str, degree: usize) -> Result<Option<Value>> {
    let key = format!("{var}[{degree}]:=");
    let Some(at) = text.find(&key) else {
        return Ok(None);
    };
    let mut r = Reader {
        s: text.as_bytes(),
        pos: at + key.len(),
    };
    r.value().map(Some)
}

/// Converts one library file. Indices follow the file's order, starting at 1.
pub fn import_gap(text: &str, degree: usize) -> Result<Catalog> {
    let groups = match assignment(text, "TRANSGRP", degree)? {
        Some(Value::List(items)) => items,
        _ => return Err(Error::MissingCatalog(degree)),
    };
    if groups.is_empty() {
        return Err(Error::MissingCatalog(degree));
    }
    let orders: Vec<Option<u128>> = match assignment(text, "TRANSPROPERTIES", degree)? {
        Some(Value::List(props)) => props
            .iter()
            .map(|p| match p {
                Value::List(fields) => match fields.first() {
                    Some(Value::Int(o)) if *o > 0 => Some(*o as u128),
                    _ => None,
                },
                _ => None,
            })
            .collect(),
        _ => Vec::new(),
    };
    let mut entries = Vec::with_capacity(groups.len());
    for (k, item) in groups.into_iter().enumerate() {
        let index = k + 1;
        let Value::List(fields) = item else {
            return Err(Error::Parse(format!("group {index} is not a list")));
        };
        let mut generators = Vec::new();
        let mut name = None;
        for f in fields {
            match f {
                Value::Perm(cycles) => generators.push(Perm::from_cycles(degree, &cycles)?),
                Value::Str(s) => name = Some(s),
                _ => return Err(Error::Parse(format!("group {index}: unexpected field"))),
            }
        }
        let mut entry = CatalogEntry {
            degree,
            index,
            generators,
            order: 0,
            name,
        };
        let group = entry.group()?;
        entry.order = group.order();
        if let Some(Some(o)) = orders.get(k) {
            if *o != entry.order {
                return Err(Error::Parse(format!(
                    "group {index}: library order {o} but generators give {}",
                    entry.order
                )));
            }
        }
        if !group.is_transitive() {
            return Err(Error::NonTransitiveEntry { degree, index });
        }
        entries.push(entry);
    }
    Ok(Catalog {
        degree,
        entries,
        local: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"## comment
TRANSGRP[4]:=
[[(1,2,3,4),"C(4) = 4"],[(1,4)(2,3),(1,3)
(2,4),"E(4) = 2[x]2"]];
TRANSPROPERTIES[4]:=[[4,1,1,-1,"x",[1]],[4,1,1,1,"y",[2]]];
"#;

    #[test]
    fn reads_library_layout() {
        let cat = import_gap(SAMPLE, 4).unwrap();
        assert_eq!(cat.entries.len(), 2);
        assert_eq!(cat.entries[1].generators.len(), 2);
        assert_eq!(cat.entries[1].generators[1].to_string(), "(1,3)(2,4)");
        assert_eq!(cat.entries[1].name.as_deref(), Some("E(4) = 2[x]2"));
        assert_eq!(cat.entries[0].order, 4);
    }

    #[test]
    fn order_mismatch_detected() {
        let bad = SAMPLE.replace("[[4,1,1,-1", "[[8,1,1,-1");
        assert!(import_gap(&bad, 4).is_err());
    }

    #[test]
    fn missing_degree() {
        assert!(matches!(import_gap(SAMPLE, 5), Err(Error::MissingCatalog(5))));
        assert!(matches!(
            import_gap("TRANSGRP[16]:=[];", 16),
            Err(Error::MissingCatalog(16))
        ));
    }
}
