//! Plain-text file formats.
//!
//! * `qg`: optional `#` comment lines, then the order `n`, then `n` rows of
//!   `n` space-separated 0-based entries.
//! * `qmap`: a line `n m`, then one line of `n` values below `m`.
//! * `bruck`: a line `bruck m k`, the `m×m` base table, then for every
//!   `(a, b)` in lexicographic order a line `block a b` followed by `k`
//!   rows of the block.
//!
//! Writers emit single spaces and a single trailing newline, so
//! `write(read(write(x))) == write(x)` byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use crate::bruck::BruckSystem;
use crate::error::{Error, Result};
use crate::map::QMap;
use crate::quasigroup::Quasigroup;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self { inner: text.lines().enumerate(), last: 0 }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.last, message: message.into() }
    }

    /// Next line that is neither blank nor a `#` comment.
    fn next_content(&mut self) -> Result<&'a str> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Ok(t);
            }
        }
        Err(Error::Parse { line: self.last + 1, message: "unexpected end of input".into() })
    }

    fn numbers(&mut self, expected: usize) -> Result<Vec<usize>> {
        let line = self.next_content()?;
        let values = line
            .split_whitespace()
            .map(|tok| tok.parse::<usize>().map_err(|_| self.err(format!("not an integer: {tok:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if values.len() != expected {
            return Err(self.err(format!("expected {expected} integers, found {}", values.len())));
        }
        Ok(values)
    }

    fn finish(&mut self) -> Result<()> {
        match self.next_content() {
            Ok(extra) => Err(self.err(format!("trailing content: {extra:?}"))),
            Err(_) => Ok(()),
        }
    }
}

fn read_table(lines: &mut Lines<'_>, n: usize) -> Result<Quasigroup> {
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        rows.push(lines.numbers(n)?);
    }
    Quasigroup::new(&rows)
}

fn write_table(out: &mut String, q: &Quasigroup) {
    for row in q.table().chunks(q.order()) {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

pub fn parse_qg(text: &str) -> Result<Quasigroup> {
    let mut lines = Lines::new(text);
    let n = lines.numbers(1)?[0];
    let q = read_table(&mut lines, n)?;
    lines.finish()?;
    Ok(q)
}

pub fn write_qg(q: &Quasigroup) -> String {
    let mut out = format!("{}\n", q.order());
    write_table(&mut out, q);
    out
}

pub fn parse_qmap(text: &str) -> Result<QMap> {
    let mut lines = Lines::new(text);
    let header = lines.numbers(2)?;
    let values = if header[0] == 0 { Vec::new() } else { lines.numbers(header[0])? };
    lines.finish()?;
    QMap::new(header[1], values)
}

pub fn write_qmap(f: &QMap) -> String {
    let values: Vec<String> = f.values().iter().map(usize::to_string).collect();
    format!("{} {}\n{}\n", f.domain_order(), f.codomain_order(), values.join(" "))
}

pub fn parse_bruck(text: &str) -> Result<BruckSystem> {
    let mut lines = Lines::new(text);
    let header = lines.next_content()?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("bruck") {
        return Err(lines.err("expected header `bruck m k`"));
    }
    let dims = parts
        .map(|t| t.parse::<usize>().map_err(|_| lines.err(format!("not an integer: {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let [m, k] = dims[..] else {
        return Err(lines.err("expected header `bruck m k`"));
    };
    let base = read_table(&mut lines, m)?;
    let mut blocks = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            let head = lines.next_content()?;
            if head != format!("block {a} {b}") {
                return Err(lines.err(format!("expected `block {a} {b}`, found {head:?}")));
            }
            blocks.push(read_table(&mut lines, k)?);
        }
    }
    lines.finish()?;
    BruckSystem::new(base, k, blocks)
}

pub fn write_bruck(b: &BruckSystem) -> String {
    let m = b.base_order();
    let mut out = format!("bruck {m} {}\n", b.fiber_size());
    write_table(&mut out, b.base());
    for a in 0..m {
        for c in 0..m {
            let _ = writeln!(out, "block {a} {c}");
            write_table(&mut out, b.block(a, c));
        }
    }
    out
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

pub fn load_qg(path: impl AsRef<Path>) -> Result<Quasigroup> {
    parse_qg(&read_file(path.as_ref())?)
}

pub fn load_qmap(path: impl AsRef<Path>) -> Result<QMap> {
    parse_qmap(&read_file(path.as_ref())?)
}

pub fn load_bruck(path: impl AsRef<Path>) -> Result<BruckSystem> {
    parse_bruck(&read_file(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Axis;
    use crate::fixtures::{iq3, lf4, z};

    #[test]
    fn qg_with_comments() {
        let q = parse_qg("# idempotent\n3\n0 2 1\n2 1 0\n# mid\n1 0 2\n").unwrap();
        assert_eq!(q, iq3());
        assert_eq!(write_qg(&q), "3\n0 2 1\n2 1 0\n1 0 2\n");
    }

    #[test]
    fn qg_errors() {
        assert_eq!(parse_qg("2\n0 0\n1 1\n").unwrap_err(), Error::NotLatin(Axis::Row, 0));
        assert!(matches!(parse_qg("2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_qg("2\n0 1\n1 x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_qg("2\n0 1\n1 0\n5\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_qg("2\n0 1 1\n1 0\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn qmap_format() {
        let f = parse_qmap("4 4\n0 2 0 2\n").unwrap();
        assert_eq!(f.values(), &[0, 2, 0, 2]);
        assert_eq!(write_qmap(&f), "4 4\n0 2 0 2\n");
        assert!(matches!(parse_qmap("2 2\n0 2\n"), Err(Error::MapValueOutOfRange { .. })));
    }

    #[test]
    fn bruck_format() {
        let b = BruckSystem::from_fn(z(2), 2, |a, _, x, y| (x + a + y) % 2).unwrap();
        let text = write_bruck(&b);
        assert!(text.starts_with("bruck 2 2\n0 1\n1 0\nblock 0 0\n0 1\n1 0\nblock 0 1\n"));
        assert_eq!(parse_bruck(&text).unwrap(), b);
        assert_eq!(b.compose().quasigroup, lf4());

        let misordered = text.replacen("block 0 1", "block 1 0", 1);
        assert!(matches!(parse_bruck(&misordered), Err(Error::Parse { .. })));
        assert!(matches!(parse_bruck("bruck 1\n0\n"), Err(Error::Parse { .. })));
    }
}
