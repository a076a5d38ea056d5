//! Plain-text structure-constant tables, one `α β N` line per ordered root
//! pair with `α+β` a root.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use super::{AlgebraType, BasisLabel, RootDatum, RootLabel};
use crate::error::{Error, Result};

pub const TABLE_VERSION: u32 = 1;
const MAGIC: &str = "affvoa-structure-constants";

impl RootDatum {
    pub fn structure_table(&self) -> String {
        let mut out = format!(
            "# [e_a, e_b] = N e_(a+b)\nformat {MAGIC}\nversion {TABLE_VERSION}\ntype {}\nrank {}\n",
            self.kind().letter(),
            self.rank()
        );
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let (BasisLabel::Root(x), BasisLabel::Root(y)) = (self.label(a), self.label(b)) else {
                    continue;
                };
                let n = self.structure_constant(x, y);
                if n != 0 {
                    out.push_str(&format!("{x} {y} {n}\n"));
                }
            }
        }
        out
    }

    /// Builds the datum, going through a structure-constant cache in `dir`
    /// when given. The flag reports whether the cache was hit.
    pub fn load_cached(kind: AlgebraType, rank: usize, dir: Option<&Path>) -> Result<(Self, bool)> {
        let Some(dir) = dir else {
            return Ok((Self::build(kind, rank)?, false));
        };
        let path = cache_path(dir, kind, rank);
        if let Ok(text) = std::fs::read_to_string(&path) {
            return Ok((Self::from_table(kind, rank, &text)?, true));
        }
        let d = Self::build(kind, rank)?;
        std::fs::create_dir_all(dir)?;
        // write then rename so a concurrent reader never sees half a file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        std::fs::write(&tmp, d.structure_table())?;
        std::fs::rename(&tmp, &path)?;
        Ok((d, false))
    }
}

/// Cache file for `(type, rank)`; the table format and crate versions are
/// part of the name so stale files are never picked up.
pub fn cache_path(dir: &Path, kind: AlgebraType, rank: usize) -> PathBuf {
    dir.join(format!(
        "{}{}-t{TABLE_VERSION}-{}.txt",
        kind.letter(),
        rank,
        env!("CARGO_PKG_VERSION")
    ))
}

fn root_of(s: &str) -> Result<RootLabel> {
    match s.parse::<BasisLabel>()? {
        BasisLabel::Root(r) => Ok(r),
        BasisLabel::Coroot(_) => Err(Error::Parse(format!("expected a root, got `{s}`"))),
    }
}

pub(super) fn parse(
    kind: AlgebraType,
    rank: usize,
    text: &str,
) -> Result<HashMap<(RootLabel, RootLabel), i64>> {
    let mut header: HashMap<&str, &str> = HashMap::new();
    let mut consts = HashMap::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [k, v] => {
                header.insert(k, v);
            }
            [a, b, n] => {
                let n: i64 = n
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad constant in `{line}`")))?;
                consts.insert((root_of(a)?, root_of(b)?), n);
            }
            _ => return Err(Error::Parse(format!("unrecognized table line `{line}`"))),
        }
    }
    let expect = [
        ("format", MAGIC.to_string()),
        ("version", TABLE_VERSION.to_string()),
        ("type", kind.letter().to_string()),
        ("rank", rank.to_string()),
    ];
    for (k, v) in expect {
        if header.get(k).copied() != Some(v.as_str()) {
            return Err(Error::Parse(format!("table header `{k}` mismatch, expected `{v}`")));
        }
    }
    for (&(a, b), &n) in &consts {
        if consts.get(&(b, a)) != Some(&-n) {
            return Err(Error::Parse(format!("table is not antisymmetric at {a} {b}")));
        }
    }
    Ok(consts)
}
