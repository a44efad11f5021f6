//! Line-oriented and JSON renderings of the assembled theory and of the collapse comparison.
//!
//! Records have the form `bredon n=0 p=0 q=0 class=- dim=3` or
//! `chern n=0 p=0 q=0 class={0,1} dim=2`; anything else is ignored when reading back.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::{BredonReport, ChernTargetReport};
use crate::error::{Error, Result};
use crate::linalg::fmt_q;
use crate::text::{fmt_set, parse_set};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Bredon,
    Chern,
}

impl Side {
    fn label(self) -> &'static str {
        match self {
            Side::Bredon => "bredon",
            Side::Chern => "chern",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub side: Side,
    pub n: i64,
    pub p: usize,
    pub q: i64,
    /// Elements of the class representative, for target entries.
    pub class: Option<Vec<usize>>,
    pub dim: usize,
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let class = self.class.as_deref().map_or_else(|| "-".to_string(), fmt_set);
        write!(
            f,
            "{} n={} p={} q={} class={} dim={}",
            self.side.label(),
            self.n,
            self.p,
            self.q,
            class,
            self.dim
        )
    }
}

impl Record {
    fn parse(line: &str, ln: usize) -> Result<Option<Record>> {
        let mut words = line.split_whitespace();
        let side = match words.next() {
            Some("bredon") => Side::Bredon,
            Some("chern") => Side::Chern,
            _ => return Ok(None),
        };
        let mut fields = BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| Error::syntax(ln, col(line, w), format!("expected key=value, found `{w}`")))?;
            fields.insert(k, (v, col(line, w)));
        }
        let get = |k: &str| -> Result<(&str, usize)> {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| Error::syntax(ln, 1, format!("record without `{k}=`")))
        };
        let int = |k: &str| -> Result<i64> {
            let (v, c) = get(k)?;
            v.parse().map_err(|_| Error::syntax(ln, c, format!("`{k}` is not an integer")))
        };
        let class = match get("class")? {
            ("-", _) => None,
            (v, c) => Some(parse_set(v).ok_or_else(|| Error::syntax(ln, c, "malformed class"))?),
        };
        let nonneg = |k: &str| -> Result<usize> {
            let v = int(k)?;
            usize::try_from(v).map_err(|_| Error::syntax(ln, get(k).map_or(1, |f| f.1), format!("negative `{k}`")))
        };
        Ok(Some(Record {
            side,
            n: int("n")?,
            p: nonneg("p")?,
            q: int("q")?,
            class,
            dim: nonneg("dim")?,
        }))
    }
}

fn col(line: &str, word: &str) -> usize {
    word.as_ptr() as usize - line.as_ptr() as usize + 1
}

/// Reads back every record of a text report.
pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        if let Some(r) = Record::parse(line, k + 1)? {
            out.push(r);
        }
    }
    Ok(out)
}

/// Both sides of the comparison, record by record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseReport {
    pub space: String,
    pub group: String,
    pub coefficients: String,
    pub n_min: i64,
    pub n_max: i64,
    pub records: Vec<Record>,
}

impl CollapseReport {
    pub fn total(&self, side: Side, n: i64) -> usize {
        self.records
            .iter()
            .filter(|r| r.side == side && r.n == n)
            .map(|r| r.dim)
            .sum()
    }

    /// Degrees where the sides differ, with both totals.
    pub fn mismatches(&self) -> Vec<(i64, usize, usize)> {
        (self.n_min..=self.n_max)
            .map(|n| (n, self.total(Side::Bredon, n), self.total(Side::Chern, n)))
            .filter(|(_, a, b)| a != b)
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.mismatches().is_empty()
    }

    /// Test hook: raises the cohomology side by one in degree `n`.
    #[doc(hidden)]
    pub fn inject_fault(&mut self, n: i64) {
        match self.records.iter_mut().find(|r| r.side == Side::Bredon && r.n == n) {
            Some(r) => r.dim += 1,
            None => self.records.push(Record {
                side: Side::Bredon,
                n,
                p: 0,
                q: n,
                class: None,
                dim: 1,
            }),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = header(&self.space, &self.group, &self.coefficients, self.n_min, self.n_max);
        for n in self.n_min..=self.n_max {
            for r in self.records.iter().filter(|r| r.n == n) {
                let _ = writeln!(s, "{r}");
            }
            let (a, b) = (self.total(Side::Bredon, n), self.total(Side::Chern, n));
            let verdict = if a == b { "agree" } else { "MISMATCH" };
            let _ = writeln!(s, "total n={n} bredon={a} chern={b} {verdict}");
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::syntax(e.line(), e.column(), e.to_string()))
    }
}

fn header(space: &str, group: &str, coeffs: &str, n_min: i64, n_max: i64) -> String {
    format!("# space {space} group {group} coefficients {coeffs} n {n_min}..{n_max}\n")
}

impl BredonReport {
    /// Records with the cocycle basis of each entry, one `cocycle` line per basis vector.
    pub fn to_text(&self) -> String {
        let mut s = header(&self.space, &self.group, &self.coefficients, self.n_min, self.n_max);
        let records = self.records();
        for n in self.n_min..=self.n_max {
            for (r, e) in records.iter().zip(&self.entries).filter(|(r, _)| r.n == n) {
                let _ = writeln!(s, "{r}");
                for c in 0..e.basis.cols() {
                    let entries: Vec<String> = e.basis.column(c).iter().map(fmt_q).collect();
                    let _ = writeln!(s, "  cocycle {}", entries.join(" "));
                }
            }
            let _ = writeln!(s, "total n={n} bredon={}", self.total(n));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::syntax(e.line(), e.column(), e.to_string()))
    }
}

impl ChernTargetReport {
    pub fn to_text(&self) -> String {
        let mut s = header(&self.space, &self.group, &self.coefficients, self.n_min, self.n_max);
        for n in self.n_min..=self.n_max {
            for r in self.records().iter().filter(|r| r.n == n) {
                let _ = writeln!(s, "{r}");
            }
            let _ = writeln!(s, "total n={n} chern={}", self.total(n));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::syntax(e.line(), e.column(), e.to_string()))
    }
}

/// Matrices as `{rows, cols, entries}` with entries as exact rational strings, row-major.
pub(crate) mod matrix_serde {
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    use crate::linalg::{fmt_q, parse_q, RationalMatrix};

    #[derive(Serialize, Deserialize)]
    struct Raw {
        rows: usize,
        cols: usize,
        entries: Vec<String>,
    }

    pub fn serialize<S: Serializer>(m: &RationalMatrix, s: S) -> Result<S::Ok, S::Error> {
        let entries = (0..m.rows()).flat_map(|r| m.row(r).iter().map(fmt_q)).collect();
        Raw {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RationalMatrix, D::Error> {
        let raw = Raw::deserialize(d)?;
        if raw.entries.len() != raw.rows * raw.cols {
            return Err(D::Error::custom("entry count does not match the shape"));
        }
        let data = raw
            .entries
            .iter()
            .map(|e| parse_q(e).ok_or_else(|| D::Error::custom(format!("not a rational number: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RationalMatrix::new(raw.rows, raw.cols, data))
    }
}
