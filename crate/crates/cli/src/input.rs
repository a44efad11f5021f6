//! Resolving command-line names and paths into parsed inputs.

use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use bredon_core::bredon::{CoefficientSystem, Parity};
use bredon_core::chartab::CharacterTable;
use bredon_core::data;
use bredon_core::gcw::{declared_group, GCWComplex};
use bredon_core::group::{FiniteGroup, SubgroupClassTable};
use bredon_core::mackey::{burnside, constant, repring, MackeyFunctor};
use bredon_core::{Error, Result};
use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coeff {
    Constant,
    Burnside,
    Repring,
    File,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Unknown {
        kind: "file",
        name: format!("{}: {e}", path.display()),
    })
}

/// Prefixes a syntax error with the file it came from.
fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Syntax { line, column, message } => Error::Syntax {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

/// A bundled group name, or a path to a group table file.
pub fn group(spec: &str) -> Result<Arc<FiniteGroup>> {
    let path = PathBuf::from(spec);
    if path.is_file() {
        return in_file(&path, FiniteGroup::parse(&read(&path)?)).map(Arc::new);
    }
    data::group(spec).map(Arc::new)
}

pub fn table(g: &Arc<FiniteGroup>, cap: usize) -> Result<Arc<SubgroupClassTable>> {
    SubgroupClassTable::new(Arc::clone(g), cap).map(Arc::new)
}

/// A bundled space, `point`, `orbit:{..}`, or a path to a G-CW file. The group comes
/// from `--group` when given, otherwise from the file's `group` line.
pub fn space(spec: &str, group_spec: Option<&str>) -> Result<GCWComplex> {
    let path = PathBuf::from(spec);
    let g = match group_spec {
        Some(s) => Some(group(s)?),
        None => None,
    };
    if path.is_file() {
        let text = read(&path)?;
        let g = match g {
            Some(g) => g,
            None => group(&in_file(&path, declared_group(&text))?)?,
        };
        return in_file(&path, GCWComplex::parse(&text, g));
    }
    GCWComplex::builtin(spec, g)
}

/// Bundled character tables followed by any extra files.
pub fn library(extra: &[PathBuf]) -> Result<Vec<CharacterTable>> {
    let mut lib = data::character_tables()?;
    for path in extra {
        let text = read(path)?;
        let name = declared_chartab_group(&text)
            .ok_or_else(|| Error::Syntax {
            line: 1,
            column: 1,
            message: format!("{}: missing `chartab <group>` line", path.display()),
        })?;
        let t = in_file(path, CharacterTable::parse(&text, group(&name)?))?;
        t.validate()?;
        lib.insert(0, t);
    }
    Ok(lib)
}

fn declared_chartab_group(text: &str) -> Option<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find_map(|l| l.strip_prefix("chartab ").map(|n| n.trim().to_string()))
}

pub fn mackey(
    coeff: Coeff,
    file: Option<&Path>,
    table: &Arc<SubgroupClassTable>,
    library: &[CharacterTable],
) -> Result<MackeyFunctor> {
    match coeff {
        Coeff::Constant => constant(Arc::clone(table)),
        Coeff::Burnside => burnside(Arc::clone(table)),
        Coeff::Repring => repring(Arc::clone(table), library),
        Coeff::File => {
            let path = file.ok_or_else(|| Error::Unknown {
                kind: "option",
                name: "--coeff file needs --coeff-file".into(),
            })?;
            in_file(path, MackeyFunctor::parse(&read(path)?, Arc::clone(table)))
        }
    }
}

pub fn coefficients(m: MackeyFunctor, q: RangeInclusive<i64>, parity: Parity) -> Result<CoefficientSystem> {
    CoefficientSystem::periodic(m, q, parity)
}

/// `a..b` with inclusive ends, or a single integer.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<i64>, String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b),
        None => (s, s),
    };
    let a: i64 = a.trim().parse().map_err(|_| format!("`{s}` is not a range a..b"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("`{s}` is not a range a..b"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}
