//! The invariant suite over a corpus of data files, either the bundled one or a
//! `data/`-style directory on disk.

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use crate::bredon::{bredon_cochain, verify_collapse, CoefficientSystem};
use crate::category::EICategory;
use crate::chartab::CharacterTable;
use crate::data;
use crate::error::{Error, Result};
use crate::gcw::{declared_group, GCWComplex};
use crate::group::{FiniteGroup, SubgroupClassTable};
use crate::mackey::{burnside, constant, repring};

/// Files of a corpus as `(path relative to the corpus root, contents)`.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub groups: Vec<(String, String)>,
    pub chartabs: Vec<(String, String)>,
    pub spaces: Vec<(String, String)>,
}

impl Corpus {
    pub fn bundled() -> Self {
        let take = |dir: &str, ext: &str, list: &[(&str, &str)]| {
            let mut v: Vec<(String, String)> = list
                .iter()
                .map(|(n, t)| (format!("{dir}/{n}.{ext}"), t.to_string()))
                .collect();
            v.sort();
            v
        };
        Corpus {
            groups: take("groups", "grp", data::GROUPS),
            chartabs: take("chartabs", "ctb", data::CHARACTER_TABLES),
            spaces: take("spaces", "gcw", data::SPACES),
        }
    }

    /// Reads `groups/*.grp`, `chartabs/*.ctb` and `spaces/*.gcw` under `root`, sorted by name.
    pub fn from_dir(root: &Path) -> Result<Self> {
        let read = |dir: &str, ext: &str| -> Result<Vec<(String, String)>> {
            let path = root.join(dir);
            let entries = fs::read_dir(&path).map_err(|e| io_error(&path, e))?;
            let mut out = Vec::new();
            for entry in entries {
                let p = entry.map_err(|e| io_error(&path, e))?.path();
                if p.extension().and_then(|e| e.to_str()) == Some(ext) {
                    let text = fs::read_to_string(&p).map_err(|e| io_error(&p, e))?;
                    let name = p.file_name().and_then(|n| n.to_str()).unwrap_or_default();
                    out.push((format!("{dir}/{name}"), text));
                }
            }
            out.sort();
            Ok(out)
        };
        Ok(Corpus {
            groups: read("groups", "grp")?,
            chartabs: read("chartabs", "ctb")?,
            spaces: read("spaces", "gcw")?,
        })
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Unknown {
        kind: "file",
        name: format!("{}: {e}", path.display()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfCheck {
    pub file: String,
    pub check: String,
    /// `None` on success, otherwise the failure message.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub checks: Vec<SelfCheck>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &SelfCheck> {
        self.checks.iter().filter(|c| c.failure.is_some())
    }

    fn record<T>(&mut self, file: &str, check: &str, result: Result<T>) -> Option<T> {
        let (value, failure) = match result {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        self.checks.push(SelfCheck {
            file: file.to_string(),
            check: check.to_string(),
            failure,
        });
        value
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "PASS {}: {}", c.file, c.check)?,
                Some(e) => writeln!(f, "FAIL {}: {}: {e}", c.file, c.check)?,
            }
        }
        let failed = self.failures().count();
        writeln!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn stem(file: &str) -> &str {
    let base = file.rsplit('/').next().unwrap_or(file);
    base.split('.').next().unwrap_or(base)
}

/// Runs the suite. With `quick`, only groups of order at most 8 and the spaces over them.
pub fn run(corpus: &Corpus, quick: bool) -> SelftestReport {
    let mut report = SelftestReport::default();
    let limit = if quick { 8 } else { usize::MAX };

    let mut groups: Vec<(String, Arc<FiniteGroup>)> = Vec::new();
    for (file, text) in &corpus.groups {
        let Some(g) = report.record(file, "group table", FiniteGroup::parse(text)) else {
            continue;
        };
        if g.order() <= limit {
            groups.push((file.clone(), Arc::new(g)));
        }
    }
    let group_named = |name: &str| groups.iter().find(|(_, g)| g.name() == name).map(|(_, g)| Arc::clone(g));

    let mut library = Vec::new();
    for (file, text) in &corpus.chartabs {
        let Some(g) = group_named(stem(file)) else {
            continue;
        };
        let table = CharacterTable::parse(text, g).and_then(|t| t.validate().map(|()| t));
        if let Some(t) = report.record(file, "orthogonality", table) {
            library.push(t);
        }
    }

    let mut functors = Vec::new();
    for (file, g) in &groups {
        let Some(t) = report.record(file, "subgroup lattice", SubgroupClassTable::new(Arc::clone(g), 64)) else {
            continue;
        };
        let t = Arc::new(t);
        let Some(cat) = report.record(file, "subgroup category", EICategory::sub(Arc::clone(&t))) else {
            continue;
        };
        let cat = Arc::new(cat);
        let built = [
            constant(Arc::clone(&t)),
            burnside(Arc::clone(&t)),
            repring(Arc::clone(&t), &library),
        ];
        for (label, m) in ["constant", "burnside", "repring"].iter().zip(built) {
            let checked = m.and_then(|m| m.validate().into_result().map(|()| m));
            if let Some(m) = report.record(file, &format!("{label} Mackey axioms"), checked) {
                functors.push((g.name().to_string(), Arc::clone(&cat), m));
            }
        }
    }

    for (file, text) in &corpus.spaces {
        let Some(g) = declared_group(text).ok().and_then(|n| group_named(&n)) else {
            if quick {
                continue;
            }
            report.record::<()>(file, "declared group", Err(Error::Unknown {
                kind: "group",
                name: declared_group(text).unwrap_or_default(),
            }));
            continue;
        };
        let Some(x) = report.record(file, "boundary maps and d∘d", GCWComplex::parse(text, Arc::clone(&g))) else {
            continue;
        };
        let t = match SubgroupClassTable::new(Arc::clone(&g), 64) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let euler = x.euler_check(&t);
        let euler = if euler.passed() {
            Ok(())
        } else {
            Err(Error::Verification(euler.to_string()))
        };
        report.record(file, "Euler characteristics", euler);
        let chains = t.subgroups().iter().try_for_each(|h| x.fixed_point_chain(h).validate());
        report.record(file, "fixed-point chains", chains);
        for (_, cat, m) in functors.iter().filter(|(n, _, _)| n == g.name()) {
            let cochain = m
                .to_sub_module(cat)
                .and_then(|module| bredon_cochain(&x, &module))
                .and_then(|c| c.validate());
            report.record(file, &format!("δ∘δ with {}", m.name()), cochain);
            let collapse = verify_collapse(&x, &CoefficientSystem::single(m.clone()), 0..=x.dim() as i64).and_then(|r| {
                if r.passed() {
                    Ok(())
                } else {
                    Err(Error::Verification(format!("degrees {:?} disagree", r.mismatches())))
                }
            });
            report.record(file, &format!("collapse with {}", m.name()), collapse);
        }
    }
    report
}
