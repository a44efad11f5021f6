use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::report::{CollapseReport, Record, Side};
use super::{assemble_bh, check_ranges, CoefficientSystem};
use crate::error::Result;
use crate::gcw::GCWComplex;
use crate::linalg::equivariant_hom_dim;
use crate::mackey::primitive_part;

/// `dim hom_{W_G H}(H_p(C_G H \ X^H), T_H M^q)` for one class `(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernEntry {
    pub n: i64,
    pub p: usize,
    pub q: i64,
    pub class: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernTargetReport {
    pub space: String,
    pub group: String,
    pub coefficients: String,
    pub n_min: i64,
    pub n_max: i64,
    pub entries: Vec<ChernEntry>,
}

impl ChernTargetReport {
    pub fn total(&self, n: i64) -> usize {
        self.entries.iter().filter(|e| e.n == n).map(|e| e.dim).sum()
    }

    pub fn records(&self) -> Vec<Record> {
        self.entries
            .iter()
            .map(|e| Record {
                side: Side::Chern,
                n: e.n,
                p: e.p,
                q: e.q,
                class: Some(e.class.clone()),
                dim: e.dim,
            })
            .collect()
    }
}

/// `Π_{p+q=n} Π_{(H)} hom_{W_G H}(H_p(C_G H \ X^H), T_H M^q)`, from quotient fixed-point
/// homology and primitive parts only.
pub fn chern_target(x: &GCWComplex, coeffs: &CoefficientSystem, ns: RangeInclusive<i64>) -> Result<ChernTargetReport> {
    check_ranges(x, coeffs, &ns)?;
    let mut entries = Vec::new();
    if let Some(cat) = coeffs.category()? {
        let table = cat.subgroups();
        let functors: Vec<_> = coeffs.nonzero().collect();
        // cells[(class, p, q)] in the order classes, p, q
        let mut cells = Vec::new();
        for c in 0..table.num_classes() {
            let chain = x.quotient_chain(&cat, c)?;
            let homology = (0..=x.dim()).map(|p| chain.homology(p)).collect::<Result<Vec<_>>>()?;
            for &(q, m) in &functors {
                let t = primitive_part(m, c)?;
                for (p, h) in homology.iter().enumerate() {
                    cells.push((c, p, q, equivariant_hom_dim(&h.action, &t.action)?));
                }
            }
        }
        for n in ns.clone() {
            for p in 0..=x.dim() {
                for &(q, _) in &functors {
                    if n - p as i64 != q {
                        continue;
                    }
                    for &(c, p2, q2, dim) in &cells {
                        if p2 == p && q2 == q {
                            entries.push(ChernEntry {
                                n,
                                p,
                                q,
                                class: table.rep(c).elements(),
                                dim,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(ChernTargetReport {
        space: x.name().to_string(),
        group: x.group().name().to_string(),
        coefficients: coeffs.describe(),
        n_min: *ns.start(),
        n_max: *ns.end(),
        entries,
    })
}

/// Computes both sides over `ns` and compares the totals degree by degree.
pub fn verify_collapse(x: &GCWComplex, coeffs: &CoefficientSystem, ns: RangeInclusive<i64>) -> Result<CollapseReport> {
    let bredon = assemble_bh(x, coeffs, ns.clone())?;
    let chern = chern_target(x, coeffs, ns)?;
    let mut records = bredon.records();
    records.extend(chern.records());
    records.sort_by(|a, b| (a.n, a.side).cmp(&(b.n, b.side)));
    Ok(CollapseReport {
        space: bredon.space,
        group: bredon.group,
        coefficients: bredon.coefficients,
        n_min: bredon.n_min,
        n_max: bredon.n_max,
        records,
    })
}
