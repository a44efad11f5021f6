//! Bredon cohomology of finite G-CW complexes with coefficients in modules over the
//! subgroup category, and the assembled theory over a graded coefficient system.
//!
//! Cochains in degree `n` are `⊕_i M(H_i)` over the `n`-cells, with `M(H_i)` taken at
//! the class representative of the isotropy group.

mod alpha;
mod chern;
mod report;

use std::ops::RangeInclusive;
use std::sync::Arc;

pub use alpha::{alpha_map, homology_module, AlphaReport};
pub use chern::{chern_target, verify_collapse, ChernEntry, ChernTargetReport};
pub use report::{parse_records, CollapseReport, Record, Side};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::category::{CatModule, CategoryKind, EICategory};
use crate::error::{Error, Result};
use crate::gcw::GCWComplex;
use crate::group::SubgroupClassTable;
use crate::linalg::{quotient_representatives, RationalMatrix, Q};
use crate::mackey::MackeyFunctor;

/// The cochain complex `hom_Sub(C_*, M)`.
#[derive(Clone, Debug)]
pub struct BredonCochain {
    cell_ids: Vec<Vec<String>>,
    /// `offsets[n][i]`: first coordinate of the block of cell `i`.
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
    /// `coboundaries[n]: C^n → C^{n+1}`, one fewer than the number of degrees.
    coboundaries: Vec<RationalMatrix>,
}

/// Isotropy class and class conjugator of every cell.
pub(crate) fn cell_classes(x: &GCWComplex, table: &SubgroupClassTable) -> Result<Vec<Vec<(usize, usize)>>> {
    (0..=x.dim())
        .map(|n| x.cells(n).iter().map(|c| table.locate(&c.isotropy)).collect())
        .collect()
}

pub fn bredon_cochain(x: &GCWComplex, m: &CatModule) -> Result<BredonCochain> {
    let cat = m.category();
    if cat.kind() != CategoryKind::Sub || !cat.group().same_table(x.group()) {
        return Err(Error::GroupMismatch(format!(
            "coefficients are not a module over the subgroup category of {}",
            x.group().name()
        )));
    }
    let g = &**x.group();
    let tr = cell_classes(x, cat.subgroups())?;
    let mut offsets = Vec::new();
    let mut dims = Vec::new();
    for cells in &tr {
        let mut off = Vec::with_capacity(cells.len());
        let mut total = 0;
        for &(c, _) in cells {
            off.push(total);
            total += m.dim(c);
        }
        offsets.push(off);
        dims.push(total);
    }
    let mut coboundaries = Vec::new();
    for n in 1..=x.dim() {
        let mut d = RationalMatrix::zeros(dims[n], dims[n - 1]);
        for (i, &(ci, ti)) in tr[n].iter().enumerate() {
            for t in x.boundary(n, i) {
                let (cj, tj) = tr[n - 1][t.target];
                let u = g.mul(g.mul(g.inv(tj), g.inv(t.element)), ti);
                let f = cat.index_of(ci, cj, u).ok_or_else(|| {
                    Error::Complex(format!(
                        "boundary of {} does not induce a morphism {} → {}",
                        x.cells(n)[i].id,
                        cat.subgroups().rep(ci),
                        cat.subgroups().rep(cj)
                    ))
                })?;
                let block = m.map(ci, cj, f).scale(&Q::from_integer(t.coeff.into()));
                d.add_block(offsets[n][i], offsets[n - 1][t.target], &block);
            }
        }
        coboundaries.push(d);
    }
    let cell_ids = (0..=x.dim())
        .map(|n| x.cells(n).iter().map(|c| c.id.clone()).collect())
        .collect();
    Ok(BredonCochain {
        cell_ids,
        offsets,
        dims,
        coboundaries,
    })
}

impl BredonCochain {
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// Coordinate range of the block of cell `i` in degree `n`.
    pub fn block(&self, n: usize, i: usize) -> std::ops::Range<usize> {
        let start = self.offsets[n][i];
        let end = self.offsets[n].get(i + 1).copied().unwrap_or(self.dims[n]);
        start..end
    }

    /// `δ^n: C^n → C^{n+1}`, zero outside the stored range.
    pub fn coboundary(&self, n: usize) -> RationalMatrix {
        match self.coboundaries.get(n) {
            Some(d) => d.clone(),
            None => RationalMatrix::zeros(self.dim(n + 1), self.dim(n)),
        }
    }

    /// Checks `δδ = 0`, naming a cell pair where it fails.
    pub fn validate(&self) -> Result<()> {
        for n in 1..self.coboundaries.len() {
            let dd = &self.coboundaries[n] * &self.coboundaries[n - 1];
            if dd.is_zero() {
                continue;
            }
            let (r, c) = (0..dd.rows())
                .flat_map(|r| (0..dd.cols()).map(move |c| (r, c)))
                .find(|&(r, c)| !dd.get(r, c).is_zero())
                .expect("nonzero matrix");
            let top = self.cell_at(n + 1, r);
            let bottom = self.cell_at(n - 1, c);
            return Err(Error::Complex(format!(
                "δ∘δ is not zero from degree {}: the block from cell {} to cell {} has entry {}",
                n - 1,
                bottom,
                top,
                dd.get(r, c)
            )));
        }
        Ok(())
    }

    fn cell_at(&self, n: usize, coord: usize) -> &str {
        let i = self.offsets[n].iter().rposition(|&o| o <= coord).expect("coordinate in range");
        &self.cell_ids[n][i]
    }

    /// `H^p` on echelon-canonical cocycle representatives.
    pub fn cohomology(&self, p: usize) -> CohomologyGroup {
        if p > self.top() {
            let z = RationalMatrix::zeros(0, 0);
            return CohomologyGroup {
                degree: p,
                cocycles: z.clone(),
                coboundaries: z.clone(),
                reps: z,
            };
        }
        let cocycles = self.coboundary(p).kernel_basis();
        let coboundaries = if p == 0 {
            RationalMatrix::zeros(self.dim(0), 0)
        } else {
            self.coboundary(p - 1).image_basis()
        };
        let reps = quotient_representatives(&coboundaries, &cocycles);
        CohomologyGroup {
            degree: p,
            cocycles,
            coboundaries,
            reps,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub cocycles: RationalMatrix,
    pub coboundaries: RationalMatrix,
    /// Cocycles representing a basis of `H^p`.
    pub reps: RationalMatrix,
}

impl CohomologyGroup {
    pub fn dim(&self) -> usize {
        self.reps.cols()
    }
}

/// Cochains and every cohomology group of `X` with coefficients in `M`.
#[derive(Clone, Debug)]
pub struct BredonCohomology {
    pub cochain: BredonCochain,
    pub groups: Vec<CohomologyGroup>,
}

impl BredonCohomology {
    pub fn dims(&self) -> Vec<usize> {
        self.groups.iter().map(CohomologyGroup::dim).collect()
    }

    pub fn dim(&self, p: usize) -> usize {
        self.groups.get(p).map_or(0, CohomologyGroup::dim)
    }
}

pub fn bredon_cohomology(x: &GCWComplex, m: &CatModule) -> Result<BredonCohomology> {
    let cochain = bredon_cochain(x, m)?;
    cochain.validate()?;
    let groups = (0..=cochain.top()).map(|p| cochain.cohomology(p)).collect();
    Ok(BredonCohomology { cochain, groups })
}

/// Which degrees of a periodic coefficient system carry the functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    All,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, q: i64) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => q.rem_euclid(2) == 0,
            Parity::Odd => q.rem_euclid(2) == 1,
        }
    }
}

/// A graded family of Mackey functors `M^q` on a finite range of `q`, zero elsewhere.
#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    q_min: i64,
    entries: Vec<Option<Arc<MackeyFunctor>>>,
}

impl CoefficientSystem {
    pub fn new(q_min: i64, entries: Vec<Option<Arc<MackeyFunctor>>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Dimension("empty coefficient range".into()));
        }
        let mut groups = entries.iter().flatten().map(|m| m.group());
        if let Some(first) = groups.next() {
            if groups.any(|g| !g.same_table(first)) {
                return Err(Error::GroupMismatch("coefficients over different groups".into()));
            }
        }
        Ok(CoefficientSystem { q_min, entries })
    }

    /// `M` in degree 0 only.
    pub fn single(m: MackeyFunctor) -> Self {
        CoefficientSystem {
            q_min: 0,
            entries: vec![Some(Arc::new(m))],
        }
    }

    /// The same functor in every degree of `range` admitted by `parity`.
    pub fn periodic(m: MackeyFunctor, range: RangeInclusive<i64>, parity: Parity) -> Result<Self> {
        let m = Arc::new(m);
        let entries = range
            .clone()
            .map(|q| parity.admits(q).then(|| Arc::clone(&m)))
            .collect();
        Self::new(*range.start(), entries)
    }

    pub fn q_range(&self) -> RangeInclusive<i64> {
        self.q_min..=self.q_min + self.entries.len() as i64 - 1
    }

    pub fn get(&self, q: i64) -> Option<&MackeyFunctor> {
        let k = usize::try_from(q - self.q_min).ok()?;
        self.entries.get(k).and_then(|m| m.as_deref())
    }

    /// Degrees carrying a nonzero functor, ascending.
    pub fn nonzero(&self) -> impl Iterator<Item = (i64, &MackeyFunctor)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(move |(k, m)| m.as_deref().map(|m| (self.q_min + k as i64, m)))
            .filter(|(_, m)| m.dims().iter().any(|&d| d > 0))
    }

    /// Extends the range with the zero functor at `q`.
    pub fn with_zero_at(mut self, q: i64) -> Self {
        while q < self.q_min {
            self.entries.insert(0, None);
            self.q_min -= 1;
        }
        while q > *self.q_range().end() {
            self.entries.push(None);
        }
        self
    }

    /// Short description, such as `repring@0,2`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<(String, Vec<i64>)> = Vec::new();
        for (q, m) in self.nonzero() {
            match parts.iter_mut().find(|(n, _)| n == m.name()) {
                Some((_, qs)) => qs.push(q),
                None => parts.push((m.name().to_string(), vec![q])),
            }
        }
        if parts.is_empty() {
            return "zero".into();
        }
        parts
            .iter()
            .map(|(n, qs)| format!("{n}@{}", qs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join("+")
    }

    /// The subgroup category shared by the nonzero functors, if any.
    pub(crate) fn category(&self) -> Result<Option<Arc<EICategory>>> {
        match self.nonzero().next() {
            Some((_, m)) => Ok(Some(Arc::new(EICategory::sub(Arc::clone(m.table()))?))),
            None => Ok(None),
        }
    }
}

/// One `(p, q)` entry of the assembled theory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BredonEntry {
    pub n: i64,
    pub p: usize,
    pub q: i64,
    pub dim: usize,
    #[serde(with = "report::matrix_serde")]
    pub basis: RationalMatrix,
}

/// `BH^n = Π_{p+q=n} H^p(X; M^q)` over a range of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BredonReport {
    pub space: String,
    pub group: String,
    pub coefficients: String,
    pub n_min: i64,
    pub n_max: i64,
    pub entries: Vec<BredonEntry>,
}

impl BredonReport {
    pub fn total(&self, n: i64) -> usize {
        self.entries.iter().filter(|e| e.n == n).map(|e| e.dim).sum()
    }

    pub fn records(&self) -> Vec<Record> {
        self.entries
            .iter()
            .map(|e| Record {
                side: Side::Bredon,
                n: e.n,
                p: e.p,
                q: e.q,
                class: None,
                dim: e.dim,
            })
            .collect()
    }
}

fn check_ranges(x: &GCWComplex, coeffs: &CoefficientSystem, ns: &RangeInclusive<i64>) -> Result<()> {
    if ns.is_empty() {
        return Err(Error::Dimension("empty degree range".into()));
    }
    if let Some((_, m)) = coeffs.nonzero().next() {
        if !m.group().same_table(x.group()) {
            return Err(Error::GroupMismatch(format!(
                "coefficients over {} on a complex over {}",
                m.group().name(),
                x.group().name()
            )));
        }
    }
    Ok(())
}

/// The assembled theory, restricted to `0 ≤ p ≤ dim X` and the nonzero degrees of `coeffs`.
pub fn assemble_bh(x: &GCWComplex, coeffs: &CoefficientSystem, ns: RangeInclusive<i64>) -> Result<BredonReport> {
    check_ranges(x, coeffs, &ns)?;
    let mut entries = Vec::new();
    if let Some(cat) = coeffs.category()? {
        let mut per_q = Vec::new();
        for (q, m) in coeffs.nonzero() {
            let module = m.to_sub_module(&cat)?;
            per_q.push((q, bredon_cohomology(x, &module)?));
        }
        for n in ns.clone() {
            for p in 0..=x.dim() {
                for (q, h) in &per_q {
                    if n - p as i64 == *q {
                        let g = &h.groups[p];
                        entries.push(BredonEntry {
                            n,
                            p,
                            q: *q,
                            dim: g.dim(),
                            basis: g.reps.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(BredonReport {
        space: x.name().to_string(),
        group: x.group().name().to_string(),
        coefficients: coeffs.describe(),
        n_min: *ns.start(),
        n_max: *ns.end(),
        entries,
    })
}
