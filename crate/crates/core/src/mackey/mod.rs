//! Mackey functors on the subgroups of a fixed finite group.
//!
//! Values are stored on class representatives only. For a subgroup
//! `H = t·R·t⁻¹`, with `R` its representative and `t` the class conjugator,
//! `M(H)` is identified with `M(R)` through `conj(t)`; every accessor works in
//! these transported coordinates.

mod builtin;
mod nu;
mod format;

pub use builtin::{burnside, constant, repring};
pub use nu::{mu_check, nu_of_mackey, primitive_part, MackeyNuReport, MuBlock, MuReport};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{double_cosets, FiniteGroup, Subgroup, SubgroupClassTable};
use crate::linalg::RationalMatrix;

#[derive(Clone, Debug)]
pub struct MackeyFunctor {
    name: String,
    table: Arc<SubgroupClassTable>,
    dims: Vec<usize>,
    /// `conj[c][n]` for `n` in the normalizer of the representative.
    conj: Vec<BTreeMap<usize, RationalMatrix>>,
    /// `res[c][K]: M(rep) → M(K)` for every `K ≤ rep`.
    res: Vec<BTreeMap<Subgroup, RationalMatrix>>,
    /// `ind[c][K]: M(K) → M(rep)` for every `K ≤ rep`.
    ind: Vec<BTreeMap<Subgroup, RationalMatrix>>,
}

/// Structure maps on actual subgroups, in whatever bases are natural to the instance.
pub(crate) trait NaturalData {
    fn dim(&self, h: &Subgroup) -> usize;
    /// `M(H) → M(K)` for `K ≤ H`.
    fn res(&self, h: &Subgroup, k: &Subgroup) -> Result<RationalMatrix>;
    /// `M(K) → M(H)` for `K ≤ H`.
    fn ind(&self, k: &Subgroup, h: &Subgroup) -> Result<RationalMatrix>;
    /// `M(H) → M(gHg⁻¹)`.
    fn conj(&self, g: usize, h: &Subgroup) -> Result<RationalMatrix>;
}

impl MackeyFunctor {
    pub(crate) fn from_parts(
        name: String,
        table: Arc<SubgroupClassTable>,
        dims: Vec<usize>,
        conj: Vec<BTreeMap<usize, RationalMatrix>>,
        res: Vec<BTreeMap<Subgroup, RationalMatrix>>,
        ind: Vec<BTreeMap<Subgroup, RationalMatrix>>,
    ) -> Result<Self> {
        let m = MackeyFunctor {
            name,
            table,
            dims,
            conj,
            res,
            ind,
        };
        m.check_shapes()?;
        Ok(m)
    }

    pub(crate) fn from_natural(name: impl Into<String>, table: Arc<SubgroupClassTable>, data: &impl NaturalData) -> Result<Self> {
        let n = table.num_classes();
        let dims: Vec<usize> = (0..n).map(|c| data.dim(&table.rep(c))).collect();
        let mut conj = Vec::with_capacity(n);
        let mut res = Vec::with_capacity(n);
        let mut ind = Vec::with_capacity(n);
        for c in 0..n {
            let r = table.rep(c);
            let mut cm = BTreeMap::new();
            for x in table.class(c).normalizer.iter() {
                cm.insert(x, data.conj(x, &r)?);
            }
            conj.push(cm);
            let mut rm = BTreeMap::new();
            let mut im = BTreeMap::new();
            for k in table.subgroups().iter().filter(|k| k.is_subgroup_of(&r)) {
                let (ck, t) = table.locate(k)?;
                let tau = data.conj(t, &table.rep(ck))?;
                let tau_inv = tau
                    .inverse()
                    .ok_or_else(|| Error::Mackey(format!("conjugation by {t} onto {k} is not invertible")))?;
                rm.insert(*k, &tau_inv * &data.res(&r, k)?);
                im.insert(*k, &data.ind(k, &r)? * &tau);
            }
            res.push(rm);
            ind.push(im);
        }
        Self::from_parts(name.into(), table, dims, conj, res, ind)
    }

    fn check_shapes(&self) -> Result<()> {
        let t = &self.table;
        let n = t.num_classes();
        if self.dims.len() != n || self.conj.len() != n || self.res.len() != n || self.ind.len() != n {
            return Err(Error::Mackey("data does not cover every subgroup class".into()));
        }
        for c in 0..n {
            let r = t.rep(c);
            let d = self.dims[c];
            for x in t.class(c).normalizer.iter() {
                let m = self.conj[c]
                    .get(&x)
                    .ok_or_else(|| Error::Mackey(format!("missing conj {x} {r}")))?;
                if m.rows() != d || m.cols() != d {
                    return Err(Error::Dimension(format!("conj {x} {r} must be {d}×{d}")));
                }
            }
            for k in t.subgroups().iter().filter(|k| k.is_subgroup_of(&r)) {
                let dk = self.dims[t.class_of(k)?];
                let res = self.res[c]
                    .get(k)
                    .ok_or_else(|| Error::Mackey(format!("missing res {r} {k}")))?;
                let ind = self.ind[c]
                    .get(k)
                    .ok_or_else(|| Error::Mackey(format!("missing ind {k} {r}")))?;
                if res.rows() != dk || res.cols() != d {
                    return Err(Error::Dimension(format!("res {r} {k} must be {dk}×{d}")));
                }
                if ind.rows() != d || ind.cols() != dk {
                    return Err(Error::Dimension(format!("ind {k} {r} must be {d}×{dk}")));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &Arc<SubgroupClassTable> {
        &self.table
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.table.group()
    }

    /// Dimensions at the class representatives.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, h: &Subgroup) -> Result<usize> {
        Ok(self.dims[self.table.class_of(h)?])
    }

    /// `conj(g): M(H) → M(gHg⁻¹)`.
    pub fn conj(&self, g: usize, h: &Subgroup) -> Result<RationalMatrix> {
        let grp = self.group();
        let (c, t) = self.table.locate(h)?;
        let (_, s) = self.table.locate(&h.conjugate(grp, g))?;
        let n = grp.mul(grp.mul(grp.inv(s), g), t);
        Ok(self.conj[c][&n].clone())
    }

    /// `res^H_K` for `K ≤ H`.
    pub fn res(&self, h: &Subgroup, k: &Subgroup) -> Result<RationalMatrix> {
        if !k.is_subgroup_of(h) {
            return Err(Error::NotSubgroup(format!("{k} is not contained in {h}")));
        }
        let grp = self.group();
        let (c, t) = self.table.locate(h)?;
        let k0 = k.conjugate(grp, grp.inv(t));
        Ok(&self.conj(t, &k0)? * &self.res[c][&k0])
    }

    /// `ind^H_K` for `K ≤ H`.
    pub fn ind(&self, k: &Subgroup, h: &Subgroup) -> Result<RationalMatrix> {
        if !k.is_subgroup_of(h) {
            return Err(Error::NotSubgroup(format!("{k} is not contained in {h}")));
        }
        let grp = self.group();
        let (c, t) = self.table.locate(h)?;
        let k0 = k.conjugate(grp, grp.inv(t));
        Ok(&self.ind[c][&k0] * &self.conj(grp.inv(t), k)?)
    }

    /// Replaces one stored induction matrix; used to build negative controls.
    pub fn with_ind(&self, rep_class: usize, k: &Subgroup, matrix: RationalMatrix) -> Result<Self> {
        let mut out = self.clone();
        out.ind[rep_class].insert(*k, matrix);
        out.check_shapes()?;
        Ok(out)
    }

    fn subgroups_of(&self, h: &Subgroup) -> Vec<Subgroup> {
        self.table
            .subgroups()
            .iter()
            .filter(|k| k.is_subgroup_of(h))
            .copied()
            .collect()
    }

    /// Runs every axiom exhaustively; failures are recorded, not raised.
    pub fn validate(&self) -> MackeyValidationReport {
        let mut checks = Vec::new();
        for axiom in Axiom::ALL {
            let mut check = AxiomCheck {
                axiom,
                cases: 0,
                witness: None,
            };
            if let Err(e) = self.run_check(axiom, &mut check) {
                check.witness.get_or_insert(e.to_string());
            }
            checks.push(check);
        }
        MackeyValidationReport {
            functor: self.name.clone(),
            group: self.group().name().to_string(),
            checks,
        }
    }

    fn run_check(&self, axiom: Axiom, check: &mut AxiomCheck) -> Result<()> {
        let t = Arc::clone(&self.table);
        let g = Arc::clone(self.group());
        let fail = |check: &mut AxiomCheck, ok: bool, witness: &dyn Fn() -> String| {
            check.cases += 1;
            if !ok && check.witness.is_none() {
                check.witness = Some(witness());
            }
        };
        for c in 0..t.num_classes() {
            let r = t.rep(c);
            let class = t.class(c);
            match axiom {
                Axiom::ConjugationFunctorial => {
                    for a in class.normalizer.iter() {
                        for b in class.normalizer.iter() {
                            let ok = self.conj[c][&g.mul(a, b)] == &self.conj[c][&a] * &self.conj[c][&b];
                            fail(check, ok, &|| format!("H = {r}, g = {a}, h = {b}"));
                        }
                    }
                }
                Axiom::InnerTrivial => {
                    for x in r.product(&g, &class.centralizer).iter() {
                        let ok = self.conj[c][&x].is_identity();
                        fail(check, ok, &|| format!("H = {r}, g = {x}"));
                    }
                }
                Axiom::IsomorphismIdentity => {
                    let ok = self.res[c][&r].is_identity();
                    fail(check, ok, &|| format!("res {r} {r}"));
                    let ok = self.ind[c][&r].is_identity();
                    fail(check, ok, &|| format!("ind {r} {r}"));
                }
                Axiom::ConjugationCompatible => {
                    for n in class.normalizer.iter() {
                        for k in self.subgroups_of(&r) {
                            let nk = k.conjugate(&g, n);
                            let lhs = &self.res(&r, &nk)? * &self.conj(n, &r)?;
                            let rhs = &self.conj(n, &k)? * &self.res(&r, &k)?;
                            fail(check, lhs == rhs, &|| format!("res: H = {r}, K = {k}, g = {n}"));
                            let lhs = &self.conj(n, &r)? * &self.ind(&k, &r)?;
                            let rhs = &self.ind(&nk, &r)? * &self.conj(n, &k)?;
                            fail(check, lhs == rhs, &|| format!("ind: H = {r}, K = {k}, g = {n}"));
                        }
                    }
                }
                Axiom::Transitivity => {
                    for h in self.subgroups_of(&r) {
                        let res_rh = self.res(&r, &h)?;
                        let ind_hr = self.ind(&h, &r)?;
                        for k in self.subgroups_of(&h) {
                            let ok = &self.res(&h, &k)? * &res_rh == self.res(&r, &k)?;
                            fail(check, ok, &|| format!("res: L = {r}, H = {h}, K = {k}"));
                            let ok = &ind_hr * &self.ind(&k, &h)? == self.ind(&k, &r)?;
                            fail(check, ok, &|| format!("ind: L = {r}, H = {h}, K = {k}"));
                        }
                    }
                }
                Axiom::DoubleCoset => {
                    let subs = self.subgroups_of(&r);
                    for h in &subs {
                        let ind_hr = self.ind(h, &r)?;
                        for k in &subs {
                            let lhs = &self.res(&r, k)? * &ind_hr;
                            let dc = double_cosets(&g, k, h);
                            let reps: Vec<usize> = dc.representatives.iter().copied().filter(|&x| r.contains(x)).collect();
                            let mut rhs = RationalMatrix::zeros(lhs.rows(), lhs.cols());
                            for &x in &reps {
                                let a = h.intersection(&k.conjugate(&g, g.inv(x)));
                                let b = a.conjugate(&g, x);
                                let term = &(&self.ind(&b, k)? * &self.conj(x, &a)?) * &self.res(h, &a)?;
                                rhs = &rhs + &term;
                            }
                            fail(check, lhs == rhs, &|| {
                                let gs: Vec<String> = reps.iter().map(usize::to_string).collect();
                                format!("L = {r}, H = {h}, K = {k}, double cosets K g H with g in [{}]", gs.join(", "))
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The individual axioms checked by [`MackeyFunctor::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    ConjugationFunctorial,
    /// Conjugation by elements of `H · C_G H` is the identity on `M(H)`.
    InnerTrivial,
    /// `res^H_H = ind^H_H = id`.
    IsomorphismIdentity,
    ConjugationCompatible,
    Transitivity,
    DoubleCoset,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::ConjugationFunctorial,
        Axiom::InnerTrivial,
        Axiom::IsomorphismIdentity,
        Axiom::ConjugationCompatible,
        Axiom::Transitivity,
        Axiom::DoubleCoset,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::ConjugationFunctorial => "conjugation functoriality",
            Axiom::InnerTrivial => "axiom (a) inner conjugation",
            Axiom::IsomorphismIdentity => "axiom (b) isomorphisms",
            Axiom::ConjugationCompatible => "conjugation compatibility",
            Axiom::Transitivity => "transitivity",
            Axiom::DoubleCoset => "axiom (c) double coset formula",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub cases: usize,
    /// First counterexample, if any.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyValidationReport {
    pub functor: String,
    pub group: String,
    pub checks: Vec<AxiomCheck>,
}

impl MackeyValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is checked")
    }

    pub fn into_result(self) -> Result<()> {
        match self.checks.iter().find(|c| c.witness.is_some()) {
            None => Ok(()),
            Some(c) => Err(Error::Mackey(format!(
                "{} fails for {} on {}: {}",
                c.axiom.label(),
                self.functor,
                self.group,
                c.witness.as_deref().unwrap_or_default()
            ))),
        }
    }
}

impl fmt::Display for MackeyValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mackey {} on {}", self.functor, self.group)?;
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  PASS {} ({} cases)", c.axiom.label(), c.cases)?,
                Some(w) => writeln!(f, "  FAIL {} ({} cases): {w}", c.axiom.label(), c.cases)?,
            }
        }
        Ok(())
    }
}
