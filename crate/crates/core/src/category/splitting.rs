use std::sync::Arc;

use num_traits::One;

use super::{CatModule, CatModuleMap, EICategory};
use crate::error::{Error, Result};
use crate::linalg::{complement_basis, GroupAction, RationalMatrix, Q};

/// A splitting functor evaluated at one object: a subspace (or quotient) of `M(c)`
/// with its `aut(c)`-action.
#[derive(Clone, Debug)]
pub struct Splitting {
    /// For `T`: a basis of the kernel. For `S`: vectors representing a basis of the cokernel.
    pub basis: RationalMatrix,
    pub action: GroupAction,
}

/// `T_c M`: the joint kernel of `M(f): M(c) → M(d)` over all non-isomorphisms `f: d → c`.
pub fn splitting_t(m: &CatModule, c: usize) -> Result<Splitting> {
    let cat = m.category();
    let mut parts: Vec<&RationalMatrix> = Vec::new();
    for d in 0..cat.num_objects() {
        if cat.is_iso(d, c) {
            continue;
        }
        for f in 0..cat.mor_count(d, c) {
            parts.push(m.map(d, c, f));
        }
    }
    let stacked = RationalMatrix::vstack(&parts, m.dim(c));
    let basis = stacked.kernel_basis();
    let action = m.aut_action(c).restrict(&basis)?;
    Ok(Splitting { basis, action })
}

/// `S_c M`: the cokernel of `⊕ M(f): M(d) → M(c)` over all non-isomorphisms `f: c → d`.
pub fn splitting_s(m: &CatModule, c: usize) -> Result<Splitting> {
    let cat = m.category();
    let mut parts: Vec<&RationalMatrix> = Vec::new();
    for d in 0..cat.num_objects() {
        if cat.is_iso(c, d) {
            continue;
        }
        for f in 0..cat.mor_count(c, d) {
            parts.push(m.map(c, d, f));
        }
    }
    let image = if parts.is_empty() {
        RationalMatrix::zeros(m.dim(c), 0)
    } else {
        RationalMatrix::hstack(&parts).image_basis()
    };
    let basis = complement_basis(&image);
    let action = m.aut_action(c).on_quotient(&image, &basis)?;
    Ok(Splitting { basis, action })
}

/// An `aut(c)`-equivariant retraction `M(c) → T_c M` of the inclusion.
///
/// Starts from the coordinate projection onto the free variables of the kernel
/// basis and averages it over `aut(c)`.
pub fn retraction_rho(m: &CatModule, c: usize, t: &Splitting) -> RationalMatrix {
    let k = t.basis.cols();
    let n = m.dim(c);
    // projection with kernel spanned by the unit vectors off the echelon pivots
    let pivots = t.basis.transpose().rref().pivots;
    let mut pi = RationalMatrix::zeros(k, n);
    for (i, &r) in pivots.iter().enumerate() {
        pi.set(i, r, Q::one());
    }
    let pi = match (&pi * &t.basis).inverse() {
        Some(inv) => &inv * &pi,
        None => unreachable!("kernel basis columns are independent"),
    };
    let action = m.aut_action(c);
    let aut = action.group();
    let mut acc = RationalMatrix::zeros(k, n);
    for w in 0..aut.order() {
        let term = &(t.action.matrix(w) * &pi) * action.matrix(aut.inv(w));
        acc = &acc + &term;
    }
    acc.scale(&Q::new(1.into(), (aut.order() as i64).into()))
}

struct Coinduced {
    module: CatModule,
    bases: Vec<RationalMatrix>,
}

fn coinduce(cat: &Arc<EICategory>, c: usize, v: &GroupAction) -> Result<Coinduced> {
    if !v.group().same_table(cat.aut(c)) {
        return Err(Error::GroupMismatch(format!("module is not over aut of object {c}")));
    }
    let n = cat.num_objects();
    let dv = v.dim();
    let aut = cat.aut(c);
    let gens = aut.generators().to_vec();
    let mut bases = Vec::with_capacity(n);
    for x in 0..n {
        let m = cat.mor_count(c, x);
        let unknowns = m * dv;
        let mut sys = RationalMatrix::zeros(gens.len() * unknowns, unknowns);
        for (s, &w) in gens.iter().enumerate() {
            let winv = aut.inv(w);
            for f in 0..m {
                // φ(w·f) − ρ(w) φ(f), with w·f = "w⁻¹ then f"
                let wf = cat.then(c, c, x, winv, f);
                let rho = v.matrix(w);
                for i in 0..dv {
                    let row = s * unknowns + f * dv + i;
                    *sys.entry_mut(row, wf * dv + i) += Q::one();
                    for j in 0..dv {
                        *sys.entry_mut(row, f * dv + j) -= rho.get(i, j);
                    }
                }
            }
        }
        bases.push(sys.kernel_basis());
    }
    let dims: Vec<usize> = bases.iter().map(RationalMatrix::cols).collect();
    let cat2 = Arc::clone(cat);
    let b2 = bases.clone();
    let module = CatModule::from_fn(Arc::clone(cat), dims, move |x, y, u| {
        let (mx, my) = (cat2.mor_count(c, x), cat2.mor_count(c, y));
        let mut pull = RationalMatrix::zeros(mx * dv, my * dv);
        for f in 0..mx {
            let fu = cat2.then(c, x, y, f, u);
            for i in 0..dv {
                pull.set(f * dv + i, fu * dv + i, Q::one());
            }
        }
        let img = &pull * &b2[y];
        if b2[x].cols() == 0 {
            return RationalMatrix::zeros(0, b2[y].cols());
        }
        b2[x].solve_matrix(&img).expect("pullback of an equivariant map is equivariant")
    });
    Ok(Coinduced { module, bases })
}

/// `i(c)_! V`: at `x`, the `aut(c)`-equivariant maps `Q mor(c, x) → V`.
pub fn coinduction(cat: &Arc<EICategory>, c: usize, v: &GroupAction) -> Result<CatModule> {
    Ok(coinduce(cat, c, v)?.module)
}

/// `i(c)_* V`: at `x`, the tensor product `V ⊗_{Q aut(c)} Q mor(x, c)`.
pub fn induction(cat: &Arc<EICategory>, c: usize, v: &GroupAction) -> Result<CatModule> {
    if !v.group().same_table(cat.aut(c)) {
        return Err(Error::GroupMismatch(format!("module is not over aut of object {c}")));
    }
    let n = cat.num_objects();
    let dv = v.dim();
    let aut = cat.aut(c);
    let gens = aut.generators().to_vec();
    let mut reps = Vec::with_capacity(n);
    let mut projections = Vec::with_capacity(n);
    for x in 0..n {
        let m = cat.mor_count(x, c);
        let total = m * dv;
        let mut relations = Vec::new();
        for &w in &gens {
            let winv = v.matrix(aut.inv(w));
            for f in 0..m {
                let fw = cat.then(x, c, c, f, w);
                for i in 0..dv {
                    // ρ(w⁻¹) e_i ⊗ f − e_i ⊗ (f then w)
                    let mut col = vec![Q::from_integer(0.into()); total];
                    for j in 0..dv {
                        col[f * dv + j] += winv.get(j, i);
                    }
                    col[fw * dv + i] -= Q::one();
                    relations.push(col);
                }
            }
        }
        let rel = RationalMatrix::from_columns(total, &relations).image_basis();
        let rep = complement_basis(&rel);
        let full = RationalMatrix::hstack(&[&rel, &rep]);
        let inv = full.inverse().expect("basis completed by unit vectors");
        projections.push(inv.block(rel.cols(), 0, rep.cols(), total));
        reps.push(rep);
    }
    let dims: Vec<usize> = reps.iter().map(RationalMatrix::cols).collect();
    let cat2 = Arc::clone(cat);
    Ok(CatModule::from_fn(Arc::clone(cat), dims, move |x, y, u| {
        let (mx, my) = (cat2.mor_count(x, c), cat2.mor_count(y, c));
        let mut push = RationalMatrix::zeros(mx * dv, my * dv);
        for f in 0..my {
            let uf = cat2.then(x, y, c, u, f);
            for i in 0..dv {
                push.set(uf * dv + i, f * dv + i, Q::one());
            }
        }
        &(&projections[x] * &push) * &reps[y]
    }))
}

/// The map `ν(M): M → ⊕_c i(c)_! T_c M` with per-object verdicts.
#[derive(Clone, Debug)]
pub struct NuReport {
    pub target: CatModule,
    pub map: CatModuleMap,
    /// Dimension of `i(c)_! T_c M` at each object, indexed `[x][c]`.
    pub pieces: Vec<Vec<usize>>,
    pub injective: Vec<bool>,
    pub bijective: Vec<bool>,
    pub natural: bool,
}

impl NuReport {
    pub fn all_injective(&self) -> bool {
        self.injective.iter().all(|&b| b)
    }

    pub fn all_bijective(&self) -> bool {
        self.bijective.iter().all(|&b| b)
    }
}

pub fn nu_map(m: &CatModule) -> Result<NuReport> {
    let cat = m.category();
    let n = cat.num_objects();
    let mut coinduced = Vec::with_capacity(n);
    let mut rhos = Vec::with_capacity(n);
    for c in 0..n {
        let t = splitting_t(m, c)?;
        rhos.push(retraction_rho(m, c, &t));
        coinduced.push(coinduce(cat, c, &t.action)?);
    }
    let parts: Vec<&CatModule> = coinduced.iter().map(|ci| &ci.module).collect();
    let target = CatModule::direct_sum(&parts)?;
    let mut components = Vec::with_capacity(n);
    let mut pieces = Vec::with_capacity(n);
    for x in 0..n {
        let mut blocks = Vec::with_capacity(n);
        let mut dims = Vec::with_capacity(n);
        for c in 0..n {
            let ci = &coinduced[c];
            let k = rhos[c].rows();
            let mf = cat.mor_count(c, x);
            let mut raw = RationalMatrix::zeros(mf * k, m.dim(x));
            for f in 0..mf {
                raw.set_block(f * k, 0, &(&rhos[c] * m.map(c, x, f)));
            }
            let block = if ci.bases[x].cols() == 0 {
                RationalMatrix::zeros(0, m.dim(x))
            } else {
                ci.bases[x].solve_matrix(&raw).map_err(|_| {
                    Error::Verification(format!("ν at object {x} does not land in the equivariant maps"))
                })?
            };
            dims.push(block.rows());
            blocks.push(block);
        }
        let refs: Vec<&RationalMatrix> = blocks.iter().collect();
        components.push(RationalMatrix::vstack(&refs, m.dim(x)));
        pieces.push(dims);
    }
    let map = CatModuleMap { components };
    let natural = m.is_natural(&target, &map);
    let injective = map.components.iter().map(RationalMatrix::is_injective).collect();
    let bijective = map.components.iter().map(RationalMatrix::is_bijective).collect();
    Ok(NuReport {
        target,
        map,
        pieces,
        injective,
        bijective,
        natural,
    })
}

/// Results of checking `S_d i(c)_* V` and `T_d i(c)_! V` against `V` (for `d = c`) or `0`.
#[derive(Clone, Debug)]
pub struct SplittingCheck {
    pub object: usize,
    /// `(d, dim S_d i(c)_* V, dim T_d i(c)_! V)`.
    pub dims: Vec<(usize, usize, usize)>,
    pub violations: Vec<String>,
}

impl SplittingCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_splitting_identities(cat: &Arc<EICategory>, c: usize, v: &GroupAction) -> Result<SplittingCheck> {
    let ind = induction(cat, c, v)?;
    let coind = coinduction(cat, c, v)?;
    ind.validate()?;
    coind.validate()?;
    let chi = v.character();
    let mut dims = Vec::new();
    let mut violations = Vec::new();
    for d in 0..cat.num_objects() {
        let s = splitting_s(&ind, d)?;
        let t = splitting_t(&coind, d)?;
        dims.push((d, s.action.dim(), t.action.dim()));
        if d == c {
            if s.action.character() != chi {
                violations.push(format!("S_{c} i({c})_* V is not isomorphic to V"));
            }
            if t.action.character() != chi {
                violations.push(format!("T_{c} i({c})_! V is not isomorphic to V"));
            }
        } else {
            if s.action.dim() != 0 {
                violations.push(format!("S_{d} i({c})_* V has dimension {}", s.action.dim()));
            }
            if t.action.dim() != 0 {
                violations.push(format!("T_{d} i({c})_! V has dimension {}", t.action.dim()));
            }
        }
    }
    Ok(SplittingCheck {
        object: c,
        dims,
        violations,
    })
}
