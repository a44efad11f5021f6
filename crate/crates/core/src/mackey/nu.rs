use std::sync::Arc;

use super::MackeyFunctor;
use crate::category::{nu_map, retraction_rho, splitting_t, CatModule, CategoryKind, EICategory, NuReport, Splitting};
use crate::error::{Error, Result};
use crate::linalg::{q, GroupAction, RationalMatrix, Q};

impl MackeyFunctor {
    fn sub_map(&self, x: usize, y: usize, a: usize) -> Result<RationalMatrix> {
        let g = self.group();
        let (h, k) = (self.table.rep(x), self.table.rep(y));
        let image = h.conjugate(g, a);
        Ok(&self.conj(g.inv(a), &image)? * &self.res(&k, &image)?)
    }

    /// The contravariant `Sub(G)`-module `H ↦ M(H)`; a morphism `c(a): H → K` acts by
    /// `conj(a⁻¹) ∘ res^K_{aHa⁻¹}`.
    ///
    /// Every element of each morphism class is tried, so a failure of
    /// well-definedness is reported rather than hidden by the choice of representative.
    pub fn to_sub_module(&self, cat: &Arc<EICategory>) -> Result<CatModule> {
        if cat.kind() != CategoryKind::Sub || !cat.group().same_table(self.group()) {
            return Err(Error::GroupMismatch("expected the subgroup category of the functor's group".into()));
        }
        let g = self.group();
        let n = cat.num_objects();
        let mut maps = vec![vec![Vec::new(); n]; n];
        for x in 0..n {
            for y in 0..n {
                for (f, &a) in cat.mor(x, y).iter().enumerate() {
                    let m = self.sub_map(x, y, a)?;
                    for b in (0..g.order()).filter(|&b| b != a && cat.index_of(x, y, b) == Some(f)) {
                        if self.sub_map(x, y, b)? != m {
                            return Err(Error::Mackey(format!(
                                "morphism {} → {} has representatives {a} and {b} acting differently",
                                self.table.rep(x),
                                self.table.rep(y)
                            )));
                        }
                    }
                    maps[x][y].push(m);
                }
            }
        }
        CatModule::new(Arc::clone(cat), self.dims.clone(), maps)
    }
}

/// `T_H M`: the joint kernel of the restrictions to all proper subgroups of the
/// representative of class `c`, with its Weyl group action.
pub fn primitive_part(m: &MackeyFunctor, c: usize) -> Result<Splitting> {
    let t = m.table();
    let r = t.rep(c);
    let mut parts = Vec::new();
    for k in t.subgroups().iter().filter(|k| k.is_subgroup_of(&r) && **k != r) {
        parts.push(m.res(&r, k)?);
    }
    let refs: Vec<&RationalMatrix> = parts.iter().collect();
    let basis = RationalMatrix::vstack(&refs, m.dims()[c]).kernel_basis();
    let weyl = &t.class(c).weyl;
    let mats = (0..weyl.order())
        .map(|w| m.conj(weyl.lift(w), &r))
        .collect::<Result<Vec<_>>>()?;
    let action = GroupAction::new(Arc::clone(weyl.group()), mats)?.restrict(&basis)?;
    Ok(Splitting { basis, action })
}

#[derive(Clone, Debug)]
pub struct MackeyNuReport {
    pub module: CatModule,
    pub nu: NuReport,
    /// Whether the primitive part agrees with the splitting functor `T` of the module, per class.
    pub primitive_agrees: Vec<bool>,
}

impl MackeyNuReport {
    pub fn passed(&self) -> bool {
        self.nu.all_bijective() && self.nu.natural && self.primitive_agrees.iter().all(|&b| b)
    }
}

pub fn nu_of_mackey(m: &MackeyFunctor, cat: &Arc<EICategory>) -> Result<MackeyNuReport> {
    let module = m.to_sub_module(cat)?;
    let mut primitive_agrees = Vec::with_capacity(cat.num_objects());
    for c in 0..cat.num_objects() {
        let a = primitive_part(m, c)?;
        let b = splitting_t(&module, c)?;
        primitive_agrees.push(a.basis == b.basis && a.action.matrices() == b.action.matrices());
    }
    let nu = nu_map(&module)?;
    Ok(MackeyNuReport {
        module,
        nu,
        primitive_agrees,
    })
}

/// One diagonal block of `ν(H) ∘ μ(H)`: an orbit of `mor(K, H)` under `aut(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuBlock {
    pub class: usize,
    /// Canonical element of the orbit representative `K → H`.
    pub element: usize,
    pub dim: usize,
    /// The scalar on the diagonal, when the block is a multiple of the identity.
    pub multiple: Option<Q>,
    /// `[N_H(aKa⁻¹) : aKa⁻¹]`.
    pub expected: usize,
}

#[derive(Clone, Debug)]
pub struct MuReport {
    pub object: usize,
    pub blocks: Vec<MuBlock>,
    pub matrix: RationalMatrix,
    pub invertible: bool,
    pub violations: Vec<String>,
}

impl MuReport {
    pub fn passed(&self) -> bool {
        self.invertible && self.violations.is_empty()
    }
}

/// Assembles `μ(H)` from inductions of the primitive parts and checks that
/// `ν(H) ∘ μ(H)` is block triangular for subconjugacy, with each diagonal block
/// the identity times `[N_H(aKa⁻¹) : aKa⁻¹]`.
pub fn mu_check(m: &MackeyFunctor, cat: &Arc<EICategory>, c: usize) -> Result<MuReport> {
    let module = m.to_sub_module(cat)?;
    let table = m.table();
    let g = m.group();
    let h = table.rep(c);
    let n = cat.num_objects();

    struct Piece {
        class: usize,
        f: usize,
        invariants: RationalMatrix,
    }
    let mut splittings = Vec::with_capacity(n);
    let mut rhos = Vec::with_capacity(n);
    let mut pieces = Vec::new();
    for k in 0..n {
        let t = splitting_t(&module, k)?;
        rhos.push(retraction_rho(&module, k, &t));
        let aut = cat.aut(k);
        let mut seen = vec![false; cat.mor_count(k, c)];
        for f in 0..cat.mor_count(k, c) {
            if seen[f] {
                continue;
            }
            let mut avg = RationalMatrix::zeros(t.action.dim(), t.action.dim());
            for w in 0..aut.order() {
                let fw = cat.then(k, k, c, w, f);
                seen[fw] = true;
                if fw == f {
                    avg = &avg + t.action.matrix(w);
                }
            }
            pieces.push(Piece {
                class: k,
                f,
                invariants: avg.image_basis(),
            });
        }
        splittings.push(t);
    }

    let total: usize = pieces.iter().map(|p| p.invariants.cols()).sum();
    let mut violations = Vec::new();
    if total != m.dims()[c] {
        violations.push(format!("pieces have total dimension {total}, M({h}) has {}", m.dims()[c]));
    }

    let mut domain = Vec::new();
    for p in &pieces {
        let k = table.rep(p.class);
        let a = cat.mor(p.class, c)[p.f];
        let image = k.conjugate(g, a);
        let push = &m.ind(&image, &h)? * &m.conj(a, &k)?;
        let vs = &splittings[p.class].basis * &p.invariants;
        domain.push(&push * &vs);
    }
    let refs: Vec<&RationalMatrix> = domain.iter().collect();
    let mu = RationalMatrix::hstack(&refs);

    let mut rows = Vec::new();
    for p in &pieces {
        let y = &(&rhos[p.class] * module.map(p.class, c, p.f)) * &mu;
        let coords = if p.invariants.cols() == 0 {
            RationalMatrix::zeros(0, total)
        } else {
            p.invariants.solve_matrix(&y).map_err(|_| {
                Error::Verification(format!("ν(H)∘μ(H) leaves the invariants of {}", table.rep(p.class)))
            })?
        };
        rows.push(coords);
    }
    let refs: Vec<&RationalMatrix> = rows.iter().collect();
    let matrix = RationalMatrix::vstack(&refs, total);

    let mut blocks = Vec::new();
    let mut r0 = 0;
    for (i, pi) in pieces.iter().enumerate() {
        let di = pi.invariants.cols();
        let mut c0 = 0;
        for (j, pj) in pieces.iter().enumerate() {
            let dj = pj.invariants.cols();
            let block = matrix.block(r0, c0, di, dj);
            let (ki, kj) = (table.rep(pi.class), table.rep(pj.class));
            if i == j {
                let a = cat.mor(pi.class, c)[pi.f];
                let image = ki.conjugate(g, a);
                let expected = image.normalizer(g).intersection(&h).order() / image.order();
                let multiple = (di > 0)
                    .then(|| block.get(0, 0).clone())
                    .filter(|s| block == RationalMatrix::scalar(di, s));
                match &multiple {
                    Some(s) if *s == q(expected as i64) => {}
                    None if di == 0 => {}
                    _ => violations.push(format!(
                        "diagonal block at {ki} via {a} is not {expected} times the identity"
                    )),
                }
                blocks.push(MuBlock {
                    class: pi.class,
                    element: a,
                    dim: di,
                    multiple,
                    expected,
                });
            } else if !block.is_zero() {
                if pi.class == pj.class {
                    violations.push(format!("block between two orbits of {ki} is nonzero"));
                } else if !table.is_subconjugate(&kj, &ki) {
                    violations.push(format!("block from {kj} to {ki} is nonzero but {kj} is not subconjugate to {ki}"));
                }
            }
            c0 += dj;
        }
        r0 += di;
    }
    let invertible = matrix.is_square() && matrix.is_bijective();
    Ok(MuReport {
        object: c,
        blocks,
        matrix,
        invertible,
        violations,
    })
}
