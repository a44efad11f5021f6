use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bredon_cochain, cell_classes, BredonCochain};
use crate::category::{CatModule, CatModuleMap, EICategory};
use crate::error::{Error, Result};
use crate::gcw::{EvaluatedChainComplex, GCWComplex, Homology};
use crate::linalg::{q, RationalMatrix, Q};

/// `H_p(C_G ? \ X^?)` as a contravariant module over the subgroup category, together
/// with the quotient chain complex and homology at each object.
pub fn homology_module(
    x: &GCWComplex,
    cat: &Arc<EICategory>,
    p: usize,
) -> Result<(CatModule, Vec<(EvaluatedChainComplex, Homology)>)> {
    let n = cat.num_objects();
    let tr = cell_classes(x, cat.subgroups())?;
    let data = (0..n)
        .map(|c| {
            let chain = x.quotient_chain(cat, c)?;
            let h = chain.homology(p)?;
            Ok((chain, h))
        })
        .collect::<Result<Vec<_>>>()?;
    let index: Vec<HashMap<(usize, usize), usize>> = data
        .iter()
        .map(|(chain, _)| {
            chain.generators.get(p).map_or_else(HashMap::new, |gens| {
                gens.iter().enumerate().map(|(k, &key)| (key, k)).collect()
            })
        })
        .collect();
    let mut maps = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            for f in 0..cat.mor_count(a, b) {
                let (hb, ha) = (&data[b].1, &data[a].1);
                let mut columns = Vec::with_capacity(hb.dim());
                for k in 0..hb.dim() {
                    let z = hb.reps.column(k);
                    let mut v = vec![Q::zero(); data[a].0.dim(p)];
                    for (pos, coeff) in z.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        let (i, u) = data[b].0.generators[p][pos];
                        let ci = tr[p][i].0;
                        v[index[a][&(i, cat.then(a, b, ci, f, u))]] += coeff;
                    }
                    columns.push(ha.class_of(&v)?);
                }
                maps[a][b].push(RationalMatrix::from_columns(ha.dim(), &columns));
            }
        }
    }
    let dims = data.iter().map(|(_, h)| h.dim()).collect();
    Ok((CatModule::new(Arc::clone(cat), dims, maps)?, data))
}

/// The Kronecker pairing `H^p(X; M) → hom_Sub(H_p(C_G ? \ X^?), M)` in coordinates.
#[derive(Clone, Debug)]
pub struct AlphaReport {
    pub degree: usize,
    /// Columns: images of the cohomology basis in the coordinates of a basis of the hom space.
    pub matrix: RationalMatrix,
    pub source_dim: usize,
    pub target_dim: usize,
    pub bijective: bool,
    /// Unchanged under random changes of cocycle and cycle representatives.
    pub well_defined: bool,
    /// Every image is a natural transformation.
    pub natural: bool,
}

impl AlphaReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.well_defined && self.natural
    }
}

struct Pairing<'a> {
    m: &'a CatModule,
    cochain: &'a BredonCochain,
    data: &'a [(EvaluatedChainComplex, Homology)],
    classes: Vec<usize>,
    p: usize,
}

impl Pairing<'_> {
    /// `φ` evaluated at object `x` on each column of `cycles`.
    fn component(&self, phi: &[Q], x: usize, cycles: &RationalMatrix) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(self.m.dim(x), cycles.cols());
        let gens = &self.data[x].0.generators[self.p];
        for k in 0..cycles.cols() {
            for (pos, &(i, u)) in gens.iter().enumerate() {
                let coeff = cycles.get(pos, k);
                if coeff.is_zero() {
                    continue;
                }
                let block = &phi[self.cochain.block(self.p, i)];
                let value = self.m.map(x, self.classes[i], u).mul_vec(block);
                for (r, v) in value.into_iter().enumerate() {
                    *out.entry_mut(r, k) += coeff * v;
                }
            }
        }
        out
    }

    fn transformation(&self, phi: &[Q]) -> CatModuleMap {
        CatModuleMap {
            components: (0..self.data.len())
                .map(|x| self.component(phi, x, &self.data[x].1.reps))
                .collect(),
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| q(rng.gen_range(-3..=3))).collect()
}

/// Builds α in degree `p` and checks bijectivity, naturality and independence of
/// representatives over `trials` random perturbations drawn from `seed`.
pub fn alpha_map(x: &GCWComplex, m: &CatModule, p: usize, seed: u64, trials: usize) -> Result<AlphaReport> {
    let cat = m.category();
    let cochain = bredon_cochain(x, m)?;
    cochain.validate()?;
    let (hp, data) = homology_module(x, cat, p)?;
    let hom = hp.hom_basis(m)?;
    let target_dim = hom.len();
    if p > x.dim() {
        return Ok(AlphaReport {
            degree: p,
            matrix: RationalMatrix::zeros(target_dim, 0),
            source_dim: 0,
            target_dim,
            bijective: target_dim == 0,
            well_defined: true,
            natural: true,
        });
    }
    let coh = cochain.cohomology(p);
    let tr = cell_classes(x, cat.subgroups())?;
    let pairing = Pairing {
        m,
        cochain: &cochain,
        data: &data,
        classes: tr[p].iter().map(|&(c, _)| c).collect(),
        p,
    };
    let flatten = |phi: &CatModuleMap| -> Vec<Q> {
        phi.components
            .iter()
            .flat_map(|c| (0..c.rows()).flat_map(move |r| c.row(r).to_vec()))
            .collect()
    };
    let hom_cols: Vec<Vec<Q>> = hom.iter().map(flatten).collect();
    let total: usize = (0..cat.num_objects()).map(|x| m.dim(x) * hp.dim(x)).sum();
    let basis = RationalMatrix::from_columns(total, &hom_cols);

    let mut natural = true;
    let mut columns = Vec::with_capacity(coh.dim());
    let images: Vec<CatModuleMap> = (0..coh.dim()).map(|k| pairing.transformation(&coh.reps.column(k))).collect();
    for image in &images {
        natural &= hp.is_natural(m, image);
        let coords = basis
            .solve(&flatten(image))
            .map_err(|_| Error::Verification("α(φ) is not a natural transformation".into()))?;
        columns.push(coords);
    }
    let matrix = RationalMatrix::from_columns(target_dim, &columns);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut well_defined = true;
    for _ in 0..trials {
        for (k, image) in images.iter().enumerate() {
            let mut phi = coh.reps.column(k);
            if p > 0 {
                let psi = random_vector(&mut rng, cochain.dim(p - 1));
                for (a, b) in phi.iter_mut().zip(cochain.coboundary(p - 1).mul_vec(&psi)) {
                    *a += b;
                }
            }
            for (obj, (chain, h)) in data.iter().enumerate() {
                let d = chain.boundary(p + 1);
                let mut cycles = h.reps.clone();
                for c in 0..cycles.cols() {
                    let w = random_vector(&mut rng, d.cols());
                    for (r, b) in d.mul_vec(&w).into_iter().enumerate() {
                        *cycles.entry_mut(r, c) += b;
                    }
                }
                well_defined &= pairing.component(&phi, obj, &cycles) == image.components[obj];
            }
        }
    }
    Ok(AlphaReport {
        degree: p,
        bijective: matrix.is_bijective(),
        source_dim: coh.dim(),
        target_dim,
        matrix,
        well_defined,
        natural,
    })
}
