use std::sync::Arc;

use num_traits::{One, Zero};

use super::{project_or_to_sub, CategoryKind, EICategory};
use crate::error::{Error, Result};
use crate::linalg::{GroupAction, RationalMatrix, Q};

/// A contravariant functor from an [`EICategory`] to finite-dimensional rational vector spaces.
///
/// `map(x, y, f)` is `M(f): M(y) → M(x)` for `f: x → y`.
#[derive(Clone, Debug)]
pub struct CatModule {
    cat: Arc<EICategory>,
    dims: Vec<usize>,
    maps: Vec<Vec<Vec<RationalMatrix>>>,
}

/// A natural transformation between modules over the same category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatModuleMap {
    pub components: Vec<RationalMatrix>,
}

impl CatModule {
    /// Builds a module from every structure map and checks functoriality.
    pub fn new(cat: Arc<EICategory>, dims: Vec<usize>, maps: Vec<Vec<Vec<RationalMatrix>>>) -> Result<Self> {
        let m = Self::new_unchecked(cat, dims, maps);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(cat: Arc<EICategory>, dims: Vec<usize>, maps: Vec<Vec<Vec<RationalMatrix>>>) -> Self {
        CatModule { cat, dims, maps }
    }

    /// Builds a module from a function giving `M(f)` for each morphism.
    pub fn from_fn(
        cat: Arc<EICategory>,
        dims: Vec<usize>,
        mut f: impl FnMut(usize, usize, usize) -> RationalMatrix,
    ) -> Self {
        let n = cat.num_objects();
        let maps = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (0..cat.mor_count(x, y)).map(|i| f(x, y, i)).collect())
                    .collect()
            })
            .collect();
        CatModule { cat, dims, maps }
    }

    pub fn zero(cat: Arc<EICategory>) -> Self {
        let n = cat.num_objects();
        Self::from_fn(cat, vec![0; n], |_, _, _| RationalMatrix::zeros(0, 0))
    }

    /// The represented module `Q mor(?, c)`.
    pub fn free(cat: Arc<EICategory>, c: usize) -> Self {
        let n = cat.num_objects();
        let dims = (0..n).map(|x| cat.mor_count(x, c)).collect();
        let cat2 = Arc::clone(&cat);
        Self::from_fn(cat, dims, move |x, y, f| {
            let mut m = RationalMatrix::zeros(cat2.mor_count(x, c), cat2.mor_count(y, c));
            for u in 0..cat2.mor_count(y, c) {
                m.set(cat2.then(x, y, c, f, u), u, Q::one());
            }
            m
        })
    }

    pub fn category(&self) -> &Arc<EICategory> {
        &self.cat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, x: usize, y: usize, f: usize) -> &RationalMatrix {
        &self.maps[x][y][f]
    }

    /// Left action of `aut(c)` on `M(c)`, `w ↦ M(w⁻¹)`.
    pub fn aut_action(&self, c: usize) -> GroupAction {
        let aut = Arc::clone(self.cat.aut(c));
        let matrices = (0..aut.order()).map(|w| self.maps[c][c][aut.inv(w)].clone()).collect();
        GroupAction::new_unchecked(aut, matrices).expect("square matrices of the right size")
    }

    /// Checks shapes, `M(id) = id` and `M(f then g) = M(f) M(g)` for all composable pairs.
    pub fn validate(&self) -> Result<()> {
        let cat = &self.cat;
        let n = cat.num_objects();
        if self.dims.len() != n || self.maps.len() != n {
            return Err(Error::InvalidModule("wrong number of objects".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if self.maps[x][y].len() != cat.mor_count(x, y) {
                    return Err(Error::InvalidModule(format!("wrong number of maps for {x} -> {y}")));
                }
                for (f, m) in self.maps[x][y].iter().enumerate() {
                    if m.rows() != self.dims[x] || m.cols() != self.dims[y] {
                        return Err(Error::InvalidModule(format!(
                            "M(#{f}: {x} -> {y}) is {}x{}, expected {}x{}",
                            m.rows(),
                            m.cols(),
                            self.dims[x],
                            self.dims[y]
                        )));
                    }
                }
            }
            if !self.maps[x][x][0].is_identity() {
                return Err(Error::InvalidModule(format!("M(id) is not the identity at object {x}")));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for f in 0..cat.mor_count(x, y) {
                    for z in 0..n {
                        for g in 0..cat.mor_count(y, z) {
                            let fg = cat.then(x, y, z, f, g);
                            if &self.maps[x][y][f] * &self.maps[y][z][g] != self.maps[x][z][fg] {
                                return Err(Error::InvalidModule(format!(
                                    "functoriality fails for #{f}: {x} -> {y} followed by #{g}: {y} -> {z}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(parts: &[&CatModule]) -> Result<CatModule> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidModule("empty direct sum".into()));
        };
        let cat = Arc::clone(&first.cat);
        if parts.iter().any(|p| !Arc::ptr_eq(&p.cat, &cat)) {
            return Err(Error::InvalidModule("modules over different categories".into()));
        }
        let n = cat.num_objects();
        let dims: Vec<usize> = (0..n).map(|x| parts.iter().map(|p| p.dims[x]).sum()).collect();
        let d2 = dims.clone();
        Ok(Self::from_fn(cat, dims, move |x, y, f| {
            let mut m = RationalMatrix::zeros(d2[x], d2[y]);
            let (mut r, mut c) = (0, 0);
            for p in parts {
                m.set_block(r, c, &p.maps[x][y][f]);
                r += p.dims[x];
                c += p.dims[y];
            }
            m
        }))
    }

    /// The submodule given at each object by a basis of an invariant subspace.
    pub fn submodule(&self, bases: &[RationalMatrix]) -> Result<CatModule> {
        let n = self.cat.num_objects();
        let dims: Vec<usize> = bases.iter().map(RationalMatrix::cols).collect();
        let mut maps = vec![vec![Vec::new(); n]; n];
        for x in 0..n {
            for y in 0..n {
                for f in 0..self.cat.mor_count(x, y) {
                    let img = &self.maps[x][y][f] * &bases[y];
                    let m = if dims[x] == 0 {
                        if !img.is_zero() {
                            return Err(Error::InvalidModule("subspaces are not preserved".into()));
                        }
                        RationalMatrix::zeros(0, dims[y])
                    } else {
                        bases[x]
                            .solve_matrix(&img)
                            .map_err(|_| Error::InvalidModule("subspaces are not preserved".into()))?
                    };
                    maps[x][y].push(m);
                }
            }
        }
        Ok(CatModule::new_unchecked(Arc::clone(&self.cat), dims, maps))
    }

    /// The isomorphic module `P_x⁻¹ M(f) P_y` for invertible `P_x`.
    pub fn change_basis(&self, p: &[RationalMatrix]) -> Result<CatModule> {
        let inv = p
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::Dimension("singular change of basis".into())))
            .collect::<Result<Vec<_>>>()?;
        let n = self.cat.num_objects();
        let maps = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        self.maps[x][y]
                            .iter()
                            .map(|m| &(&inv[x] * m) * &p[y])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(CatModule::new_unchecked(Arc::clone(&self.cat), self.dims.clone(), maps))
    }

    /// Pulls a `Sub(G)`-module back along the projection `Or(G) → Sub(G)`.
    pub fn restrict_along_pr(&self, or: Arc<EICategory>) -> Result<CatModule> {
        if self.cat.kind() != CategoryKind::Sub || or.kind() != CategoryKind::Or {
            return Err(Error::InvalidModule("expected a Sub-module and an orbit category".into()));
        }
        if !or.group().same_table(self.cat.group()) || or.num_objects() != self.cat.num_objects() {
            return Err(Error::GroupMismatch("categories of different groups".into()));
        }
        let sub = Arc::clone(&self.cat);
        let maps = &self.maps;
        let or2 = Arc::clone(&or);
        Ok(Self::from_fn(or, self.dims.clone(), move |x, y, f| {
            maps[x][y][project_or_to_sub(&or2, &sub, x, y, f)].clone()
        }))
    }

    /// Basis of all natural transformations `self → other`.
    pub fn hom_basis(&self, other: &CatModule) -> Result<Vec<CatModuleMap>> {
        if !Arc::ptr_eq(&self.cat, &other.cat) {
            return Err(Error::InvalidModule("modules over different categories".into()));
        }
        let cat = &self.cat;
        let n = cat.num_objects();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for x in 0..n {
            offsets.push(offsets[x] + other.dims[x] * self.dims[x]);
        }
        let unknowns = offsets[n];
        if unknowns == 0 {
            return Ok(Vec::new());
        }
        // φ_x is other.dims[x] × self.dims[x], flattened row-major at offsets[x].
        let mut rows: Vec<Vec<(usize, Q)>> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x == y && cat.mor_count(x, x) == 1 {
                    continue;
                }
                for f in 0..cat.mor_count(x, y) {
                    if x == y && f == 0 {
                        continue;
                    }
                    // φ_x M(f) − N(f) φ_y = 0
                    let (mf, nf) = (&self.maps[x][y][f], &other.maps[x][y][f]);
                    for i in 0..other.dims[x] {
                        for j in 0..self.dims[y] {
                            let mut row = Vec::new();
                            for k in 0..self.dims[x] {
                                let c = mf.get(k, j);
                                if !c.is_zero() {
                                    row.push((offsets[x] + i * self.dims[x] + k, c.clone()));
                                }
                            }
                            for k in 0..other.dims[y] {
                                let c = nf.get(i, k);
                                if !c.is_zero() {
                                    row.push((offsets[y] + k * self.dims[y] + j, -c));
                                }
                            }
                            if !row.is_empty() {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
        }
        let mut sys = RationalMatrix::zeros(rows.len(), unknowns);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in row {
                *sys.entry_mut(r, c) += v;
            }
        }
        let kernel = sys.kernel_basis();
        Ok((0..kernel.cols())
            .map(|k| {
                let v = kernel.column(k);
                CatModuleMap {
                    components: (0..n)
                        .map(|x| {
                            RationalMatrix::new(
                                other.dims[x],
                                self.dims[x],
                                v[offsets[x]..offsets[x + 1]].to_vec(),
                            )
                        })
                        .collect(),
                }
            })
            .collect())
    }

    pub fn hom_dim(&self, other: &CatModule) -> Result<usize> {
        Ok(self.hom_basis(other)?.len())
    }

    /// True when `phi: self → other` commutes with every structure map.
    pub fn is_natural(&self, other: &CatModule, phi: &CatModuleMap) -> bool {
        let cat = &self.cat;
        let n = cat.num_objects();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..cat.mor_count(x, y)).all(|f| {
                    &phi.components[x] * &self.maps[x][y][f] == &other.maps[x][y][f] * &phi.components[y]
                })
            })
        })
    }
}

impl CatModuleMap {
    pub fn zero(source: &CatModule, target: &CatModule) -> Self {
        CatModuleMap {
            components: (0..source.dims.len())
                .map(|x| RationalMatrix::zeros(target.dims[x], source.dims[x]))
                .collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(RationalMatrix::is_injective)
    }

    pub fn is_bijective(&self) -> bool {
        self.components.iter().all(RationalMatrix::is_bijective)
    }

    /// Linear combination `Σ c_i φ_i`.
    pub fn combination(maps: &[CatModuleMap], coeffs: &[Q], source: &CatModule, target: &CatModule) -> Self {
        let mut out = Self::zero(source, target);
        for (m, c) in maps.iter().zip(coeffs) {
            for (o, comp) in out.components.iter_mut().zip(&m.components) {
                *o = &*o + &comp.scale(c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::group::SubgroupClassTable;
    use crate::linalg::q;

    fn sub(name: &str) -> Arc<EICategory> {
        let g = Arc::new(data::group(name).unwrap());
        let t = Arc::new(SubgroupClassTable::new(g, 64).unwrap());
        Arc::new(EICategory::sub(t).unwrap())
    }

    #[test]
    fn free_module_dimensions() {
        let cat = sub("S3");
        let top = CatModule::free(Arc::clone(&cat), 3);
        top.validate().unwrap();
        assert_eq!(top.dims(), &[1, 1, 1, 1]);
        let c3 = CatModule::free(Arc::clone(&cat), 2);
        c3.validate().unwrap();
        assert_eq!(c3.dims(), &[1, 0, 2, 0]);
    }

    #[test]
    fn yoneda_dimension() {
        let cat = sub("S3");
        for c in 0..4 {
            let free = CatModule::free(Arc::clone(&cat), c);
            for d in 0..4 {
                let other = CatModule::free(Arc::clone(&cat), d);
                assert_eq!(free.hom_dim(&other).unwrap(), other.dim(c));
            }
        }
    }

    #[test]
    fn identity_is_natural() {
        let cat = sub("Z2");
        let m = CatModule::free(Arc::clone(&cat), 1);
        let basis = m.hom_basis(&m).unwrap();
        assert!(!basis.is_empty());
        let id = CatModuleMap {
            components: m.dims().iter().map(|&d| RationalMatrix::identity(d)).collect(),
        };
        assert!(m.is_natural(&m, &id));
    }

    #[test]
    fn mismatched_actions_have_no_maps() {
        // Z/2 = W(1) here is trivial, so use Sub(S3) at C3 where aut = Z/2.
        let cat = sub("S3");
        let sign = CatModule::from_fn(Arc::clone(&cat), vec![0, 0, 1, 0], |x, y, f| {
            if x == 2 && y == 2 {
                RationalMatrix::scalar(1, &q(if f == 0 { 1 } else { -1 }))
            } else {
                RationalMatrix::zeros(usize::from(x == 2), usize::from(y == 2))
            }
        });
        sign.validate().unwrap();
        let triv = CatModule::from_fn(Arc::clone(&cat), vec![0, 0, 1, 0], |x, y, _| {
            if x == 2 && y == 2 {
                RationalMatrix::identity(1)
            } else {
                RationalMatrix::zeros(usize::from(x == 2), usize::from(y == 2))
            }
        });
        triv.validate().unwrap();
        assert_eq!(sign.hom_dim(&triv).unwrap(), 0);
        assert_eq!(triv.hom_dim(&triv).unwrap(), 1);
    }
}
