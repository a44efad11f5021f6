//! The finite EI-categories `Sub(G)` and `Or(G)` on subgroup classes, and
//! contravariant modules over them.

mod module;
pub mod random;
mod splitting;

pub use module::{CatModule, CatModuleMap};
pub use splitting::{
    check_splitting_identities, coinduction, induction, nu_map, retraction_rho, splitting_s, splitting_t, NuReport,
    Splitting, SplittingCheck,
};

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupClassTable};

/// Which of the two subgroup categories a [`EICategory`] models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CategoryKind {
    /// Objects `H`, morphisms `c(g): H → K` with `gHg⁻¹ ⊆ K`, modulo `K` on the left and `C_G H` on the right.
    Sub,
    /// Objects `G/H`, morphisms `xH ↦ xaK` with `a⁻¹Ha ⊆ K`, modulo `K` on the right.
    Or,
}

/// A skeletal finite EI-category whose objects are subgroup class representatives.
///
/// Morphisms `x → y` are numbered by their canonical group elements in increasing
/// order; index 0 of `mor(x, x)` is the identity.
#[derive(Clone, Debug)]
pub struct EICategory {
    kind: CategoryKind,
    table: Arc<SubgroupClassTable>,
    mor: Vec<Vec<Vec<usize>>>,
    cell: Vec<Vec<Vec<Option<usize>>>>,
    aut: Vec<Arc<FiniteGroup>>,
}

impl EICategory {
    pub fn sub(table: Arc<SubgroupClassTable>) -> Result<Self> {
        Self::build(CategoryKind::Sub, table)
    }

    pub fn or(table: Arc<SubgroupClassTable>) -> Result<Self> {
        Self::build(CategoryKind::Or, table)
    }

    fn build(kind: CategoryKind, table: Arc<SubgroupClassTable>) -> Result<Self> {
        let g = Arc::clone(table.group());
        let n = table.num_classes();
        let mut mor = vec![vec![Vec::new(); n]; n];
        let mut cell = vec![vec![vec![None; g.order()]; n]; n];
        for x in 0..n {
            let h = table.rep(x);
            for y in 0..n {
                let k = table.rep(y);
                let mut classes: Vec<Vec<usize>> = Vec::new();
                let mut seen = vec![false; g.order()];
                for a in 0..g.order() {
                    if seen[a] || !valid(kind, &g, &h, &k, a) {
                        continue;
                    }
                    let class = equivalence_class(kind, &g, &table, x, &k, a);
                    for &b in &class {
                        seen[b] = true;
                    }
                    classes.push(class);
                }
                classes.sort_by_key(|c| c[0]);
                for (i, c) in classes.iter().enumerate() {
                    for &b in c {
                        cell[x][y][b] = Some(i);
                    }
                }
                mor[x][y] = classes.iter().map(|c| c[0]).collect();
            }
        }
        let mut cat = EICategory {
            kind,
            table,
            mor,
            cell,
            aut: Vec::new(),
        };
        cat.aut = (0..n).map(|x| cat.build_aut(x)).collect::<Result<_>>()?;
        Ok(cat)
    }

    fn build_aut(&self, x: usize) -> Result<Arc<FiniteGroup>> {
        let m = self.mor[x][x].len();
        // product w1 * w2 is the composite w1 ∘ w2, i.e. first w2 then w1
        let rows = (0..m)
            .map(|a| (0..m).map(|b| self.then(x, x, x, b, a)).collect())
            .collect();
        let name = format!("aut{}", self.table.rep(x));
        let group = FiniteGroup::from_table(name, rows)
            .map_err(|e| Error::InvalidModule(format!("automorphisms of object {x} do not form a group: {e}")))?;
        let weyl = &self.table.class(x).weyl;
        if self.kind == CategoryKind::Sub && weyl.group().same_table(&group) {
            return Ok(Arc::clone(weyl.group()));
        }
        Ok(Arc::new(group))
    }

    pub fn kind(&self) -> CategoryKind {
        self.kind
    }

    pub fn subgroups(&self) -> &Arc<SubgroupClassTable> {
        &self.table
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.table.group()
    }

    pub fn num_objects(&self) -> usize {
        self.mor.len()
    }

    /// Canonical elements representing the morphisms `x → y`.
    pub fn mor(&self, x: usize, y: usize) -> &[usize] {
        &self.mor[x][y]
    }

    pub fn mor_count(&self, x: usize, y: usize) -> usize {
        self.mor[x][y].len()
    }

    /// Index of the morphism `x → y` represented by the element `a`, if `a` is valid.
    pub fn index_of(&self, x: usize, y: usize, a: usize) -> Option<usize> {
        self.cell[x][y][a]
    }

    pub fn identity(&self, _x: usize) -> usize {
        0
    }

    pub fn is_iso(&self, x: usize, y: usize) -> bool {
        x == y
    }

    /// The composite "first `f: x → y`, then `g: y → z`".
    pub fn then(&self, x: usize, y: usize, z: usize, f: usize, g: usize) -> usize {
        let (a, b) = (self.mor[x][y][f], self.mor[y][z][g]);
        let group = self.table.group();
        let prod = match self.kind {
            CategoryKind::Sub => group.mul(b, a),
            CategoryKind::Or => group.mul(a, b),
        };
        self.cell[x][z][prod].expect("composite of valid morphisms is valid")
    }

    /// `aut(x)`; its element `w` is the morphism `mor(x, x)[w]`.
    pub fn aut(&self, x: usize) -> &Arc<FiniteGroup> {
        &self.aut[x]
    }

    /// Verifies associativity, units, the EI property and the morphism counts.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_objects();
        for x in 0..n {
            for y in 0..n {
                for f in 0..self.mor_count(x, y) {
                    if self.then(x, x, y, 0, f) != f || self.then(x, y, y, f, 0) != f {
                        return Err(Error::InvalidModule(format!("identity law fails for {x} -> {y} #{f}")));
                    }
                    for z in 0..n {
                        for g in 0..self.mor_count(y, z) {
                            let fg = self.then(x, y, z, f, g);
                            for w in 0..n {
                                for h in 0..self.mor_count(z, w) {
                                    let left = self.then(x, z, w, fg, h);
                                    let right = self.then(x, y, w, f, self.then(y, z, w, g, h));
                                    if left != right {
                                        return Err(Error::InvalidModule(format!(
                                            "composition is not associative at {x}->{y}->{z}->{w}"
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let m = self.mor_count(x, x);
            for f in 0..m {
                if !(0..m).any(|g| self.then(x, x, x, f, g) == 0) {
                    return Err(Error::InvalidModule(format!("endomorphism #{f} of object {x} is not invertible")));
                }
            }
        }
        if self.kind == CategoryKind::Sub {
            for x in 0..n {
                for y in 0..n {
                    let expected = count_sub_morphisms(&self.table, x, y);
                    if expected != self.mor_count(x, y) {
                        return Err(Error::InvalidModule(format!(
                            "|mor({x}, {y})| = {} but the orbit count is {expected}",
                            self.mor_count(x, y)
                        )));
                    }
                }
                if self.aut[x].order() != self.table.class(x).weyl.order() {
                    return Err(Error::InvalidModule(format!("aut of object {x} differs from the Weyl group")));
                }
            }
        }
        Ok(())
    }

    /// Inverse of an automorphism.
    pub fn aut_inverse(&self, x: usize, w: usize) -> usize {
        self.aut[x].inv(w)
    }
}

fn valid(kind: CategoryKind, g: &FiniteGroup, h: &Subgroup, k: &Subgroup, a: usize) -> bool {
    match kind {
        CategoryKind::Sub => h.conjugate(g, a).is_subgroup_of(k),
        CategoryKind::Or => h.conjugate(g, g.inv(a)).is_subgroup_of(k),
    }
}

fn equivalence_class(
    kind: CategoryKind,
    g: &FiniteGroup,
    table: &SubgroupClassTable,
    x: usize,
    k: &Subgroup,
    a: usize,
) -> Vec<usize> {
    let mut out: Vec<usize> = match kind {
        CategoryKind::Sub => {
            let c = table.class(x).centralizer;
            let mut set = HashSet::new();
            for kk in k.iter() {
                let ka = g.mul(kk, a);
                for cc in c.iter() {
                    set.insert(g.mul(ka, cc));
                }
            }
            set.into_iter().collect()
        }
        CategoryKind::Or => k.iter().map(|kk| g.mul(a, kk)).collect(),
    };
    out.sort_unstable();
    out.dedup();
    out
}

/// `|K \ {g : gHg⁻¹ ⊆ K} / C_G H|`, counted by orbit sizes.
fn count_sub_morphisms(table: &SubgroupClassTable, x: usize, y: usize) -> usize {
    let g = table.group();
    let h = table.rep(x);
    let k = table.rep(y);
    let c = table.class(x).centralizer;
    let valid: Vec<usize> = (0..g.order())
        .filter(|&a| h.iter().all(|e| k.contains(g.conj(a, e))))
        .collect();
    let mut remaining: HashSet<usize> = valid.iter().copied().collect();
    let mut orbits = 0;
    while let Some(&a) = remaining.iter().next() {
        orbits += 1;
        let mut stack = vec![a];
        remaining.remove(&a);
        while let Some(b) = stack.pop() {
            for kk in k.iter() {
                for cc in c.iter() {
                    let y = g.mul(g.mul(kk, b), cc);
                    if remaining.remove(&y) {
                        stack.push(y);
                    }
                }
            }
        }
    }
    orbits
}

/// The projection functor `Or(G) → Sub(G)` on morphisms: `a ↦ c(a⁻¹)`.
pub fn project_or_to_sub(or: &EICategory, sub: &EICategory, x: usize, y: usize, f: usize) -> usize {
    let g = or.group();
    let a = or.mor(x, y)[f];
    sub.index_of(x, y, g.inv(a)).expect("projection of a valid G-map")
}
