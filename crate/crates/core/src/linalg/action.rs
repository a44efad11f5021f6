use std::sync::Arc;

use num_traits::Zero;

use super::{Q, RationalMatrix};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A linear representation of a finite group on `Q^dim`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<RationalMatrix>,
}

impl GroupAction {
    /// Builds and validates an action from one matrix per group element.
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<RationalMatrix>) -> Result<Self> {
        let action = Self::new_unchecked(group, matrices)?;
        action.validate()?;
        Ok(action)
    }

    pub(crate) fn new_unchecked(group: Arc<FiniteGroup>, matrices: Vec<RationalMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::Dimension(format!(
                "action needs {} matrices, got {}",
                group.order(),
                matrices.len()
            )));
        }
        let dim = matrices[0].rows();
        if let Some(bad) = matrices.iter().position(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension(format!(
                "matrix of element {bad} is not {dim}x{dim}"
            )));
        }
        Ok(GroupAction { group, dim, matrices })
    }

    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        let matrices = vec![RationalMatrix::identity(dim); group.order()];
        GroupAction { group, dim, matrices }
    }

    /// Permutation representation: `g` sends basis vector `i` to basis vector `perm(g, i)`.
    pub fn permutation(group: Arc<FiniteGroup>, dim: usize, perm: impl Fn(usize, usize) -> usize) -> Self {
        let matrices = (0..group.order())
            .map(|g| {
                let mut m = RationalMatrix::zeros(dim, dim);
                for i in 0..dim {
                    m.set(perm(g, i), i, Q::from_integer(1.into()));
                }
                m
            })
            .collect();
        GroupAction { group, dim, matrices }
    }

    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let g2 = Arc::clone(&group);
        Self::permutation(group, n, move |g, i| g2.mul(g, i))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &RationalMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[RationalMatrix] {
        &self.matrices
    }

    /// Checks that the identity acts trivially and that `g ↦ matrix(g)` is multiplicative.
    pub fn validate(&self) -> Result<()> {
        if !self.matrices[0].is_identity() {
            return Err(Error::InvalidModule("identity element acts nontrivially".into()));
        }
        let n = self.group.order();
        for g in 0..n {
            for h in 0..n {
                if &self.matrices[g] * &self.matrices[h] != self.matrices[self.group.mul(g, h)] {
                    return Err(Error::InvalidModule(format!(
                        "action is not multiplicative at ({g}, {h})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Trace of every group element.
    pub fn character(&self) -> Vec<Q> {
        self.matrices.iter().map(RationalMatrix::trace).collect()
    }

    /// Averaging projector `(1/|G|) Σ_g matrix(g)` onto the invariants.
    pub fn projector(&self) -> RationalMatrix {
        let mut p = RationalMatrix::zeros(self.dim, self.dim);
        for m in &self.matrices {
            p = &p + m;
        }
        p.scale(&Q::new(1.into(), (self.group.order() as i64).into()))
    }

    /// Basis of the fixed subspace (image of the averaging projector).
    pub fn invariants(&self) -> RationalMatrix {
        self.projector().image_basis()
    }

    pub fn invariant_dim(&self) -> usize {
        self.projector().rank()
    }

    /// Restriction to the invariant subspace spanned by the columns of `basis`.
    pub fn restrict(&self, basis: &RationalMatrix) -> Result<GroupAction> {
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                if basis.cols() == 0 {
                    return Ok(RationalMatrix::zeros(0, 0));
                }
                basis
                    .solve_matrix(&(m * basis))
                    .map_err(|_| Error::InvalidModule("subspace is not invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupAction {
            group: Arc::clone(&self.group),
            dim: basis.cols(),
            matrices,
        })
    }

    /// Action on `span(sub ∪ reps) / span(sub)` in the basis given by the images of `reps`.
    ///
    /// `sub` and `span(sub ∪ reps)` must both be invariant and `sub ∪ reps` independent.
    pub fn on_quotient(&self, sub: &RationalMatrix, reps: &RationalMatrix) -> Result<GroupAction> {
        let k = sub.cols();
        let r = reps.cols();
        let full = RationalMatrix::hstack(&[sub, reps]);
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                if r == 0 {
                    return Ok(RationalMatrix::zeros(0, 0));
                }
                let x = full
                    .solve_matrix(&(m * reps))
                    .map_err(|_| Error::InvalidModule("quotient subspace is not invariant".into()))?;
                Ok(x.block(k, 0, r, r))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupAction {
            group: Arc::clone(&self.group),
            dim: r,
            matrices,
        })
    }

    /// The action `p⁻¹ · matrix(g) · p` for an invertible change of basis `p`.
    pub fn conjugate_by(&self, p: &RationalMatrix) -> Result<GroupAction> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Dimension("change of basis is singular".into()))?;
        let matrices = self.matrices.iter().map(|m| &(&inv * m) * p).collect();
        Ok(GroupAction {
            group: Arc::clone(&self.group),
            dim: self.dim,
            matrices,
        })
    }

    pub fn direct_sum(parts: &[&GroupAction]) -> Result<GroupAction> {
        let Some(first) = parts.first() else {
            return Err(Error::Dimension("empty direct sum".into()));
        };
        for p in parts {
            same_group(first, p)?;
        }
        let dim = parts.iter().map(|p| p.dim).sum();
        let matrices = (0..first.group.order())
            .map(|g| {
                let mut m = RationalMatrix::zeros(dim, dim);
                let mut off = 0;
                for p in parts {
                    m.set_block(off, off, &p.matrices[g]);
                    off += p.dim;
                }
                m
            })
            .collect();
        Ok(GroupAction {
            group: Arc::clone(&first.group),
            dim,
            matrices,
        })
    }

    /// True when `map: self → other` intertwines the two actions.
    pub fn is_equivariant(&self, other: &GroupAction, map: &RationalMatrix) -> bool {
        (0..self.group.order()).all(|g| &other.matrices[g] * map == map * &self.matrices[g])
    }
}

fn same_group(a: &GroupAction, b: &GroupAction) -> Result<()> {
    if Arc::ptr_eq(&a.group, &b.group) || a.group.same_table(&b.group) {
        Ok(())
    } else {
        Err(Error::GroupMismatch(format!(
            "actions of {} and {}",
            a.group.name(),
            b.group.name()
        )))
    }
}

/// Basis of the space of equivariant maps `a → b`, each a `dim b × dim a` matrix.
///
/// Solves `b(g) X = X a(g)` for `g` in a generating set of the group.
pub fn equivariant_hom_basis(a: &GroupAction, b: &GroupAction) -> Result<Vec<RationalMatrix>> {
    same_group(a, b)?;
    let (m, n) = (b.dim, a.dim);
    let unknowns = m * n;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let gens = a.group.generators();
    let mut sys = RationalMatrix::zeros(gens.len() * unknowns, unknowns);
    // X is flattened row-major: x[i*n + j] = X[i][j].
    for (s, &g) in gens.iter().enumerate() {
        let (ag, bg) = (&a.matrices[g], &b.matrices[g]);
        for i in 0..m {
            for j in 0..n {
                let row = s * unknowns + i * n + j;
                for k in 0..m {
                    let c = bg.get(i, k);
                    if !c.is_zero() {
                        *sys.entry_mut(row, k * n + j) += c;
                    }
                }
                for k in 0..n {
                    let c = ag.get(k, j);
                    if !c.is_zero() {
                        *sys.entry_mut(row, i * n + k) -= c;
                    }
                }
            }
        }
    }
    let kernel = sys.kernel_basis();
    Ok((0..kernel.cols())
        .map(|c| RationalMatrix::new(m, n, kernel.column(c)))
        .collect())
}

pub fn equivariant_hom_dim(a: &GroupAction, b: &GroupAction) -> Result<usize> {
    Ok(equivariant_hom_basis(a, b)?.len())
}
