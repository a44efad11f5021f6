//! Exact linear algebra over the rationals.
//!
//! Everything here works over [`Q`] (arbitrary-precision rationals). Subspaces
//! are passed around as matrices whose columns form a basis.

mod action;
mod cyclotomic;
mod matrix;

pub use action::{equivariant_hom_basis, equivariant_hom_dim, GroupAction};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use matrix::{Echelon, RationalMatrix};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rational scalars.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Prints a rational as `a` or `a/b`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Coordinates of `v` in the basis given by the columns of `basis`, if `v` lies in its span.
pub fn coordinates(basis: &RationalMatrix, v: &[Q]) -> Option<Vec<Q>> {
    if basis.cols() == 0 {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    basis.solve(v).ok()
}

/// Matrix `X` with `basis * X = map * basis`, i.e. the restriction of `map` to an invariant subspace.
pub fn restrict_to_subspace(basis: &RationalMatrix, map: &RationalMatrix) -> Option<RationalMatrix> {
    let image = map * basis;
    if basis.cols() == 0 {
        return Some(RationalMatrix::zeros(0, 0));
    }
    basis.solve_matrix(&image).ok()
}

/// Standard unit vectors spanning a complement of the column span of `basis`.
///
/// The complement uses the coordinates that are not pivots of the reduced
/// column echelon form of `basis`.
pub fn complement_basis(basis: &RationalMatrix) -> RationalMatrix {
    let n = basis.rows();
    let pivots = basis.transpose().rref().pivots;
    let free: Vec<usize> = (0..n).filter(|r| !pivots.contains(r)).collect();
    unit_columns(n, &free)
}

/// Matrix whose columns are the unit vectors `e_i`, `i` in `indices`.
pub fn unit_columns(n: usize, indices: &[usize]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, indices.len());
    for (c, &r) in indices.iter().enumerate() {
        m.set(r, c, Q::one());
    }
    m
}

/// True when both bases span the same subspace.
pub fn same_span(a: &RationalMatrix, b: &RationalMatrix) -> bool {
    if a.rows() != b.rows() {
        return false;
    }
    let ra = a.rank();
    ra == b.rank() && RationalMatrix::hstack(&[a, b]).rank() == ra
}

/// Columns of `space` (a basis) completing the columns of `sub` to a basis of the span of `space`.
///
/// `sub` must lie in the span of `space`. Columns are taken greedily in order.
pub fn quotient_representatives(sub: &RationalMatrix, space: &RationalMatrix) -> RationalMatrix {
    let n = space.rows();
    let mut acc = sub.clone();
    let mut rank = acc.rank();
    let mut chosen = Vec::new();
    for c in 0..space.cols() {
        let col = space.column(c);
        let trial = RationalMatrix::hstack(&[&acc, &RationalMatrix::from_columns(n, &[col.clone()])]);
        let r = trial.rank();
        if r > rank {
            rank = r;
            acc = trial;
            chosen.push(col);
        }
    }
    RationalMatrix::from_columns(n, &chosen)
}
