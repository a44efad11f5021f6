use std::sync::Arc;

use bredon_core::group::FiniteGroup;
use bredon_core::linalg::{
    cyclotomic_polynomial, equivariant_hom_dim, q, Cyclotomic, GroupAction, RationalMatrix, Q,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix_strategy() -> impl Strategy<Value = RationalMatrix> {
    (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| RationalMatrix::new(r, c, v.into_iter().map(q).collect()))
    })
}

fn cyc_strategy(n: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((-4i64..=4, 0i64..(n as i64)), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(Cyclotomic::zero(n), |acc, (c, k)| {
            &acc + &Cyclotomic::zeta_pow(n, k).scale(&q(c))
        })
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix_strategy()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!((&m * &k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn image_and_cokernel_complement(m in matrix_strategy()) {
        let im = m.image_basis();
        let ck = m.cokernel_basis();
        prop_assert_eq!(im.cols(), m.rank());
        prop_assert_eq!(im.cols() + ck.cols(), m.rows());
        prop_assert_eq!(RationalMatrix::hstack(&[&im, &ck]).rank(), m.rows());
    }

    #[test]
    fn solve_round_trip(m in matrix_strategy(), seed in prop::collection::vec(-3i64..=3, 5)) {
        let x: Vec<Q> = seed.iter().take(m.cols()).map(|&v| q(v)).collect();
        prop_assume!(x.len() == m.cols());
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn rref_is_idempotent(m in matrix_strategy()) {
        let e = m.rref();
        let again = e.matrix.rref();
        prop_assert_eq!(&again.matrix, &e.matrix);
        prop_assert_eq!(again.pivots, e.pivots);
    }

    #[test]
    fn inverse_when_full_rank(m in matrix_strategy()) {
        if m.is_square() && m.rank() == m.rows() {
            let inv = m.inverse().unwrap();
            prop_assert!((&m * &inv).is_identity());
            prop_assert!((&inv * &m).is_identity());
        } else {
            prop_assert!(m.inverse().is_none());
        }
    }

    #[test]
    fn cyclotomic_ring_axioms(a in cyc_strategy(12), b in cyc_strategy(12), c in cyc_strategy(12)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!(( &a - &a).is_zero());
    }

    #[test]
    fn norm_is_rational(a in cyc_strategy(8)) {
        let norm = (0..8).filter(|k| k % 2 == 1).fold(Cyclotomic::one(8), |acc, k| &acc * &a.galois(k));
        prop_assert!(norm.is_rational());
    }

    #[test]
    fn projector_properties(perm_seed in 0usize..6) {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let g2 = Arc::clone(&g);
        let shift = perm_seed % 3;
        let act = GroupAction::permutation(g, 3, move |x, i| (i + x * (1 + shift % 2)) % 3);
        act.validate().unwrap();
        let p = act.projector();
        prop_assert_eq!(&p * &p, p.clone());
        for x in 0..g2.order() {
            prop_assert_eq!(act.matrix(x) * &p, p.clone());
        }
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn product_of_cyclotomic_polynomials() {
    for n in 1u32..=24 {
        let prod = (1..=n)
            .filter(|d| n % d == 0)
            .fold(vec![BigInt::from(1)], |acc, d| poly_mul(&acc, &cyclotomic_polynomial(d)));
        let mut expected = vec![BigInt::zero(); n as usize + 1];
        expected[0] = BigInt::from(-1);
        expected[n as usize] = BigInt::from(1);
        assert_eq!(prod, expected, "n = {n}");
    }
}

#[test]
fn zeta_is_a_root() {
    for n in 1u32..=24 {
        let phi = cyclotomic_polynomial(n);
        let value = phi.iter().enumerate().fold(Cyclotomic::zero(n), |acc, (k, c)| {
            &acc + &Cyclotomic::zeta_pow(n, k as i64).scale(&Q::from_integer(c.clone()))
        });
        assert!(value.is_zero(), "n = {n}");
    }
}

#[test]
fn hom_dim_matches_character_formula() {
    let g = Arc::new(FiniteGroup::cyclic(4));
    let reg = GroupAction::regular(Arc::clone(&g));
    let triv = GroupAction::trivial(Arc::clone(&g), 2);
    let sum = GroupAction::direct_sum(&[&reg, &triv]).unwrap();
    for (a, b) in [(&reg, &reg), (&reg, &triv), (&sum, &reg), (&sum, &sum)] {
        let ca = a.character();
        let cb = b.character();
        let total: Q = (0..4).map(|x| &ca[g.inv(x)] * &cb[x]).sum();
        let expected = total / q(4);
        assert_eq!(q(equivariant_hom_dim(a, b).unwrap() as i64), expected);
    }
}

#[test]
fn coboundary_example_rank() {
    let m = RationalMatrix::from_int_rows(&[&[1, 1, -1, -1]], 4);
    assert_eq!(m.rank(), 1);
}
