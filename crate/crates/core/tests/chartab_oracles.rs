use std::sync::Arc;

use bredon_core::chartab::{induction_matrix, restriction_matrix, CharacterTable};
use bredon_core::data;
use bredon_core::group::SubgroupClassTable;
use bredon_core::linalg::{q, Cyclotomic, Q};
use num_traits::Zero;

fn library() -> Vec<CharacterTable> {
    data::CHARACTER_TABLES
        .iter()
        .map(|(name, text)| {
            let g = Arc::new(data::group(name).unwrap());
            CharacterTable::parse(text, g).unwrap()
        })
        .collect()
}

/// Inner product summed over elements with `ψ(g⁻¹)`, bypassing class sums and conjugation.
fn elementwise_inner(t: &CharacterTable, i: usize, j: usize) -> Cyclotomic {
    let g = t.group();
    let mut acc = Cyclotomic::zero(t.conductor());
    for x in 0..g.order() {
        acc = &acc + &(t.value(i, x) * t.value(j, g.inv(x)));
    }
    acc.scale(&Q::new(1.into(), (g.order() as i64).into()))
}

#[test]
fn bundled_tables_orthonormal_elementwise() {
    for t in library() {
        let mut deg2 = Q::zero();
        for i in 0..t.len() {
            deg2 += t.degree(i) * t.degree(i);
            for j in 0..t.len() {
                let ip = elementwise_inner(&t, i, j);
                assert_eq!(ip.to_rational(), Some(q((i == j) as i64)), "{} ({i},{j})", t.group().name());
            }
        }
        assert_eq!(deg2, q(t.group().order() as i64));
    }
}

#[test]
fn known_degrees() {
    let degrees = |name: &str| {
        let t = library().into_iter().find(|t| t.group().name() == name).unwrap();
        (0..t.len()).map(|i| t.degree(i)).collect::<Vec<_>>()
    };
    assert_eq!(degrees("S3"), vec![q(1), q(1), q(2)]);
    assert_eq!(degrees("Q8"), vec![q(1), q(1), q(1), q(1), q(2)]);
}

#[test]
fn subgroup_tables_and_multiplicities() {
    let lib = library();
    for (name, _) in data::GROUPS {
        let g = Arc::new(data::group(name).unwrap());
        let big = CharacterTable::for_group(Arc::clone(&g), &lib).unwrap();
        let table = SubgroupClassTable::new(Arc::clone(&g), 64).unwrap();
        for h in table.subgroups() {
            let hg = Arc::new(h.as_group(&g, "H"));
            let small = CharacterTable::for_group(hg, &lib).unwrap();
            assert_eq!(small.len(), small.group().element_conjugacy_classes().len());
            let emb = h.elements();
            let res = restriction_matrix(&big, &small, &emb).unwrap();
            // Restricted degrees add up.
            for i in 0..big.len() {
                let d: Q = (0..small.len()).map(|j| res.get(j, i) * small.degree(j)).sum();
                assert_eq!(d, big.degree(i));
            }
            let ind = induction_matrix(&big, &small, &emb).unwrap();
            assert_eq!(ind, res.transpose());
        }
    }
}

#[test]
fn restriction_to_trivial_subgroup_is_degree() {
    let lib = library();
    let s3 = lib[0].clone();
    let g = Arc::clone(s3.group());
    let one = bredon_core::group::Subgroup::trivial();
    let t1 = CharacterTable::abelian(Arc::new(one.as_group(&g, "1"))).unwrap();
    let r = restriction_matrix(&s3, &t1, &[0]).unwrap();
    assert_eq!(r.row(0), &[q(1), q(1), q(2)]);
    let whole = bredon_core::group::Subgroup::whole(&g);
    let r = restriction_matrix(&s3, &s3, &whole.elements()).unwrap();
    assert!(r.is_identity());
}
