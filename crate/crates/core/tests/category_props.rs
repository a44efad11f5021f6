use std::collections::BTreeSet;
use std::sync::Arc;

use bredon_core::category::random::{random_action, random_module};
use bredon_core::category::{
    check_splitting_identities, coinduction, induction, nu_map, project_or_to_sub, CatModule, EICategory,
};
use bredon_core::data;
use bredon_core::group::SubgroupClassTable;
use bredon_core::linalg::{equivariant_hom_dim, GroupAction, RationalMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn table(name: &str) -> Arc<SubgroupClassTable> {
    Arc::new(SubgroupClassTable::new(Arc::new(data::group(name).unwrap()), 64).unwrap())
}

fn sub(name: &str) -> Arc<EICategory> {
    Arc::new(EICategory::sub(table(name)).unwrap())
}

/// Orbits of `aut(c)` on `mor(c, x)` under `f ↦ w⁻¹ then f`, with stabilizers.
fn orbits_out(cat: &EICategory, c: usize, x: usize) -> Vec<Vec<usize>> {
    let aut = cat.aut(c);
    let mut seen = BTreeSet::new();
    let mut stabs = Vec::new();
    for f in 0..cat.mor_count(c, x) {
        if seen.contains(&f) {
            continue;
        }
        let mut stab = Vec::new();
        for w in 0..aut.order() {
            let wf = cat.then(c, c, x, aut.inv(w), f);
            seen.insert(wf);
            if wf == f {
                stab.push(w);
            }
        }
        stabs.push(stab);
    }
    stabs
}

fn fixed_dim(v: &GroupAction, stab: &[usize]) -> usize {
    let mut p = RationalMatrix::zeros(v.dim(), v.dim());
    for &w in stab {
        p = &p + v.matrix(w);
    }
    p.rank()
}

#[test]
fn categories_validate_for_bundled_groups() {
    for (name, _) in data::GROUPS {
        let t = table(name);
        EICategory::sub(Arc::clone(&t)).unwrap().validate().unwrap();
        EICategory::or(t).unwrap().validate().unwrap();
    }
}

#[test]
fn projection_fibres_are_centralizer_orbits() {
    for name in ["Z2", "S3", "D4", "Q8"] {
        let t = table(name);
        let g = Arc::clone(t.group());
        let s = EICategory::sub(Arc::clone(&t)).unwrap();
        let o = EICategory::or(Arc::clone(&t)).unwrap();
        for x in 0..s.num_objects() {
            let cent = t.class(x).centralizer;
            for y in 0..s.num_objects() {
                let k = t.rep(y);
                let mut fibres: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); s.mor_count(x, y)];
                for f in 0..o.mor_count(x, y) {
                    fibres[project_or_to_sub(&o, &s, x, y, f)].insert(f);
                }
                for fibre in &fibres {
                    let f = *fibre.iter().next().expect("projection is surjective");
                    let a = o.mor(x, y)[f];
                    let orbit: BTreeSet<usize> = cent
                        .iter()
                        .map(|c| o.index_of(x, y, g.mul(g.inv(c), a)).unwrap())
                        .collect();
                    assert_eq!(&orbit, fibre, "{name} {x}->{y}");
                }
                let _ = k;
            }
        }
    }
}

#[test]
fn pullback_along_projection_is_functorial() {
    let t = table("S3");
    let s = Arc::new(EICategory::sub(Arc::clone(&t)).unwrap());
    let o = Arc::new(EICategory::or(t).unwrap());
    for c in 0..s.num_objects() {
        let m = CatModule::free(Arc::clone(&s), c).restrict_along_pr(Arc::clone(&o)).unwrap();
        m.validate().unwrap();
        for x in 0..s.num_objects() {
            assert_eq!(m.dim(x), s.mor_count(x, c));
        }
    }
}

#[test]
fn coinduction_and_induction_dimension_formula() {
    let cat = sub("D4");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for c in 0..cat.num_objects() {
        for _ in 0..3 {
            let v = random_action(&mut rng, cat.aut(c), 4);
            let co = coinduction(&cat, c, &v).unwrap();
            let ind = induction(&cat, c, &v).unwrap();
            for x in 0..cat.num_objects() {
                let expected: usize = orbits_out(&cat, c, x).iter().map(|s| fixed_dim(&v, s)).sum();
                assert_eq!(co.dim(x), expected);
                // orbits of aut(c) on mor(x, c) by postcomposition
                let aut = cat.aut(c);
                let mut seen = BTreeSet::new();
                let mut total = 0;
                for f in 0..cat.mor_count(x, c) {
                    if seen.contains(&f) {
                        continue;
                    }
                    let mut stab = Vec::new();
                    for w in 0..aut.order() {
                        let fw = cat.then(x, c, c, f, w);
                        seen.insert(fw);
                        if fw == f {
                            stab.push(w);
                        }
                    }
                    total += fixed_dim(&v, &stab);
                }
                assert_eq!(ind.dim(x), total);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn yoneda(seed in any::<u64>()) {
        let cat = sub("S3");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_module(&mut rng, &cat, 2).unwrap();
        for c in 0..cat.num_objects() {
            let free = CatModule::free(Arc::clone(&cat), c);
            let basis = free.hom_basis(&n).unwrap();
            prop_assert_eq!(basis.len(), n.dim(c));
            // evaluation at the identity of c is an isomorphism
            let evals: Vec<Vec<_>> = basis.iter().map(|phi| phi.components[c].column(0)).collect();
            let m = RationalMatrix::from_columns(n.dim(c), &evals);
            prop_assert_eq!(m.rank(), n.dim(c));
        }
    }

    #[test]
    fn adjunction_dimensions(seed in any::<u64>()) {
        let cat = sub("S3");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = random_module(&mut rng, &cat, 2).unwrap();
        let c = (seed % cat.num_objects() as u64) as usize;
        let v = random_action(&mut rng, cat.aut(c), 3);
        let nc = n.aut_action(c);
        let ind = induction(&cat, c, &v).unwrap();
        prop_assert_eq!(ind.hom_dim(&n).unwrap(), equivariant_hom_dim(&v, &nc).unwrap());
        let co = coinduction(&cat, c, &v).unwrap();
        prop_assert_eq!(n.hom_dim(&co).unwrap(), equivariant_hom_dim(&nc, &v).unwrap());
    }

    #[test]
    fn nu_is_injective_and_natural(seed in any::<u64>()) {
        let cat = sub(if seed % 2 == 0 { "S3" } else { "D4" });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&mut rng, &cat, 3).unwrap();
        let nu = nu_map(&m).unwrap();
        prop_assert!(nu.natural);
        prop_assert!(nu.all_injective());
    }

    #[test]
    fn nu_is_bijective_on_coinduced(seed in any::<u64>()) {
        let cat = sub("D4");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = (seed % cat.num_objects() as u64) as usize;
        let v = random_action(&mut rng, cat.aut(c), 3);
        let m = coinduction(&cat, c, &v).unwrap();
        prop_assert!(nu_map(&m).unwrap().all_bijective());
    }

    #[test]
    fn splitting_identities(seed in any::<u64>()) {
        let cat = sub(if seed % 2 == 0 { "S3" } else { "D4" });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = (seed / 2 % cat.num_objects() as u64) as usize;
        let v = random_action(&mut rng, cat.aut(c), 4);
        let r = check_splitting_identities(&cat, c, &v).unwrap();
        prop_assert!(r.passed(), "{:?}", r.violations);
    }
}

#[test]
fn z6_splitting_identities_one_dimensional() {
    let cat = sub("Z6");
    for c in 0..cat.num_objects() {
        let v = GroupAction::trivial(Arc::clone(cat.aut(c)), 1);
        assert!(check_splitting_identities(&cat, c, &v).unwrap().passed());
    }
}
