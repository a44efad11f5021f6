//! Seeded random modules for property tests.

use std::sync::Arc;

use rand::Rng;

use super::{coinduction, induction, CatModule, CatModuleMap, EICategory};
use crate::error::Result;
use crate::group::{enumerate_subgroups, FiniteGroup, Subgroup, MAX_ORDER};
use crate::linalg::{q, GroupAction, RationalMatrix, Q};

/// A random invertible integer matrix (unit lower times unit upper triangular, then permuted).
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    let mut lower = RationalMatrix::identity(n);
    let mut upper = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, q(rng.gen_range(-2..=2)));
            upper.set(j, i, q(rng.gen_range(-2..=2)));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let p = RationalMatrix::identity(n).select_columns(&perm);
    &(&lower * &upper) * &p
}

/// Index-two subgroups, giving the sign-type characters.
fn sign_characters(g: &FiniteGroup) -> Vec<Subgroup> {
    enumerate_subgroups(g, MAX_ORDER)
        .expect("automorphism groups are small")
        .into_iter()
        .filter(|h| 2 * h.order() == g.order())
        .collect()
}

/// A random representation of `g` built from trivial, regular, coset-permutation and
/// sign-type summands, in a random basis. Dimension is at most `max_dim` unless a
/// single summand is larger.
pub fn random_action<R: Rng>(rng: &mut R, g: &Arc<FiniteGroup>, max_dim: usize) -> GroupAction {
    let subgroups = enumerate_subgroups(g, MAX_ORDER).expect("automorphism groups are small");
    let signs = sign_characters(g);
    let mut parts: Vec<GroupAction> = Vec::new();
    let mut dim = 0;
    let target = rng.gen_range(1..=max_dim.max(1));
    while dim < target {
        let part = match rng.gen_range(0..4) {
            0 => GroupAction::trivial(Arc::clone(g), 1),
            1 => GroupAction::regular(Arc::clone(g)),
            2 => {
                let h = subgroups[rng.gen_range(0..subgroups.len())];
                coset_action(g, &h)
            }
            _ => match signs.get(rng.gen_range(0..signs.len().max(1))) {
                Some(h) => {
                    let mats = (0..g.order())
                        .map(|x| RationalMatrix::scalar(1, &q(if h.contains(x) { 1 } else { -1 })))
                        .collect();
                    GroupAction::new(Arc::clone(g), mats).expect("sign character")
                }
                None => GroupAction::trivial(Arc::clone(g), 1),
            },
        };
        if dim > 0 && dim + part.dim() > max_dim {
            break;
        }
        dim += part.dim();
        parts.push(part);
    }
    let refs: Vec<&GroupAction> = parts.iter().collect();
    let sum = GroupAction::direct_sum(&refs).expect("same group");
    let p = random_invertible(rng, sum.dim());
    sum.conjugate_by(&p).expect("invertible")
}

/// Permutation action on the left cosets of `h`.
pub fn coset_action(g: &Arc<FiniteGroup>, h: &Subgroup) -> GroupAction {
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; g.order()];
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let c: Vec<usize> = h.iter().map(|y| g.mul(x, y)).collect();
        for &e in &c {
            seen[e] = true;
        }
        cosets.push(c);
    }
    let find = |e: usize| cosets.iter().position(|c| c.contains(&e)).expect("partition");
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let images: Vec<Vec<usize>> = (0..g.order())
        .map(|x| reps.iter().map(|&r| find(g.mul(x, r))).collect())
        .collect();
    GroupAction::permutation(Arc::clone(g), cosets.len(), move |x, i| images[x][i])
}

/// A random module: the image of a random natural map from a sum of free and induced
/// modules into a sum of coinduced modules, in random bases.
pub fn random_module<R: Rng>(rng: &mut R, cat: &Arc<EICategory>, max_parts: usize) -> Result<CatModule> {
    let n = cat.num_objects();
    let mut sources = Vec::new();
    let mut targets = Vec::new();
    for _ in 0..rng.gen_range(1..=max_parts.max(1)) {
        let c = rng.gen_range(0..n);
        if rng.gen_bool(0.5) {
            sources.push(CatModule::free(Arc::clone(cat), c));
        } else {
            let v = random_action(rng, cat.aut(c), 2);
            sources.push(induction(cat, c, &v)?);
        }
    }
    for _ in 0..rng.gen_range(1..=max_parts.max(1)) {
        let c = rng.gen_range(0..n);
        let v = random_action(rng, cat.aut(c), 3);
        targets.push(coinduction(cat, c, &v)?);
    }
    let src = CatModule::direct_sum(&sources.iter().collect::<Vec<_>>())?;
    let tgt = CatModule::direct_sum(&targets.iter().collect::<Vec<_>>())?;
    let basis = src.hom_basis(&tgt)?;
    let coeffs: Vec<Q> = basis.iter().map(|_| q(rng.gen_range(-2..=2))).collect();
    let phi = CatModuleMap::combination(&basis, &coeffs, &src, &tgt);
    let images: Vec<RationalMatrix> = phi.components.iter().map(RationalMatrix::image_basis).collect();
    let image = tgt.submodule(&images)?;
    let change: Vec<RationalMatrix> = image.dims().iter().map(|&d| random_invertible(rng, d)).collect();
    image.change_basis(&change)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use crate::group::SubgroupClassTable;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_modules_are_functorial() {
        let g = Arc::new(data::group("S3").unwrap());
        let t = Arc::new(SubgroupClassTable::new(g, 64).unwrap());
        let cat = Arc::new(EICategory::sub(t).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let m = random_module(&mut rng, &cat, 3).unwrap();
            m.validate().unwrap();
        }
    }

    #[test]
    fn random_actions_are_valid() {
        let g = Arc::new(data::group("D4").unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            random_action(&mut rng, &g, 4).validate().unwrap();
        }
        assert!((random_invertible(&mut rng, 4)).inverse().is_some());
    }
}
