use std::sync::Arc;

use bredon_core::category::EICategory;
use bredon_core::chartab::CharacterTable;
use bredon_core::data;
use bredon_core::group::{Subgroup, SubgroupClassTable};
use bredon_core::linalg::{q, RationalMatrix};
use bredon_core::mackey::{self, mu_check, nu_of_mackey, primitive_part, Axiom, MackeyFunctor};
use bredon_core::Error;

fn table(name: &str) -> Arc<SubgroupClassTable> {
    Arc::new(SubgroupClassTable::new(Arc::new(data::group(name).unwrap()), 64).unwrap())
}

fn library() -> Vec<CharacterTable> {
    data::character_tables().unwrap()
}

fn builtins(t: &Arc<SubgroupClassTable>) -> Vec<MackeyFunctor> {
    vec![
        mackey::constant(Arc::clone(t)).unwrap(),
        mackey::burnside(Arc::clone(t)).unwrap(),
        mackey::repring(Arc::clone(t), &library()).unwrap(),
    ]
}

fn sub_of(t: &SubgroupClassTable, elems: &[usize]) -> Subgroup {
    Subgroup::from_elements(t.group(), elems).unwrap()
}

#[test]
fn double_coset_counting_identity() {
    // Σ over K\G/H of [K : K ∩ gHg⁻¹] = [G : H], by direct enumeration of cosets
    for (name, _) in data::GROUPS {
        let t = table(name);
        let g = t.group();
        for h in t.subgroups() {
            for k in t.subgroups() {
                let mut seen = vec![false; g.order()];
                let mut total = 0;
                for x in 0..g.order() {
                    if seen[x] {
                        continue;
                    }
                    for a in k.iter() {
                        for b in h.iter() {
                            seen[g.mul(g.mul(a, x), b)] = true;
                        }
                    }
                    let inter = k.iter().filter(|&a| h.contains(g.mul(g.mul(g.inv(x), a), x))).count();
                    total += k.order() / inter;
                }
                assert_eq!(total, g.order() / h.order(), "{name} H = {h} K = {k}");
            }
        }
    }
}

/// `|(H/L)^J| = #{hL ∈ H/L : J ⊆ hLh⁻¹}`.
fn mark(t: &SubgroupClassTable, h: &Subgroup, l: &Subgroup, j: &Subgroup) -> usize {
    let g = t.group();
    let fixed = h.iter().filter(|&x| j.is_subgroup_of(&l.conjugate(g, x))).count();
    fixed / l.order()
}

/// Basis of `A(K)` in transported coordinates: orbits `K / tLt⁻¹` for the canonical
/// orbit types `L` of the representative `R = t⁻¹Kt`.
fn burnside_basis(t: &SubgroupClassTable, k: &Subgroup) -> Vec<Subgroup> {
    let g = t.group();
    let (c, x) = t.locate(k).unwrap();
    let r = t.rep(c);
    let mut types: Vec<Subgroup> = t
        .subgroups()
        .iter()
        .filter(|l| l.is_subgroup_of(&r))
        .map(|l| r.iter().map(|y| l.conjugate(g, y)).min().unwrap())
        .collect();
    types.sort();
    types.dedup();
    types.into_iter().map(|l| l.conjugate(g, x)).collect()
}

#[test]
fn burnside_restriction_preserves_marks() {
    for name in ["Z2", "Z6", "S3", "D4", "Q8", "A4"] {
        let t = table(name);
        let m = mackey::burnside(Arc::clone(&t)).unwrap();
        for h in t.subgroups() {
            let bh = burnside_basis(&t, h);
            assert_eq!(m.dim(h).unwrap(), bh.len());
            for k in t.subgroups().iter().filter(|k| k.is_subgroup_of(h)) {
                let bk = burnside_basis(&t, k);
                let res = m.res(h, k).unwrap();
                for (i, x) in bh.iter().enumerate() {
                    for j in t.subgroups().iter().filter(|j| j.is_subgroup_of(k)) {
                        let lhs: usize = (0..bk.len())
                            .map(|r| {
                                let c = res.get(r, i).to_integer();
                                usize::try_from(c).unwrap() * mark(&t, k, &bk[r], j)
                            })
                            .sum();
                        assert_eq!(lhs, mark(&t, h, x, j), "{name} res {h} {k} at {x}, marks at {j}");
                    }
                }
            }
        }
    }
}

#[test]
fn burnside_of_z2() {
    let t = table("Z2");
    let m = mackey::burnside(Arc::clone(&t)).unwrap();
    let (one, g) = (t.rep(0), t.rep(1));
    // basis of A(Z2): Z2/1, Z2/Z2
    assert_eq!(m.res(&g, &one).unwrap(), RationalMatrix::from_int_rows(&[&[2, 1]], 2));
    assert_eq!(m.ind(&one, &g).unwrap(), RationalMatrix::from_int_rows(&[&[1], &[0]], 1));
}

#[test]
fn builtin_dimensions_on_s3() {
    let t = table("S3");
    let ms = builtins(&t);
    assert_eq!(ms[0].dims(), &[1, 1, 1, 1]);
    assert_eq!(ms[1].dims(), &[1, 2, 2, 4]);
    assert_eq!(ms[2].dims(), &[1, 2, 3, 3]);
}

#[test]
fn repring_restrictions_on_s3() {
    let t = table("S3");
    let m = mackey::repring(Arc::clone(&t), &library()).unwrap();
    let s3 = t.rep(3);
    let c2 = sub_of(&t, &[0, 1]);
    let c3 = sub_of(&t, &[0, 3, 4]);
    // columns triv, sgn, std
    assert_eq!(m.res(&s3, &c2).unwrap(), RationalMatrix::from_int_rows(&[&[1, 0, 1], &[0, 1, 1]], 3));
    assert_eq!(m.res(&s3, &c3).unwrap(), RationalMatrix::from_int_rows(&[&[1, 1, 0], &[0, 0, 1], &[0, 0, 1]], 3));
    assert_eq!(m.res(&s3, &t.rep(0)).unwrap(), RationalMatrix::from_int_rows(&[&[1, 1, 2]], 3));
    // the trivial character of C3 induces to triv + sgn
    assert_eq!(m.ind(&c3, &s3).unwrap().column(0), vec![q(1), q(1), q(0)]);
    // the Weyl group of C3 swaps its two nontrivial characters
    let n = (0..6).find(|&x| !c3.contains(x)).unwrap();
    assert_eq!(
        m.conj(n, &c3).unwrap(),
        RationalMatrix::from_int_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]], 3)
    );
}

#[test]
fn builtins_satisfy_all_axioms() {
    for name in ["Z1", "Z2", "Z3", "Z4", "Z6", "Z8", "S3", "D4", "Q8", "A4"] {
        let t = table(name);
        for m in builtins(&t) {
            let report = m.validate();
            assert!(report.passed(), "{report}");
            assert!(report.check(Axiom::DoubleCoset).cases > 0);
        }
    }
}

#[test]
fn corrupted_transfer_fails_double_coset_formula() {
    let t = table("Z2");
    let m = MackeyFunctor::parse(data::invalid_text("corrupt_ind.mky").unwrap(), t).unwrap();
    let report = m.validate();
    let dc = report.check(Axiom::DoubleCoset);
    let witness = dc.witness.as_deref().expect("axiom (c) must fail");
    assert!(witness.contains("L = {0,1}") && witness.contains("H = {0}") && witness.contains("K = {0}"), "{witness}");
    for c in &report.checks {
        if c.axiom != Axiom::DoubleCoset {
            assert!(c.witness.is_none(), "{report}");
        }
    }
    assert!(matches!(report.into_result(), Err(Error::Mackey(_))));
}

#[test]
fn corrupted_ind_on_s3_is_caught() {
    let t = table("S3");
    let m = mackey::repring(Arc::clone(&t), &library()).unwrap();
    let c3 = sub_of(&t, &[0, 3, 4]);
    let bad = m.ind(&c3, &t.rep(3)).unwrap().scale(&q(2));
    let m = m.with_ind(3, &c3, bad).unwrap();
    assert!(m.validate().check(Axiom::DoubleCoset).witness.is_some());
}

#[test]
fn text_round_trip() {
    for name in ["Z2", "S3", "D4"] {
        let t = table(name);
        for m in builtins(&t) {
            let text = m.to_text();
            let back = MackeyFunctor::parse(&text, Arc::clone(&t)).unwrap();
            assert_eq!(back.to_text(), text);
            assert!(back.validate().passed());
        }
    }
}

#[test]
fn sparse_text_is_completed_by_conjugation() {
    let t = table("S3");
    let full = mackey::constant(Arc::clone(&t)).unwrap();
    let text = "mackey c\ngroup S3\nobject {0} dim 1\nobject {0,1} dim 1\nobject {0,3,4} dim 1\nobject {0,1,2,3,4,5} dim 1\n\
        res {0,1} {0}\n1\nind {0} {0,1}\n2\nres {0,3,4} {0}\n1\nind {0} {0,3,4}\n3\n\
        res {0,1,2,3,4,5} {0}\n1\nind {0} {0,1,2,3,4,5}\n6\nres {0,1,2,3,4,5} {0,1}\n1\nind {0,1} {0,1,2,3,4,5}\n3\n\
        res {0,1,2,3,4,5} {0,3,4}\n1\nind {0,3,4} {0,1,2,3,4,5}\n2\n";
    let m = MackeyFunctor::parse(text, Arc::clone(&t)).unwrap();
    assert_eq!(m.to_text().replace("mackey c\n", ""), full.to_text().replace("mackey constant\n", ""));
}

#[test]
fn parse_errors_carry_positions() {
    let t = table("Z2");
    let err = MackeyFunctor::parse("mackey x\ngroup Z2\nobject {1} dim 1\n", Arc::clone(&t)).unwrap_err();
    assert!(matches!(err, Error::Syntax { line: 3, column: 8, .. }), "{err}");
    let err = MackeyFunctor::parse("mackey x\ngroup Z3\n", Arc::clone(&t)).unwrap_err();
    assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err}");
    let err = MackeyFunctor::parse(
        "mackey x\ngroup Z2\nobject {0} dim 1\nobject {0,1} dim 1\nres {0,1} {0}\n1 2\n",
        t,
    )
    .unwrap_err();
    assert!(matches!(err, Error::Syntax { line: 6, .. }), "{err}");
}

#[test]
fn nontrivial_centralizer_action_breaks_well_definedness() {
    let t = table("Z2");
    let text = "mackey bad\ngroup Z2\nobject {0} dim 1\nobject {0,1} dim 1\nconj 1 {0}\n-1\nres {0,1} {0}\n0\nind {0} {0,1}\n0\n";
    let m = MackeyFunctor::parse(text, Arc::clone(&t)).unwrap();
    assert!(m.validate().check(Axiom::InnerTrivial).witness.is_some());
    let cat = Arc::new(EICategory::sub(t).unwrap());
    assert!(matches!(m.to_sub_module(&cat), Err(Error::Mackey(_))));
}

#[test]
fn constant_module_is_trivial() {
    let t = table("S3");
    let cat = Arc::new(EICategory::sub(Arc::clone(&t)).unwrap());
    let module = mackey::constant(t).unwrap().to_sub_module(&cat).unwrap();
    for x in 0..cat.num_objects() {
        for y in 0..cat.num_objects() {
            for f in 0..cat.mor_count(x, y) {
                assert!(module.map(x, y, f).is_identity());
            }
        }
    }
}

/// Kernel of all restrictions to proper subgroups, and the dimension of the part fixed by
/// the full normalizer.
fn primitive_oracle(m: &MackeyFunctor, h: &Subgroup) -> (usize, usize) {
    let t = m.table();
    let g = t.group();
    let d = m.dim(h).unwrap();
    let mut stack = RationalMatrix::zeros(0, d);
    for k in t.subgroups().iter().filter(|k| k.is_subgroup_of(h) && *k != h) {
        stack = RationalMatrix::vstack(&[&stack, &m.res(h, k).unwrap()], d);
    }
    let kernel = stack.kernel_basis();
    let mut avg = RationalMatrix::zeros(d, d);
    for n in h.normalizer(g).iter() {
        avg = &avg + &m.conj(n, h).unwrap();
    }
    (kernel.cols(), (&avg * &kernel).rank())
}

#[test]
fn primitive_parts_on_s3() {
    let t = table("S3");
    let ms = builtins(&t);
    let expect = [(&ms[2], [(1, 1), (1, 1), (2, 1), (0, 0)]), (&ms[1], [(1, 1), (1, 1), (1, 1), (1, 1)])];
    for (m, dims) in expect {
        for c in 0..4 {
            let p = primitive_part(m, c).unwrap();
            assert_eq!((p.action.dim(), p.action.invariant_dim()), dims[c], "{} class {c}", m.name());
            assert_eq!(primitive_oracle(m, &t.rep(c)), dims[c]);
        }
    }
}

#[test]
fn top_object_dimension_identity() {
    for name in ["Z2", "Z4", "Z6", "S3", "D4", "Q8", "A4"] {
        let t = table(name);
        let top = t.rep(t.num_classes() - 1);
        for m in builtins(&t) {
            let sum: usize = (0..t.num_classes()).map(|c| primitive_oracle(&m, &t.rep(c)).1).sum();
            assert_eq!(m.dim(&top).unwrap(), sum, "{name} {}", m.name());
        }
    }
    let t = table("Z4");
    let r = mackey::repring(Arc::clone(&t), &library()).unwrap();
    let parts: Vec<usize> = (0..3).map(|c| primitive_oracle(&r, &t.rep(c)).1).collect();
    assert_eq!(parts, vec![1, 1, 2]);
}

#[test]
fn nu_is_bijective_for_builtins() {
    for name in ["Z2", "Z4", "Z6", "S3", "D4", "Q8"] {
        let t = table(name);
        let cat = Arc::new(EICategory::sub(Arc::clone(&t)).unwrap());
        for m in builtins(&t) {
            let r = nu_of_mackey(&m, &cat).unwrap();
            assert!(r.passed(), "{name} {}: {:?} {:?}", m.name(), r.nu.bijective, r.primitive_agrees);
        }
    }
}

#[test]
fn mu_diagonal_is_normalizer_index() {
    let t = table("S3");
    let cat = Arc::new(EICategory::sub(Arc::clone(&t)).unwrap());
    let m = mackey::repring(Arc::clone(&t), &library()).unwrap();
    let r = mu_check(&m, &cat, 3).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    let g = t.group();
    for b in &r.blocks {
        let image = t.rep(b.class).conjugate(g, b.element);
        let brute = (0..g.order())
            .filter(|&x| image.conjugate(g, x) == image)
            .count()
            / image.order();
        assert_eq!(b.expected, brute);
        if b.dim > 0 {
            assert_eq!(b.multiple, Some(q(brute as i64)));
        }
    }
    let multiples: Vec<usize> = r.blocks.iter().map(|b| b.expected).collect();
    assert_eq!(multiples, vec![6, 1, 2, 1]);

    let r = mu_check(&m, &cat, 0).unwrap();
    assert_eq!(r.matrix, RationalMatrix::identity(1));
}

#[test]
fn mu_triangular_for_burnside_on_d4() {
    let t = table("D4");
    let cat = Arc::new(EICategory::sub(Arc::clone(&t)).unwrap());
    let m = mackey::burnside(t).unwrap();
    for c in 0..cat.num_objects() {
        let r = mu_check(&m, &cat, c).unwrap();
        assert!(r.passed(), "object {c}: {:?}", r.violations);
    }
}
